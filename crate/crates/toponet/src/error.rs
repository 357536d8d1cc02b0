use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{file}:{line}:{column}: {msg}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Core(#[from] toponet_core::Error),
    #[error("{0}")]
    Data(String),
}

pub type Result<T> = core::result::Result<T, Error>;
