//! File formats and batch helpers around `toponet-core`.

pub mod error;
pub mod fmt;
pub mod io;
pub mod parallel;

pub use error::{Error, Result};
