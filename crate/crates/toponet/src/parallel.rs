//! Worker pool sized by `TOPONET_THREADS`.

use rayon::prelude::*;
use rayon::ThreadPool;

pub const THREADS_ENV: &str = "TOPONET_THREADS";

/// Pool capped at `TOPONET_THREADS` workers when that is a positive
/// integer; rayon's default otherwise.
pub fn pool() -> ThreadPool {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cap {
        builder = builder.num_threads(n);
    }
    builder.build().expect("thread pool")
}

/// Symmetric `n × n` matrix of `f(i, j)` over `i < j`, zero diagonal.
/// The result does not depend on the number of workers.
pub fn pairwise<F, E>(n: usize, f: F) -> Result<Vec<f64>, E>
where
    F: Fn(usize, usize) -> Result<f64, E> + Sync,
    E: Send,
{
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values: Vec<f64> = pool().install(|| {
        pairs
            .par_iter()
            .map(|&(i, j)| f(i, j))
            .collect::<Result<Vec<f64>, E>>()
    })?;
    let mut out = vec![0.0; n * n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        out[i * n + j] = v;
        out[j * n + i] = v;
    }
    Ok(out)
}
