use alloc::vec;
use alloc::vec::Vec;

use super::complex::SimplicialComplex;
use super::filtered::FilteredComplex;
use crate::error::{Error, Result};
use crate::network::DistanceSpace;

pub const RIPS_MAX_POINTS: usize = 512;
pub const RIPS_MAX_DIM: usize = 3;
/// Upper bound on the number of simplices any enumeration may produce.
pub const MAX_SIMPLICES: usize = 5_000_000;

pub(crate) fn check_rips_args(n: usize, max_dim: usize) -> Result<()> {
    if max_dim < 1 {
        return Err(Error::OutOfRange {
            name: "max_dim",
            value: max_dim as f64,
            expected: "at least 1",
        });
    }
    if max_dim > RIPS_MAX_DIM {
        return Err(Error::TooLarge {
            what: "max_dim",
            value: max_dim,
            limit: RIPS_MAX_DIM,
        });
    }
    if n > RIPS_MAX_POINTS {
        return Err(Error::TooLarge {
            what: "point count",
            value: n,
            limit: RIPS_MAX_POINTS,
        });
    }
    Ok(())
}

/// Cliques of the graph `adj` up to `max_dim + 1` vertices, grouped by
/// dimension, each with ascending vertices and in lexicographic order.
fn cliques(n: usize, adj: &[bool], max_dim: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_dim + 1];
    out[0] = (0..n).map(|v| vec![v]).collect();
    let mut total = n;
    for k in 1..=max_dim {
        let (lower, upper) = out.split_at_mut(k);
        for s in &lower[k - 1] {
            let last = *s.last().unwrap();
            for v in last + 1..n {
                if s.iter().all(|&u| adj[u * n + v]) {
                    let mut t = s.clone();
                    t.push(v);
                    upper[0].push(t);
                    total += 1;
                    if total > MAX_SIMPLICES {
                        return Err(Error::TooLarge {
                            what: "simplex count",
                            value: total,
                            limit: MAX_SIMPLICES,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Vietoris–Rips complex: every set of at most `max_dim + 1` points with
/// pairwise distances `<= eps`.
pub fn rips_complex<S: DistanceSpace + ?Sized>(
    space: &S,
    eps: f64,
    max_dim: usize,
) -> Result<SimplicialComplex> {
    let n = space.len();
    check_rips_args(n, max_dim)?;
    if eps.is_nan() {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            expected: "a number",
        });
    }
    let mut adj = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let keep = space.distance(i, j) <= eps;
            adj[i * n + j] = keep;
            adj[j * n + i] = keep;
        }
    }
    let mut complex = SimplicialComplex::new();
    for s in cliques(n, &adj, max_dim)?.into_iter().flatten() {
        complex.insert(&s)?;
    }
    Ok(complex)
}

/// Rips filtration up to scale `max_eps` (use `f64::INFINITY` for the full
/// complex). A simplex enters at its diameter; vertices at 0.
pub fn rips_filtration<S: DistanceSpace + ?Sized>(
    space: &S,
    max_dim: usize,
    max_eps: f64,
) -> Result<FilteredComplex> {
    let n = space.len();
    let complex = rips_complex(space, max_eps, max_dim)?;
    let mut times: Vec<Vec<f64>> = Vec::new();
    for k in 0..=complex.dim().unwrap_or(0) {
        let ts = complex
            .simplices(k)
            .iter()
            .map(|s| {
                let mut d: f64 = 0.0;
                for (a, &u) in s.iter().enumerate() {
                    for &v in &s[a + 1..] {
                        d = d.max(space.distance(u, v));
                    }
                }
                d
            })
            .collect();
        times.push(ts);
    }
    if n == 0 {
        times.clear();
    }
    FilteredComplex::new(complex, times)
}
