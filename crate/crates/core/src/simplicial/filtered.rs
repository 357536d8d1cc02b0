use alloc::vec;
use alloc::vec::Vec;

use super::complex::SimplicialComplex;
use crate::diagram::{PersistenceDiagram, PersistencePair};
use crate::error::{Error, Result};

/// A simplicial complex with an entry time per simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    complex: SimplicialComplex,
    times: Vec<Vec<f64>>,
}

impl FilteredComplex {
    /// `times[k][j]` is the entry time of the `j`-th `k`-simplex.
    pub fn new(complex: SimplicialComplex, times: Vec<Vec<f64>>) -> Result<Self> {
        let top = complex.dim().map_or(0, |d| d + 1);
        if times.len() < top {
            return Err(Error::SizeMismatch {
                left: times.len(),
                right: top,
            });
        }
        for (k, t) in times.iter().enumerate() {
            if t.len() != complex.count(k) {
                return Err(Error::SizeMismatch {
                    left: t.len(),
                    right: complex.count(k),
                });
            }
            if let Some(j) = t.iter().position(|x| x.is_nan()) {
                return Err(Error::InvalidEntry {
                    row: k,
                    col: j,
                    value: t[j],
                    reason: "filtration time is NaN",
                });
            }
        }
        for k in 1..times.len() {
            for j in 0..complex.count(k) {
                for (f, _) in complex.signed_faces(k, j) {
                    if times[k - 1][f] > times[k][j] {
                        return Err(Error::NonMonotone(complex.simplices(k)[j].clone()));
                    }
                }
            }
        }
        let mut times = times;
        times.truncate(top);
        Ok(FilteredComplex { complex, times })
    }

    /// Builds from `(simplex, time)` pairs in any order; lower dimensions
    /// are inserted first, otherwise the given order is kept.
    pub fn from_simplices<I, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<[usize]>,
    {
        let mut items: Vec<(Vec<usize>, f64)> = simplices
            .into_iter()
            .map(|(s, t)| (s.as_ref().to_vec(), t))
            .collect();
        items.sort_by_key(|(s, _)| s.len());
        let mut complex = SimplicialComplex::new();
        let mut times: Vec<Vec<f64>> = Vec::new();
        for (s, t) in items {
            complex.insert(&s)?;
            let k = s.len() - 1;
            if times.len() <= k {
                times.resize(k + 1, Vec::new());
            }
            times[k].push(t);
        }
        Self::new(complex, times)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn time(&self, k: usize, j: usize) -> f64 {
        self.times[k][j]
    }

    pub fn times(&self, k: usize) -> &[f64] {
        self.times.get(k).map_or(&[], Vec::as_slice)
    }

    /// The subcomplex of simplices with time `<= eps`.
    pub fn sublevel(&self, eps: f64) -> SimplicialComplex {
        let mut out = SimplicialComplex::new();
        for (k, ts) in self.times.iter().enumerate() {
            for (j, &t) in ts.iter().enumerate() {
                if t <= eps {
                    out.insert(&self.complex.simplices(k)[j])
                        .expect("faces enter no later than their cofaces");
                }
            }
        }
        out
    }

    /// `(dim, vertices, time)` for every simplex, lower dimensions first.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &[usize], f64)> + '_ {
        self.times.iter().enumerate().flat_map(move |(k, ts)| {
            ts.iter()
                .enumerate()
                .map(move |(j, &t)| (k, self.complex.simplices(k)[j].as_slice(), t))
        })
    }
}

fn add_columns(target: &mut Vec<usize>, other: &[usize]) {
    let mut out = Vec::with_capacity(target.len() + other.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() && b < other.len() {
        match target[a].cmp(&other[b]) {
            core::cmp::Ordering::Less => {
                out.push(target[a]);
                a += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(other[b]);
                b += 1;
            }
            core::cmp::Ordering::Equal => {
                a += 1;
                b += 1;
            }
        }
    }
    out.extend_from_slice(&target[a..]);
    out.extend_from_slice(&other[b..]);
    *target = out;
}

/// Persistence diagrams of dimensions `0..=max_dim` by column reduction of
/// the boundary matrix over GF(2). Simplices are ordered by time, then
/// dimension, then insertion order. Pairs with zero persistence are kept;
/// classes that never die get an infinite death.
pub fn persistence(fc: &FilteredComplex, max_dim: usize) -> Vec<PersistenceDiagram> {
    let cx = &fc.complex;
    let top = cx.dim().map_or(0, |d| d.min(max_dim + 1));
    let mut order: Vec<(usize, usize)> = Vec::new();
    for k in 0..=top {
        order.extend((0..cx.count(k)).map(|j| (k, j)));
    }
    order.sort_by(|&(ka, ja), &(kb, jb)| {
        fc.times[ka][ja]
            .total_cmp(&fc.times[kb][jb])
            .then(ka.cmp(&kb))
            .then(ja.cmp(&jb))
    });
    let mut position: Vec<Vec<usize>> = (0..=top).map(|k| vec![0; cx.count(k)]).collect();
    for (g, &(k, j)) in order.iter().enumerate() {
        position[k][j] = g;
    }

    let n = order.len();
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pivot_of: Vec<Option<usize>> = vec![None; n];
    let mut killed = vec![false; n];
    // Higher dimensions first so that columns of paired simplices can be
    // cleared without reduction.
    for k in (1..=top).rev() {
        for j in 0..cx.count(k) {
            let g = position[k][j];
            if killed[g] {
                continue;
            }
            let mut col: Vec<usize> = cx
                .signed_faces(k, j)
                .into_iter()
                .map(|(f, _)| position[k - 1][f])
                .collect();
            col.sort_unstable();
            columns[g] = col;
        }
        let mut in_dim: Vec<usize> = (0..cx.count(k)).map(|j| position[k][j]).collect();
        in_dim.sort_unstable();
        for g in in_dim {
            if killed[g] {
                continue;
            }
            let mut col = core::mem::take(&mut columns[g]);
            while let Some(&low) = col.last() {
                match pivot_of[low] {
                    Some(other) => add_columns(&mut col, &columns[other]),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                pivot_of[low] = Some(g);
                killed[low] = true;
            }
            columns[g] = col;
        }
    }

    let mut diagrams: Vec<PersistenceDiagram> =
        (0..=max_dim).map(|d| PersistenceDiagram::new(d, Vec::new())).collect();
    for (g, &(k, j)) in order.iter().enumerate() {
        if k > max_dim {
            continue;
        }
        let birth = fc.times[k][j];
        match pivot_of[g] {
            Some(killer) => {
                let (kk, kj) = order[killer];
                diagrams[k]
                    .points
                    .push(PersistencePair::new(birth, fc.times[kk][kj]));
            }
            None if !killed[g] && columns[g].is_empty() => {
                diagrams[k].points.push(PersistencePair::new(birth, f64::INFINITY));
            }
            None => {}
        }
    }
    diagrams
}
