use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Finite abstract simplicial complex. Each simplex is stored as the vertex
/// tuple it was inserted with; the tuple order fixes its orientation.
/// Simplices of one dimension keep insertion order, which is also the
/// row/column order of the boundary matrices.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Vec<usize>>>,
    // Sorted vertex set -> index within its dimension.
    index: BTreeMap<Vec<usize>, usize>,
}

fn sorted(s: &[usize]) -> Vec<usize> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

impl SimplicialComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a complex from simplices listed faces-first.
    pub fn from_simplices<I, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut k = Self::new();
        for s in simplices {
            k.insert(s.as_ref())?;
        }
        Ok(k)
    }

    /// Downward closure of the given simplices. Faces that were not listed
    /// are added with ascending vertex order.
    pub fn closure<I, S>(maximal: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut k = Self::new();
        for s in maximal {
            k.insert_with_faces(s.as_ref())?;
        }
        Ok(k)
    }

    /// Adds one simplex; all of its faces must already be present.
    pub fn insert(&mut self, simplex: &[usize]) -> Result<usize> {
        if simplex.is_empty() {
            return Err(Error::Empty("simplex"));
        }
        let key = sorted(simplex);
        if key.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("simplex has a repeated vertex".into()));
        }
        if self.index.contains_key(&key) {
            return Err(Error::DuplicateSimplex(simplex.to_vec()));
        }
        if key.len() > 1 {
            for skip in 0..key.len() {
                let face: Vec<usize> = facet(&key, skip);
                if !self.index.contains_key(&face) {
                    return Err(Error::MissingFace(simplex.to_vec(), face));
                }
            }
        }
        let d = simplex.len() - 1;
        if self.by_dim.len() <= d {
            self.by_dim.resize(d + 1, Vec::new());
        }
        let idx = self.by_dim[d].len();
        self.by_dim[d].push(simplex.to_vec());
        self.index.insert(key, idx);
        Ok(idx)
    }

    fn insert_with_faces(&mut self, simplex: &[usize]) -> Result<()> {
        let key = sorted(simplex);
        if self.index.contains_key(&key) {
            return Ok(());
        }
        if key.len() > 1 {
            for skip in (0..key.len()).rev() {
                self.insert_with_faces(&facet(&key, skip))?;
            }
        }
        self.insert(simplex).map(|_| ())
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|s| !s.is_empty())
    }

    pub fn count(&self, k: usize) -> usize {
        self.by_dim.get(k).map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(&sorted(simplex)).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// `true` when every simplex of `self` is also in `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.index.keys().all(|k| other.index.contains_key(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Signed face indices of simplex `j` in dimension `k >= 1`.
    pub(crate) fn signed_faces(&self, k: usize, j: usize) -> Vec<(usize, i64)> {
        let s = &self.by_dim[k][j];
        (0..s.len())
            .map(|skip| {
                let face = facet(s, skip);
                let idx = self.index[&sorted(&face)];
                let stored = &self.by_dim[k - 1][idx];
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                (idx, sign * permutation_sign(&face, stored))
            })
            .collect()
    }
}

fn facet(s: &[usize], skip: usize) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &v)| v)
        .collect()
}

/// Sign of the permutation taking tuple `a` to tuple `b` (same vertex set).
fn permutation_sign(a: &[usize], b: &[usize]) -> i64 {
    let pos: Vec<usize> = a
        .iter()
        .map(|v| b.iter().position(|w| w == v).expect("same vertex set"))
        .collect();
    let mut inversions = 0;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Signed incidence matrix `∂_k` of size `n_{k−1} × n_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryOperator {
    pub k: usize,
    pub matrix: IntMatrix,
}

pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> Result<BoundaryOperator> {
    let top = complex.dim().unwrap_or(0);
    if k > top {
        return Err(Error::TooLarge {
            what: "boundary dimension",
            value: k,
            limit: top,
        });
    }
    Ok(BoundaryOperator {
        k,
        matrix: boundary_unchecked(complex, k),
    })
}

// Also valid above the top dimension, where the matrix has no columns.
fn boundary_unchecked(complex: &SimplicialComplex, k: usize) -> IntMatrix {
    if k == 0 {
        return IntMatrix::zeros(1, complex.count(0));
    }
    let mut m = IntMatrix::zeros(complex.count(k - 1), complex.count(k));
    for j in 0..complex.count(k) {
        for (i, s) in complex.signed_faces(k, j) {
            m.set(i, j, s);
        }
    }
    m
}

/// `β_k = (n_k − rank ∂_k) − rank ∂_{k+1}` with ranks over GF(2).
pub fn betti_via_rank(complex: &SimplicialComplex, k: usize) -> usize {
    betti_with(complex, k, IntMatrix::rank_gf2)
}

/// The same count with ranks taken modulo a large prime, which matches the
/// rational rank for boundary matrices of small complexes.
pub fn betti_via_integer_rank(complex: &SimplicialComplex, k: usize) -> usize {
    betti_with(complex, k, IntMatrix::rank_mod_prime)
}

fn betti_with(complex: &SimplicialComplex, k: usize, rank: fn(&IntMatrix) -> usize) -> usize {
    let n = complex.count(k);
    if n == 0 {
        return 0;
    }
    let rk = if k == 0 {
        0
    } else {
        rank(&boundary_unchecked(complex, k))
    };
    let rk1 = if complex.count(k + 1) == 0 {
        0
    } else {
        rank(&boundary_unchecked(complex, k + 1))
    };
    n - rk - rk1
}

/// Betti numbers of every dimension up to the top one.
pub fn betti_numbers(complex: &SimplicialComplex) -> Vec<usize> {
    match complex.dim() {
        None => Vec::new(),
        Some(d) => (0..=d).map(|k| betti_via_rank(complex, k)).collect(),
    }
}

/// `Δ_k = ∂_{k+1} ∂_{k+1}ᵀ + ∂_kᵀ ∂_k`, an `n_k × n_k` integer matrix.
/// `Δ_0` is the graph Laplacian of the 1-skeleton.
pub fn hodge_laplacian(complex: &SimplicialComplex, k: usize) -> IntMatrix {
    let n = complex.count(k);
    let mut lap = IntMatrix::zeros(n, n);
    if k > 0 {
        let d = boundary_unchecked(complex, k);
        lap = lap.add(&d.transpose().mul(&d));
    }
    let up = boundary_unchecked(complex, k + 1);
    lap.add(&up.mul(&up.transpose()))
}

/// Relative eigenvalue threshold for the Hodge kernel.
pub const HODGE_TOLERANCE: f64 = 1e-9;

/// `β_k` as the kernel dimension of `Δ_k`.
pub fn betti_via_hodge(complex: &SimplicialComplex, k: usize) -> usize {
    let lap = hodge_laplacian(complex, k);
    let n = lap.rows();
    if n == 0 {
        return 0;
    }
    let m = DMatrix::from_fn(n, n, |r, c| lap.get(r, c) as f64);
    let eig = SymmetricEigen::new(m).eigenvalues;
    let top = eig.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    if top == 0.0 {
        return n;
    }
    eig.iter().filter(|&&x| x <= HODGE_TOLERANCE * top).count()
}
