//! Baseline network distances: elementwise norms, the log-Euclidean metric
//! on SPD matrices, the spectral graph-matching bound and canonical
//! correlation.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::network::WeightedNetwork;

/// `(Σ_{i<j} |w1_ij − w2_ij|^l)^{1/l}`, or the largest difference when `l`
/// is infinite.
pub fn matrix_norm_distance(n1: &WeightedNetwork, n2: &WeightedNetwork, l: f64) -> Result<f64> {
    if n1.p() != n2.p() {
        return Err(Error::SizeMismatch {
            left: n1.p(),
            right: n2.p(),
        });
    }
    if l.is_nan() || l <= 0.0 {
        return Err(Error::OutOfRange {
            name: "l",
            value: l,
            expected: "positive",
        });
    }
    let p = n1.p();
    let diffs = (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j)))
        .map(|(i, j)| (n1.weight(i, j) - n2.weight(i, j)).abs());
    if l.is_infinite() {
        return Ok(diffs.fold(0.0, f64::max));
    }
    let s: f64 = diffs.map(|d| libm::pow(d, l)).sum();
    Ok(libm::pow(s, 1.0 / l))
}

/// Symmetric matrix meant to be positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    p: usize,
    data: Vec<f64>,
}

impl SpdMatrix {
    /// Row-major `p × p`; symmetric up to `1e-12` relative to the largest
    /// entry.
    pub fn new(p: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != p * p {
            return Err(Error::SizeMismatch {
                left: data.len(),
                right: p * p,
            });
        }
        if p == 0 {
            return Err(Error::Empty("matrix"));
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidEntry {
                row: k / p,
                col: k % p,
                value: data[k],
                reason: "non-finite entry",
            });
        }
        let scale = data.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let mut data = data;
        for i in 0..p {
            for j in i + 1..p {
                let (a, b) = (data[i * p + j], data[j * p + i]);
                if (a - b).abs() > 1e-12 * scale {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
                let m = (a + b) / 2.0;
                data[i * p + j] = m;
                data[j * p + i] = m;
            }
        }
        Ok(SpdMatrix { p, data })
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let p = values.len();
        let mut data = alloc::vec![0.0; p * p];
        for (i, &v) in values.iter().enumerate() {
            data[i * p + i] = v;
        }
        Self::new(p, data)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.p + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.p, self.p, &self.data)
    }

    fn eigen(&self) -> SymmetricEigen<f64, nalgebra::Dyn> {
        SymmetricEigen::new(self.to_dmatrix())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Matrix logarithm through the eigendecomposition. A matrix that is
    /// not positive definite gets `αI` added first; `alpha = None` uses
    /// `1e-6` times the largest eigenvalue.
    pub fn log(&self, alpha: Option<f64>) -> Result<DMatrix<f64>> {
        let eig = self.eigen();
        let lo = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let shift = if lo > 0.0 {
            0.0
        } else {
            let a = alpha.unwrap_or(1e-6 * hi);
            if a.is_nan() || a <= 0.0 || lo + a <= 0.0 {
                return Err(Error::NotPositiveDefinite(lo));
            }
            a
        };
        let logs = eig.eigenvalues.map(|x| libm::log(x + shift));
        Ok(&eig.eigenvectors * DMatrix::from_diagonal(&logs) * eig.eigenvectors.transpose())
    }
}

/// `‖log X − log Y‖_F`.
pub fn log_euclidean_distance(x: &SpdMatrix, y: &SpdMatrix, alpha: Option<f64>) -> Result<f64> {
    if x.p != y.p {
        return Err(Error::SizeMismatch {
            left: x.p,
            right: y.p,
        });
    }
    Ok((x.log(alpha)? - y.log(alpha)?).norm())
}

/// `exp((1/n) Σ log C_i)`.
pub fn log_euclidean_mean(cs: &[SpdMatrix], alpha: Option<f64>) -> Result<SpdMatrix> {
    let first = cs.first().ok_or(Error::Empty("matrix list"))?;
    let p = first.p;
    let mut acc = DMatrix::<f64>::zeros(p, p);
    for c in cs {
        if c.p != p {
            return Err(Error::SizeMismatch { left: c.p, right: p });
        }
        acc += c.log(alpha)?;
    }
    acc /= cs.len() as f64;
    let acc = (&acc + acc.transpose()) * 0.5;
    let eig = SymmetricEigen::new(acc);
    let exps = eig.eigenvalues.map(libm::exp);
    let m = &eig.eigenvectors * DMatrix::from_diagonal(&exps) * eig.eigenvectors.transpose();
    let mut data = Vec::with_capacity(p * p);
    for i in 0..p {
        for j in 0..p {
            data.push((m[(i, j)] + m[(j, i)]) / 2.0);
        }
    }
    SpdMatrix::new(p, data)
}

fn symmetric_square(p: usize, a: &[f64], name: &'static str) -> Result<DMatrix<f64>> {
    if a.len() != p * p {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: p * p,
        });
    }
    for i in 0..p {
        for j in i + 1..p {
            if a[i * p + j] != a[j * p + i] {
                return Err(Error::Invalid(alloc::format!(
                    "{name} is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    Ok(DMatrix::from_row_slice(p, p, a))
}

/// `Σ (λ_i¹ − λ_i²)²` over eigenvalues sorted ascending; a lower bound on
/// the graph-matching cost.
pub fn graph_match_bound(p: usize, a1: &[f64], a2: &[f64]) -> Result<f64> {
    let m1 = symmetric_square(p, a1, "first adjacency")?;
    let m2 = symmetric_square(p, a2, "second adjacency")?;
    let sorted = |m: DMatrix<f64>| {
        let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let (l1, l2) = (sorted(m1), sorted(m2));
    Ok(l1.iter().zip(&l2).map(|(a, b)| (a - b) * (a - b)).sum())
}

pub const GRAPH_MATCH_EXACT_LIMIT: usize = 8;

/// `min_Q ‖Q A1 Qᵀ − A2‖_F²` over all permutation matrices, by enumeration.
pub fn graph_match_exact(p: usize, a1: &[f64], a2: &[f64]) -> Result<f64> {
    if p > GRAPH_MATCH_EXACT_LIMIT {
        return Err(Error::TooLarge {
            what: "node count for exact matching",
            value: p,
            limit: GRAPH_MATCH_EXACT_LIMIT,
        });
    }
    symmetric_square(p, a1, "first adjacency")?;
    symmetric_square(p, a2, "second adjacency")?;
    let cost = |perm: &[usize]| -> f64 {
        let mut s = 0.0;
        for i in 0..p {
            for j in 0..p {
                let d = a1[perm[i] * p + perm[j]] - a2[i * p + j];
                s += d * d;
            }
        }
        s
    };
    // Heap's algorithm.
    let mut perm: Vec<usize> = (0..p).collect();
    let mut c = alloc::vec![0usize; p];
    let mut best = cost(&perm);
    let mut i = 0;
    while i < p {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(cost(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

fn covariance(n: usize, a: usize, x: &[f64]) -> DMatrix<f64> {
    let m = DMatrix::from_row_slice(n, a, x);
    let means = m.row_mean();
    let mut centred = m;
    for mut row in centred.row_iter_mut() {
        row -= &means;
    }
    centred
}

fn inverse_sqrt(s: DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = SymmetricEigen::new(s);
    let hi = eig.eigenvalues.iter().copied().fold(0.0f64, f64::max);
    if eig.eigenvalues.iter().any(|&l| l <= 1e-12 * hi) || hi <= 0.0 {
        return Err(Error::RankDeficient);
    }
    let d = eig.eigenvalues.map(|l| 1.0 / libm::sqrt(l));
    Ok(&eig.eigenvectors * DMatrix::from_diagonal(&d) * eig.eigenvectors.transpose())
}

/// First canonical correlation between the columns of `x` (`n × a`) and
/// `y` (`n × b`), both row-major: the largest singular value of
/// `Sxx^{-1/2} Sxy Syy^{-1/2}`.
pub fn canonical_correlation(n: usize, a: usize, x: &[f64], b: usize, y: &[f64]) -> Result<f64> {
    if x.len() != n * a {
        return Err(Error::SizeMismatch {
            left: x.len(),
            right: n * a,
        });
    }
    if y.len() != n * b {
        return Err(Error::SizeMismatch {
            left: y.len(),
            right: n * b,
        });
    }
    if a == 0 || b == 0 || n <= a.max(b) {
        return Err(Error::OutOfRange {
            name: "sample count",
            value: n as f64,
            expected: "greater than the number of variables",
        });
    }
    let cx = covariance(n, a, x);
    let cy = covariance(n, b, y);
    let sxx = cx.transpose() * &cx;
    let syy = cy.transpose() * &cy;
    let sxy = cx.transpose() * &cy;
    let k = inverse_sqrt(sxx)? * sxy * inverse_sqrt(syy)?;
    let sv = k.singular_values();
    Ok(sv.iter().copied().fold(0.0f64, f64::max).min(1.0))
}
