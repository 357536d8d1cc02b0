//! Inference on topological distances: the exact Kolmogorov–Smirnov
//! p-value and permutation tests on the average between-group distance.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// How the KS statistic is scaled before entering the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KsMode {
    /// `d = D_q / √(2q)`.
    #[default]
    Continuous,
    /// `d = ⌈D_q / √(2q)⌉`.
    Ceiling,
}

/// Scaled statistic `d` used by [`ks_pvalue`].
pub fn ks_scaled(dq: f64, q: u64, mode: KsMode) -> Result<f64> {
    if dq.is_nan() || dq < 0.0 {
        return Err(Error::OutOfRange {
            name: "Dq",
            value: dq,
            expected: "nonnegative",
        });
    }
    if q == 0 {
        return Err(Error::OutOfRange {
            name: "q",
            value: 0.0,
            expected: "at least 1",
        });
    }
    let d = dq / libm::sqrt(2.0 * q as f64);
    Ok(match mode {
        KsMode::Continuous => d,
        KsMode::Ceiling => libm::ceil(d),
    })
}

/// The `i`-th term (`i >= 1`) of `2 Σ (−1)^{i−1} e^{−2 i² d²}`.
pub fn ks_series_term(d: f64, i: u32) -> f64 {
    let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
    let i = i as f64;
    sign * 2.0 * libm::exp(-2.0 * i * i * d * d)
}

/// Tail probability `P(K > d) = 2 Σ_{i≥1} (−1)^{i−1} e^{−2 i² d²}`,
/// clamped to `[0, 1]`. For `d < 1` the equivalent theta-function form
/// `1 − (√(2π)/d) Σ_{k≥1} e^{−(2k−1)² π² / (8 d²)}` is summed instead since
/// the alternating series converges slowly there.
pub fn ks_tail(d: f64) -> f64 {
    if d <= 0.0 {
        return 1.0;
    }
    let p = if d < 1.0 {
        let pi2 = core::f64::consts::PI * core::f64::consts::PI;
        let mut s = 0.0;
        for k in 1..200u32 {
            let t = (2 * k - 1) as f64;
            let term = libm::exp(-t * t * pi2 / (8.0 * d * d));
            s += term;
            if term < 1e-17 * s {
                break;
            }
        }
        1.0 - libm::sqrt(2.0 * core::f64::consts::PI) / d * s
    } else {
        let mut s = 0.0;
        for i in 1..200u32 {
            let term = ks_series_term(d, i);
            s += term;
            if term.abs() < 1e-16 {
                break;
            }
        }
        s
    };
    p.clamp(0.0, 1.0)
}

/// p-value of the KS statistic `D_q` computed from `q` filtration values.
pub fn ks_pvalue(dq: f64, q: u64, mode: KsMode) -> Result<f64> {
    Ok(ks_tail(ks_scaled(dq, q, mode)?))
}

/// Symmetric matrix of distances between `m + n` pooled samples.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseDistances {
    n: usize,
    data: Vec<f64>,
}

impl PairwiseDistances {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        PairwiseDistances { n, data }
    }

    /// Row-major `n × n` matrix; must be symmetric with finite entries.
    pub fn from_matrix(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::SizeMismatch {
                left: data.len(),
                right: n * n,
            });
        }
        for i in 0..n {
            for j in 0..n {
                let x = data[i * n + j];
                if !x.is_finite() {
                    return Err(Error::InvalidEntry {
                        row: i,
                        col: j,
                        value: x,
                        reason: "distance is not finite",
                    });
                }
                if x != data[j * n + i] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        Ok(PairwiseDistances { n, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// `(1/mn) Σ_{i∈g1} Σ_{j∈g2} D(i, j)`.
    pub fn between_group(&self, g1: &[usize], g2: &[usize]) -> f64 {
        let s: f64 = g1
            .iter()
            .map(|&i| g2.iter().map(|&j| self.get(i, j)).sum::<f64>())
            .sum();
        s / (g1.len() * g2.len()) as f64
    }
}

fn check_nonempty(total: usize, m: usize) -> Result<()> {
    if m == 0 || m >= total {
        return Err(Error::OutOfRange {
            name: "group size",
            value: m as f64,
            expected: "both groups nonempty",
        });
    }
    Ok(())
}

fn check_groups(total: usize, m: usize) -> Result<()> {
    check_nonempty(total, m)?;
    if total < 3 {
        return Err(Error::OutOfRange {
            name: "pooled sample size",
            value: total as f64,
            expected: "at least 3",
        });
    }
    Ok(())
}

/// Observed statistic with the first `m` samples as group one.
pub fn observed_statistic(dist: &PairwiseDistances, m: usize) -> Result<f64> {
    check_groups(dist.len(), m)?;
    let all: Vec<usize> = (0..dist.len()).collect();
    Ok(dist.between_group(&all[..m], &all[m..]))
}

/// Statistic under the `index`-th random relabelling. Each relabelling
/// draws from its own ChaCha stream, so the null sample does not depend on
/// evaluation order.
pub fn permuted_statistic(dist: &PairwiseDistances, m: usize, seed: u64, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut labels: Vec<usize> = (0..dist.len()).collect();
    labels.shuffle(&mut rng);
    dist.between_group(&labels[..m], &labels[m..])
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermutationResult {
    pub observed: f64,
    pub p_value: f64,
    pub null: Vec<f64>,
    pub seed: u64,
}

impl PermutationResult {
    /// `p = (1 + #{null >= observed}) / (1 + n_perm)`.
    pub fn from_null(observed: f64, null: Vec<f64>, seed: u64) -> Self {
        let exceed = null.iter().filter(|&&x| x >= observed).count();
        let p_value = (1 + exceed) as f64 / (1 + null.len()) as f64;
        PermutationResult {
            observed,
            p_value,
            null,
            seed,
        }
    }

    pub fn n_perm(&self) -> usize {
        self.null.len()
    }

    /// Empirical quantile of the null sample (nearest rank).
    pub fn null_quantile(&self, prob: f64) -> Option<f64> {
        if self.null.is_empty() {
            return None;
        }
        let mut s = self.null.clone();
        s.sort_by(f64::total_cmp);
        let rank = libm::ceil(prob.clamp(0.0, 1.0) * s.len() as f64) as usize;
        Some(s[rank.saturating_sub(1).min(s.len() - 1)])
    }
}

/// Permutation test of the average between-group distance. The first `m`
/// pooled samples form group one.
pub fn permutation_test(
    dist: &PairwiseDistances,
    m: usize,
    n_perm: usize,
    seed: u64,
) -> Result<PermutationResult> {
    if n_perm == 0 {
        return Err(Error::OutOfRange {
            name: "n_perm",
            value: 0.0,
            expected: "at least 1",
        });
    }
    let observed = observed_statistic(dist, m)?;
    let null = (0..n_perm as u64)
        .map(|k| permuted_statistic(dist, m, seed, k))
        .collect();
    Ok(PermutationResult::from_null(observed, null, seed))
}

/// Group labelling whose between-group statistic is updated in `O(m + n)`
/// per transposition.
#[derive(Debug, Clone)]
pub struct TranspositionState<'a> {
    dist: &'a PairwiseDistances,
    group1: Vec<usize>,
    group2: Vec<usize>,
    sum: f64,
}

impl<'a> TranspositionState<'a> {
    pub fn new(dist: &'a PairwiseDistances, m: usize) -> Result<Self> {
        check_nonempty(dist.len(), m)?;
        let group1: Vec<usize> = (0..m).collect();
        let group2: Vec<usize> = (m..dist.len()).collect();
        let mut state = TranspositionState {
            dist,
            group1,
            group2,
            sum: 0.0,
        };
        state.sum = state.full_sum();
        Ok(state)
    }

    fn full_sum(&self) -> f64 {
        self.group1
            .iter()
            .map(|&i| self.group2.iter().map(|&j| self.dist.get(i, j)).sum::<f64>())
            .sum()
    }

    pub fn group1(&self) -> &[usize] {
        &self.group1
    }

    pub fn group2(&self) -> &[usize] {
        &self.group2
    }

    pub fn statistic(&self) -> f64 {
        self.sum / (self.group1.len() * self.group2.len()) as f64
    }

    /// Statistic recomputed from scratch for the current labelling.
    pub fn recompute(&self) -> f64 {
        self.full_sum() / (self.group1.len() * self.group2.len()) as f64
    }

    /// Exchanges `group1[x]` with `group2[y]` and returns the new statistic.
    pub fn swap(&mut self, x: usize, y: usize) -> Result<f64> {
        if x >= self.group1.len() || y >= self.group2.len() {
            return Err(Error::OutOfRange {
                name: "swap index",
                value: x.max(y) as f64,
                expected: "indices within their groups",
            });
        }
        let d = self.dist;
        let (a, b) = (self.group1[x], self.group2[y]);
        let row = |u: usize, group: &[usize]| group.iter().map(|&v| d.get(u, v)).sum::<f64>();
        // Remove every term involving a or b, then add them back with the
        // labels exchanged.
        let removed = row(a, &self.group2) + row(b, &self.group1) - d.get(a, b);
        let added = row(b, &self.group2) - d.get(b, b) + row(a, &self.group1) - d.get(a, a)
            + d.get(a, b);
        self.sum += added - removed;
        self.group1[x] = b;
        self.group2[y] = a;
        Ok(self.statistic())
    }
}

/// Transposition test: a random walk of `n_steps` label swaps starting from
/// the observed labelling, recording the statistic after each swap.
pub fn transposition_test(
    dist: &PairwiseDistances,
    m: usize,
    n_steps: usize,
    seed: u64,
) -> Result<PermutationResult> {
    let mut state = TranspositionState::new(dist, m)?;
    let observed = state.statistic();
    let n = dist.len() - m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut null = Vec::with_capacity(n_steps);
    for _ in 0..n_steps {
        let x = rng.random_range(0..m);
        let y = rng.random_range(0..n);
        null.push(state.swap(x, y)?);
    }
    Ok(PermutationResult::from_null(observed, null, seed))
}
