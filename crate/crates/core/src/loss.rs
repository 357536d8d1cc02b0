//! Topological loss between graph filtrations, the persistence-diagram
//! regulariser, and topologically penalised network regression.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::PersistenceDiagram;
use crate::error::{Error, Result};
use crate::network::WeightedNetwork;
use crate::unionfind::UnionFind;

/// Sorted 0D births `I0` and 1D deaths `I1` of the threshold-above graph
/// filtration, together with the edge that carries each value.
#[derive(Debug, Clone, PartialEq)]
pub struct BirthDeathDecomposition {
    pub i0: Vec<f64>,
    pub i1: Vec<f64>,
    pub i0_edges: Vec<(usize, usize)>,
    pub i1_edges: Vec<(usize, usize)>,
    pub components: usize,
}

pub fn decompose(net: &WeightedNetwork) -> BirthDeathDecomposition {
    let mut edges = net.edge_list();
    edges.sort_by(|a, b| b.w.total_cmp(&a.w).then((a.i, a.j).cmp(&(b.i, b.j))));
    let mut uf = UnionFind::new(net.p());
    let mut zero = Vec::new();
    let mut one = Vec::new();
    for e in edges {
        if uf.union(e.i, e.j) {
            zero.push(e);
        } else {
            one.push(e);
        }
    }
    // Both lists are in descending order; flip to ascending.
    zero.reverse();
    one.reverse();
    BirthDeathDecomposition {
        i0: zero.iter().map(|e| e.w).collect(),
        i1: one.iter().map(|e| e.w).collect(),
        i0_edges: zero.iter().map(|e| (e.i, e.j)).collect(),
        i1_edges: one.iter().map(|e| (e.i, e.j)).collect(),
        components: uf.components(),
    }
}

/// One matched pair: the value from the first network (with the edge it
/// comes from) against the target value from the second.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Matched {
    value: f64,
    edge: Option<(usize, usize)>,
    target: f64,
}

/// Index-wise matching of two sorted lists after padding the shorter one
/// with `pad1` / `pad2`.
fn match_sorted(
    a: &[f64],
    a_edges: &[(usize, usize)],
    pad_a: (f64, Option<(usize, usize)>),
    b: &[f64],
    pad_b: f64,
) -> Vec<Matched> {
    let n = a.len().max(b.len());
    let mut left: Vec<(f64, Option<(usize, usize)>)> =
        a.iter().zip(a_edges).map(|(&v, &e)| (v, Some(e))).collect();
    left.resize(n, pad_a);
    let mut right = b.to_vec();
    right.resize(n, pad_b);
    left.sort_by(|x, y| x.0.total_cmp(&y.0));
    right.sort_by(f64::total_cmp);
    left.into_iter()
        .zip(right)
        .map(|((value, edge), target)| Matched {
            value,
            edge,
            target,
        })
        .collect()
}

fn max_edge(net: &WeightedNetwork) -> (f64, Option<(usize, usize)>) {
    net.edges()
        .fold((0.0, None), |best, e| {
            if best.1.is_none() || e.w > best.0 {
                (e.w, Some((e.i, e.j)))
            } else {
                best
            }
        })
}

fn min_edge(net: &WeightedNetwork) -> (f64, Option<(usize, usize)>) {
    net.edges()
        .fold((0.0, None), |best, e| {
            if best.1.is_none() || e.w < best.0 {
                (e.w, Some((e.i, e.j)))
            } else {
                best
            }
        })
}

fn top_pairs(g1: &WeightedNetwork, g2: &WeightedNetwork) -> (Vec<Matched>, Vec<Matched>) {
    let (d1, d2) = (decompose(g1), decompose(g2));
    // Unmatched births meet the largest edge weight of the other network
    // and unmatched deaths its smallest; networks without edges pad with 0.
    let zero = match_sorted(&d1.i0, &d1.i0_edges, max_edge(g1), &d2.i0, max_edge(g2).0);
    let one = match_sorted(&d1.i1, &d1.i1_edges, min_edge(g1), &d2.i1, min_edge(g2).0);
    (zero, one)
}

/// `Σ (I0 differences)² + Σ (I1 differences)²` over the sorted matching.
pub fn top_loss(g1: &WeightedNetwork, g2: &WeightedNetwork) -> f64 {
    let (zero, one) = top_pairs(g1, g2);
    zero.iter()
        .chain(&one)
        .map(|m| (m.value - m.target) * (m.value - m.target))
        .sum()
}

/// `Σ_{i >= i0} (d_i − b_i)^p ((d_i + b_i)/2)^q` with points ranked by
/// persistence, most persistent first (`i = 1`).
pub fn pd_regularizer(pd: &PersistenceDiagram, p: f64, q: f64, i0: usize) -> Result<f64> {
    if !(p >= 0.0 && q >= 0.0) {
        return Err(Error::OutOfRange {
            name: "exponent",
            value: if p >= 0.0 { q } else { p },
            expected: "nonnegative",
        });
    }
    if i0 == 0 {
        return Err(Error::OutOfRange {
            name: "i0",
            value: 0.0,
            expected: "at least 1",
        });
    }
    if !pd.is_finite() {
        return Err(Error::InfiniteDeath);
    }
    let mut pts = pd.points.clone();
    pts.sort_by(|a, b| b.persistence().total_cmp(&a.persistence()));
    Ok(pts
        .iter()
        .skip(i0 - 1)
        .map(|pt| libm::pow(pt.persistence(), p) * libm::pow(pt.midpoint(), q))
        .sum())
}

/// Network regression `argmin (1/n) Σ_k ‖Θ − G_k‖² + λ L_top(Θ, T)` over
/// nonnegative symmetric weights.
#[derive(Debug, Clone)]
pub struct RegressionProblem {
    pub observed: Vec<WeightedNetwork>,
    pub prior: WeightedNetwork,
    pub lambda: f64,
    pub max_iter: usize,
    /// Initial step; defaults to a tenth of the observed weight range.
    pub step: Option<f64>,
    /// Relative loss decrease below which the iteration stops.
    pub tol: f64,
}

impl RegressionProblem {
    pub fn new(observed: Vec<WeightedNetwork>, prior: WeightedNetwork, lambda: f64) -> Self {
        RegressionProblem {
            observed,
            prior,
            lambda,
            max_iter: 500,
            step: None,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RegressionResult {
    pub estimate: WeightedNetwork,
    /// Total loss of the starting point and of every accepted step.
    pub trace: Vec<f64>,
    pub iterations: usize,
    /// `false` when the iteration budget ran out first.
    pub converged: bool,
}

struct Objective<'a> {
    p: usize,
    mean: Vec<f64>,
    // Mean of squared deviations; makes the fit term an exact average.
    offset: f64,
    prior: &'a WeightedNetwork,
    lambda: f64,
}

fn upper_index(p: usize, i: usize, j: usize) -> usize {
    // Row-major position of (i, j), i < j, in the strict upper triangle.
    i * (2 * p - i - 1) / 2 + (j - i - 1)
}

impl Objective<'_> {
    fn network(&self, theta: &[f64]) -> WeightedNetwork {
        let p = self.p;
        let mut k = 0;
        let mut edges = Vec::new();
        for i in 0..p {
            for j in i + 1..p {
                if theta[k] > 0.0 {
                    edges.push((i, j, theta[k]));
                }
                k += 1;
            }
        }
        WeightedNetwork::from_edges(p, edges).expect("projected weights are valid")
    }

    fn loss(&self, theta: &[f64]) -> f64 {
        let fit: f64 = theta
            .iter()
            .zip(&self.mean)
            .map(|(t, g)| (t - g) * (t - g))
            .sum::<f64>()
            + self.offset;
        if self.lambda == 0.0 {
            return fit;
        }
        fit + self.lambda * top_loss(&self.network(theta), self.prior)
    }

    fn gradient(&self, theta: &[f64]) -> Vec<f64> {
        let mut g: Vec<f64> = theta
            .iter()
            .zip(&self.mean)
            .map(|(t, m)| 2.0 * (t - m))
            .collect();
        if self.lambda > 0.0 {
            let (zero, one) = top_pairs(&self.network(theta), self.prior);
            for m in zero.iter().chain(&one) {
                if let Some((i, j)) = m.edge {
                    g[upper_index(self.p, i, j)] += self.lambda * 2.0 * (m.value - m.target);
                }
            }
        }
        g
    }
}

/// Projected subgradient descent from the elementwise mean. The matching
/// inside `L_top` is frozen at each iterate; a step that raises the loss is
/// halved until it does not, so the loss trace never increases.
pub fn topo_regression(problem: &RegressionProblem) -> Result<RegressionResult> {
    let n = problem.observed.len();
    if n == 0 {
        return Err(Error::Empty("observed networks"));
    }
    if !(problem.lambda >= 0.0 && problem.lambda.is_finite()) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: problem.lambda,
            expected: "nonnegative and finite",
        });
    }
    let p = problem.prior.p();
    for g in &problem.observed {
        if g.p() != p {
            return Err(Error::SizeMismatch {
                left: g.p(),
                right: p,
            });
        }
    }
    let len = p * p.saturating_sub(1) / 2;
    let mut mean = vec![0.0; len];
    let mut sq = vec![0.0; len];
    for g in &problem.observed {
        let mut k = 0;
        for i in 0..p {
            for j in i + 1..p {
                let w = g.weight(i, j);
                mean[k] += w;
                sq[k] += w * w;
                k += 1;
            }
        }
    }
    for k in 0..len {
        mean[k] /= n as f64;
        sq[k] = sq[k] / n as f64 - mean[k] * mean[k];
    }
    let objective = Objective {
        p,
        offset: sq.iter().map(|v| v.max(0.0)).sum(),
        mean,
        prior: &problem.prior,
        lambda: problem.lambda,
    };

    let mut step = match problem.step {
        Some(s) if s > 0.0 && s.is_finite() => s,
        Some(s) => {
            return Err(Error::OutOfRange {
                name: "step",
                value: s,
                expected: "positive and finite",
            })
        }
        None => {
            let (lo, hi) = problem
                .observed
                .iter()
                .flat_map(|g| g.edges().map(|e| e.w))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), w| {
                    (lo.min(w), hi.max(w))
                });
            let range = hi - lo;
            if range > 0.0 {
                0.1 * range
            } else if hi > 0.0 {
                0.1 * hi
            } else {
                0.1
            }
        }
    };

    let mut theta = objective.mean.clone();
    let mut loss = objective.loss(&theta);
    let mut trace = vec![loss];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < problem.max_iter {
        iterations += 1;
        let grad = objective.gradient(&theta);
        if grad.iter().all(|&g| g == 0.0) {
            converged = true;
            break;
        }
        let mut accepted = None;
        for _ in 0..60 {
            let cand: Vec<f64> = theta
                .iter()
                .zip(&grad)
                .map(|(t, g)| (t - step * g).max(0.0))
                .collect();
            let l = objective.loss(&cand);
            if l <= loss {
                accepted = Some((cand, l));
                break;
            }
            step /= 2.0;
        }
        let Some((cand, l)) = accepted else {
            converged = true;
            break;
        };
        let decrease = loss - l;
        theta = cand;
        loss = l;
        trace.push(loss);
        if decrease <= problem.tol * loss.abs().max(1e-300) {
            converged = true;
            break;
        }
    }
    Ok(RegressionResult {
        estimate: objective.network(&theta),
        trace,
        iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3(a: f64, b: f64, c: f64) -> WeightedNetwork {
        WeightedNetwork::from_edges(3, [(0, 1, a), (0, 2, b), (1, 2, c)]).unwrap()
    }

    #[test]
    fn upper_indices_are_row_major() {
        let p = 5;
        let mut k = 0;
        for i in 0..p {
            for j in i + 1..p {
                assert_eq!(upper_index(p, i, j), k);
                k += 1;
            }
        }
    }

    #[test]
    fn top_loss_examples() {
        let a = k3(0.1, 0.2, 0.3);
        let b = k3(0.2, 0.3, 0.5);
        assert!((top_loss(&a, &b) - 0.06).abs() < 1e-15);
        assert_eq!(top_loss(&a, &a), 0.0);
        let x = WeightedNetwork::from_edges(2, [(0, 1, 0.3)]).unwrap();
        let y = WeightedNetwork::from_edges(2, [(0, 1, 0.8)]).unwrap();
        assert!((top_loss(&x, &y) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn padding_rules() {
        // I0 {0.3} vs {0.2, 0.3}; the 2-node network pads 0D with its max
        // weight 0.3 and 1D with its min weight 0.3.
        let small = WeightedNetwork::from_edges(2, [(0, 1, 0.3)]).unwrap();
        let big = k3(0.1, 0.2, 0.3);
        let expected = (0.2f64 - 0.3).powi(2) + (0.1f64 - 0.3).powi(2);
        assert!((top_loss(&small, &big) - expected).abs() < 1e-15);
        assert!((top_loss(&big, &small) - expected).abs() < 1e-15);
    }

    #[test]
    fn regulariser_examples() {
        let empty = PersistenceDiagram::new(0, Vec::new());
        assert_eq!(pd_regularizer(&empty, 1.0, 0.0, 1).unwrap(), 0.0);
        let one = PersistenceDiagram::from_pairs(0, &[(0.0, 2.0)]);
        assert_eq!(pd_regularizer(&one, 1.0, 0.0, 1).unwrap(), 2.0);
        let two = PersistenceDiagram::from_pairs(0, &[(0.0, 1.0), (0.0, 3.0)]);
        assert_eq!(pd_regularizer(&two, 2.0, 0.0, 2).unwrap(), 1.0);
        assert!(pd_regularizer(&two, 2.0, 0.0, 0).is_err());
    }

    #[test]
    fn regression_without_penalty_is_the_mean() {
        let g = vec![k3(0.1, 0.2, 0.3), k3(0.3, 0.4, 0.1)];
        let prob = RegressionProblem::new(g, k3(0.5, 0.5, 0.5), 0.0);
        let r = topo_regression(&prob).unwrap();
        assert!(r.converged);
        assert!((r.estimate.weight(0, 1) - 0.2).abs() < 1e-12);
        assert!((r.estimate.weight(1, 2) - 0.2).abs() < 1e-12);

        let single = RegressionProblem::new(vec![k3(0.1, 0.2, 0.3)], k3(0.5, 0.5, 0.5), 0.0);
        let r = topo_regression(&single).unwrap();
        assert_eq!(r.estimate.weight(0, 2), 0.2);
    }
}
