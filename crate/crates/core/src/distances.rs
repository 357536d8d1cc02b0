//! Topological distances: bottleneck and Wasserstein between diagrams,
//! Gromov–Hausdorff through single-linkage matrices, and the
//! Kolmogorov–Smirnov distance between Betti curves.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{PersistenceDiagram, PersistencePair};
use crate::error::{Error, Result};
use crate::filtration::{betti_curve, BettiCurve};
use crate::matching::{hungarian, max_matching};
use crate::network::WeightedNetwork;

fn linf(a: &PersistencePair, b: &PersistencePair) -> f64 {
    (a.birth - b.birth).abs().max((a.death - b.death).abs())
}

/// L∞ distance from a point to the diagonal.
fn gap(a: &PersistencePair) -> f64 {
    (a.death - a.birth) / 2.0
}

fn check_finite(pd: &PersistenceDiagram) -> Result<()> {
    if pd.is_finite() {
        Ok(())
    } else {
        Err(Error::InfiniteDeath)
    }
}

/// Bottleneck distance. Each diagram is augmented with one diagonal slot
/// per point of the other; a point may match any diagonal slot at its
/// diagonal gap, and diagonal slots match each other for free.
pub fn bottleneck(pd1: &PersistenceDiagram, pd2: &PersistenceDiagram) -> Result<f64> {
    check_finite(pd1)?;
    check_finite(pd2)?;
    let (a, b) = (&pd1.points, &pd2.points);
    let (m, n) = (a.len(), b.len());
    if m + n == 0 {
        return Ok(0.0);
    }
    let mut candidates: Vec<f64> = Vec::with_capacity(m * n + m + n + 1);
    candidates.push(0.0);
    for p in a {
        candidates.extend(b.iter().map(|q| linf(p, q)));
    }
    candidates.extend(a.iter().map(gap));
    candidates.extend(b.iter().map(gap));
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // Left: a_0..a_m, then diagonal slots for b. Right: b_0..b_n, then
    // diagonal slots for a.
    let feasible = |t: f64| -> bool {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m + n];
        for (i, p) in a.iter().enumerate() {
            adj[i].extend((0..n).filter(|&j| linf(p, &b[j]) <= t));
            if gap(p) <= t {
                adj[i].extend(n..n + m);
            }
        }
        for l in 0..n {
            let row = &mut adj[m + l];
            row.extend((0..n).filter(|&j| gap(&b[j]) <= t));
            row.extend(n..n + m);
        }
        max_matching(&adj, n + m) == m + n
    };

    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo])
}

/// `q`-Wasserstein distance with L∞ ground cost, solved exactly as an
/// assignment problem on the `(m + n) × (m + n)` augmented cost matrix.
pub fn wasserstein(pd1: &PersistenceDiagram, pd2: &PersistenceDiagram, q: f64) -> Result<f64> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            expected: "finite and at least 1",
        });
    }
    check_finite(pd1)?;
    check_finite(pd2)?;
    let (a, b) = (&pd1.points, &pd2.points);
    let (m, n) = (a.len(), b.len());
    let size = m + n;
    if size == 0 {
        return Ok(0.0);
    }
    let pw = |x: f64| libm::pow(x, q);
    let mut cost = vec![0.0; size * size];
    for r in 0..size {
        for c in 0..size {
            cost[r * size + c] = match (r < m, c < n) {
                (true, true) => pw(linf(&a[r], &b[c])),
                (true, false) => pw(gap(&a[r])),
                (false, true) => pw(gap(&b[c])),
                (false, false) => 0.0,
            };
        }
    }
    let (total, _) = hungarian(size, &cost);
    Ok(libm::pow(total.max(0.0), 1.0 / q))
}

/// Ultrametric of minimax path distances.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleLinkageMatrix {
    p: usize,
    data: Vec<f64>,
}

impl SingleLinkageMatrix {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.p + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// `true` when `s_ij <= max(s_ik, s_kj)` for all triples.
    pub fn is_ultrametric(&self) -> bool {
        let p = self.p;
        (0..p).all(|i| {
            (0..p).all(|j| (0..p).all(|k| self.get(i, j) <= self.get(i, k).max(self.get(k, j))))
        })
    }
}

/// Single-linkage matrix: `s_ij` is the smallest achievable largest edge
/// weight over paths from `i` to `j`, with the weights read as distances.
/// Pairs in different components get `+∞`.
pub fn single_linkage_matrix(net: &WeightedNetwork) -> SingleLinkageMatrix {
    let p = net.p();
    let mut data = vec![f64::INFINITY; p * p];
    for i in 0..p {
        data[i * p + i] = 0.0;
    }
    let mut edges = net.edge_list();
    edges.sort_by(|a, b| a.w.total_cmp(&b.w).then((a.i, a.j).cmp(&(b.i, b.j))));
    // Kruskal with explicit member lists: every merge fixes the distance of
    // all pairs it joins.
    let mut label: Vec<usize> = (0..p).collect();
    let mut members: Vec<Vec<usize>> = (0..p).map(|v| vec![v]).collect();
    for e in edges {
        let (mut a, mut b) = (label[e.i], label[e.j]);
        if a == b {
            continue;
        }
        if members[a].len() < members[b].len() {
            core::mem::swap(&mut a, &mut b);
        }
        let moved = core::mem::take(&mut members[b]);
        for &u in &members[a] {
            for &v in &moved {
                data[u * p + v] = e.w;
                data[v * p + u] = e.w;
            }
        }
        for &v in &moved {
            label[v] = a;
        }
        members[a].extend(moved);
    }
    SingleLinkageMatrix { p, data }
}

/// `max_{i,j} |s¹_ij − s²_ij|` over a common node set.
pub fn gh_distance(n1: &WeightedNetwork, n2: &WeightedNetwork) -> Result<f64> {
    if n1.p() != n2.p() {
        return Err(Error::SizeMismatch {
            left: n1.p(),
            right: n2.p(),
        });
    }
    let (s1, s2) = (single_linkage_matrix(n1), single_linkage_matrix(n2));
    Ok(s1
        .data
        .iter()
        .zip(&s2.data)
        .map(|(&x, &y)| if x == y { 0.0 } else { (x - y).abs() })
        .fold(0.0, f64::max))
}

/// `sup_ε |c1(ε) − c2(ε)|`, evaluated on every piece of the merged step
/// functions.
pub fn ks_between(c1: &BettiCurve, c2: &BettiCurve) -> usize {
    let mut points: Vec<f64> = c1
        .breakpoints()
        .iter()
        .chain(c2.breakpoints())
        .copied()
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    let diff = |e: f64| c1.at(e).abs_diff(c2.at(e));
    let mut best = c1.initial().abs_diff(c2.initial());
    best = best.max(c1.last().abs_diff(c2.last()));
    for (k, &x) in points.iter().enumerate() {
        best = best.max(diff(x));
        if let Some(&y) = points.get(k + 1) {
            best = best.max(diff(x + (y - x) / 2.0));
        }
    }
    best
}

/// Kolmogorov–Smirnov distance between the dimension-`dim` Betti curves of
/// two networks on the same number of nodes.
pub fn ks_distance(n1: &WeightedNetwork, n2: &WeightedNetwork, dim: usize) -> Result<f64> {
    if n1.p() != n2.p() {
        return Err(Error::SizeMismatch {
            left: n1.p(),
            right: n2.p(),
        });
    }
    if n1.convention() != n2.convention() {
        return Err(Error::Invalid(
            "networks use different weight conventions".into(),
        ));
    }
    let c1 = betti_curve(n1, dim)?;
    let c2 = betti_curve(n2, dim)?;
    Ok(ks_between(&c1, &c2) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(points: &[(f64, f64)]) -> PersistenceDiagram {
        PersistenceDiagram::from_pairs(0, points)
    }

    #[test]
    fn diagonal_matches() {
        let a = pd(&[(0.0, 1.0)]);
        let e = pd(&[]);
        assert_eq!(bottleneck(&a, &e).unwrap(), 0.5);
        assert_eq!(bottleneck(&a, &a).unwrap(), 0.0);
        assert_eq!(wasserstein(&a, &e, 2.0).unwrap(), 0.5);
        assert_eq!(wasserstein(&a, &a, 1.0).unwrap(), 0.0);
        assert!(wasserstein(&a, &e, 0.5).is_err());
        let inf = pd(&[(0.0, f64::INFINITY)]);
        assert_eq!(bottleneck(&inf, &e), Err(Error::InfiniteDeath));
    }

    #[test]
    fn bottleneck_prefers_cheaper_option() {
        let a = pd(&[(0.0, 10.0), (0.0, 0.2)]);
        let b = pd(&[(0.0, 9.0)]);
        assert_eq!(bottleneck(&a, &b).unwrap(), 1.0);
        assert!((wasserstein(&a, &b, 1.0).unwrap() - 1.1).abs() < 1e-12);
    }

    #[test]
    fn slm_examples() {
        let tri = WeightedNetwork::from_edges(3, [(0, 1, 0.2), (0, 2, 0.5), (1, 2, 0.6)]).unwrap();
        let tree = WeightedNetwork::from_edges(3, [(0, 1, 0.2), (0, 2, 0.5)]).unwrap();
        let expected = [0.0, 0.2, 0.5, 0.2, 0.0, 0.5, 0.5, 0.5, 0.0];
        assert_eq!(single_linkage_matrix(&tri).as_slice(), &expected);
        assert_eq!(single_linkage_matrix(&tree).as_slice(), &expected);
        assert_eq!(gh_distance(&tri, &tree).unwrap(), 0.0);
        assert!(single_linkage_matrix(&tri).is_ultrametric());

        let a = WeightedNetwork::from_edges(2, [(0, 1, 0.3)]).unwrap();
        let b = WeightedNetwork::from_edges(2, [(0, 1, 0.7)]).unwrap();
        assert!((gh_distance(&a, &b).unwrap() - 0.4).abs() < 1e-15);

        let split = WeightedNetwork::from_edges(3, [(0, 1, 0.3)]).unwrap();
        assert_eq!(single_linkage_matrix(&split).get(0, 2), f64::INFINITY);
    }

    #[test]
    fn ks_example() {
        let k3 = WeightedNetwork::from_edges(3, [(0, 1, 0.1), (0, 2, 0.2), (1, 2, 0.3)]).unwrap();
        let path = WeightedNetwork::from_edges(3, [(0, 1, 0.15), (1, 2, 0.25)]).unwrap();
        assert_eq!(ks_distance(&k3, &path, 0).unwrap(), 1.0);
        assert_eq!(ks_distance(&k3, &k3, 1).unwrap(), 0.0);
        let two = WeightedNetwork::from_edges(2, [(0, 1, 0.1)]).unwrap();
        assert!(ks_distance(&k3, &two, 0).is_err());
    }
}
