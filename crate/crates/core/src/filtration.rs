//! Graph filtrations: Betti curves, birth/death decompositions, trees,
//! node-based filtrations and 1D Morse pairing.
//!
//! Under the threshold-above convention the filtration `X_eps` keeps the
//! edges with `w > eps`. Removing edges one weight at a time either splits a
//! component (the weight joins the 0D birth set) or breaks a cycle (the
//! weight joins the 1D death set). The split edges are exactly the edges of
//! a maximum spanning forest, so one Kruskal pass in descending weight order
//! produces both sets together with the Betti curves.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{PersistenceDiagram, PersistencePair};
use crate::error::{Error, Result};
use crate::network::{BinaryNetwork, Edge, ThresholdMode, WeightedNetwork};
use crate::unionfind::UnionFind;

/// Which side of a breakpoint carries the new value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuity {
    /// Value changes at the breakpoint: `[b_k, b_{k+1})`.
    Right,
    /// Value changes just after the breakpoint: `(b_k, b_{k+1}]`.
    Left,
}

/// Integer step function of the filtration value.
#[derive(Debug, Clone, PartialEq)]
pub struct BettiCurve {
    pub dim: usize,
    breakpoints: Vec<f64>,
    values: Vec<usize>,
    continuity: Continuity,
}

impl BettiCurve {
    /// `values` has one more entry than `breakpoints`: `values[0]` holds
    /// before the first breakpoint and `values[k]` after breakpoint `k - 1`.
    pub fn new(
        dim: usize,
        breakpoints: Vec<f64>,
        values: Vec<usize>,
        continuity: Continuity,
    ) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::SizeMismatch {
                left: values.len(),
                right: breakpoints.len() + 1,
            });
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("breakpoints must be strictly increasing".into()));
        }
        Ok(BettiCurve {
            dim,
            breakpoints,
            values,
            continuity,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn continuity(&self) -> Continuity {
        self.continuity
    }

    pub fn initial(&self) -> usize {
        self.values[0]
    }

    pub fn last(&self) -> usize {
        *self.values.last().expect("curve has at least one value")
    }

    pub fn at(&self, eps: f64) -> usize {
        let k = match self.continuity {
            Continuity::Right => self.breakpoints.partition_point(|&b| b <= eps),
            Continuity::Left => self.breakpoints.partition_point(|&b| b < eps),
        };
        self.values[k]
    }

    /// `(breakpoint, value after it)` pairs.
    pub fn steps(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.breakpoints
            .iter()
            .copied()
            .zip(self.values[1..].iter().copied())
    }
}

/// Sorted distinct edge weights `w_(1) < … < w_(q)` with their
/// multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalFiltration {
    pub values: Vec<f64>,
    pub multiplicity: Vec<usize>,
}

impl MaximalFiltration {
    pub fn has_ties(&self) -> bool {
        self.multiplicity.iter().any(|&m| m > 1)
    }
}

pub fn maximal_filtration(net: &WeightedNetwork) -> MaximalFiltration {
    let mut w: Vec<f64> = net.edges().map(|e| e.w).collect();
    w.sort_by(f64::total_cmp);
    let mut values = Vec::new();
    let mut multiplicity = Vec::new();
    for x in w {
        if values.last() == Some(&x) {
            *multiplicity.last_mut().unwrap() += 1;
        } else {
            values.push(x);
            multiplicity.push(1);
        }
    }
    MaximalFiltration {
        values,
        multiplicity,
    }
}

/// Edges ordered as they enter the filtration: descending weight for
/// threshold-above, ascending for threshold-below; ties by `(i, j)`.
fn entry_order(net: &WeightedNetwork, mode: ThresholdMode) -> Vec<Edge> {
    let mut edges = net.edge_list();
    match mode {
        ThresholdMode::Above => {
            edges.sort_by(|a, b| b.w.total_cmp(&a.w).then((a.i, a.j).cmp(&(b.i, b.j))))
        }
        ThresholdMode::Below => {
            edges.sort_by(|a, b| a.w.total_cmp(&b.w).then((a.i, a.j).cmp(&(b.i, b.j))))
        }
    }
    edges
}

/// Both Betti curves in one Kruskal pass.
pub fn betti_curves(net: &WeightedNetwork) -> (BettiCurve, BettiCurve) {
    betti_curves_with(net, net.convention().mode())
}

pub fn betti_curves_with(net: &WeightedNetwork, mode: ThresholdMode) -> (BettiCurve, BettiCurve) {
    let p = net.p();
    let edges = entry_order(net, mode);
    let mut uf = UnionFind::new(p);
    // States after each group of equal weights enters, starting from the
    // edgeless graph.
    let mut b0 = vec![p];
    let mut b1 = vec![0usize];
    let mut levels = Vec::new();
    let mut present = 0usize;
    let mut k = 0;
    while k < edges.len() {
        let w = edges[k].w;
        while k < edges.len() && edges[k].w == w {
            uf.union(edges[k].i, edges[k].j);
            present += 1;
            k += 1;
        }
        levels.push(w);
        let c = uf.components();
        b0.push(c);
        b1.push(c + present - p);
    }
    let continuity = match mode {
        ThresholdMode::Above => {
            // Entry order is descending; the curve reads ascending in eps.
            levels.reverse();
            b0.reverse();
            b1.reverse();
            Continuity::Right
        }
        ThresholdMode::Below => Continuity::Left,
    };
    (
        BettiCurve {
            dim: 0,
            breakpoints: levels.clone(),
            values: b0,
            continuity,
        },
        BettiCurve {
            dim: 1,
            breakpoints: levels,
            values: b1,
            continuity,
        },
    )
}

/// Betti curve of dimension 0 or 1 over the graph filtration.
pub fn betti_curve(net: &WeightedNetwork, dim: usize) -> Result<BettiCurve> {
    let (b0, b1) = betti_curves(net);
    match dim {
        0 => Ok(b0),
        1 => Ok(b1),
        _ => Err(Error::OutOfRange {
            name: "dim",
            value: dim as f64,
            expected: "0 or 1",
        }),
    }
}

/// Partition of the edge weights into 0D events `births0` (spanning-forest
/// edges) and 1D events `deaths1` (the remaining edges), both sorted
/// ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphBarcode {
    pub births0: Vec<f64>,
    pub deaths1: Vec<f64>,
    pub death_level: f64,
    pub mode: ThresholdMode,
    /// Connected components of the full graph.
    pub components: usize,
}

/// Reproducible death level: `w_(q) + 0.01 (w_(q) − w_(1))`, falling back
/// to `w_(q) + 0.01 |w_(q)|` (or `1`) when the weights have no spread.
pub fn auto_death_level(net: &WeightedNetwork) -> f64 {
    match (net.min_weight(), net.max_weight()) {
        (Some(lo), Some(hi)) if hi > lo => hi + 0.01 * (hi - lo),
        (Some(_), Some(hi)) if hi > 0.0 => hi + 0.01 * hi,
        _ => 1.0,
    }
}

pub fn graph_barcode(net: &WeightedNetwork, death_level: Option<f64>) -> Result<GraphBarcode> {
    graph_barcode_with(net, death_level, net.convention().mode())
}

pub fn graph_barcode_with(
    net: &WeightedNetwork,
    death_level: Option<f64>,
    mode: ThresholdMode,
) -> Result<GraphBarcode> {
    let c = match death_level {
        Some(c) => {
            if let Some(hi) = net.max_weight() {
                if c.is_nan() || c <= hi {
                    return Err(Error::OutOfRange {
                        name: "death_level",
                        value: c,
                        expected: "greater than the largest edge weight",
                    });
                }
            }
            c
        }
        None => auto_death_level(net),
    };
    let mut uf = UnionFind::new(net.p());
    let mut births0 = Vec::new();
    let mut deaths1 = Vec::new();
    for e in entry_order(net, mode) {
        if uf.union(e.i, e.j) {
            births0.push(e.w);
        } else {
            deaths1.push(e.w);
        }
    }
    births0.sort_by(f64::total_cmp);
    deaths1.sort_by(f64::total_cmp);
    Ok(GraphBarcode {
        births0,
        deaths1,
        death_level: c,
        mode,
        components: uf.components(),
    })
}

impl GraphBarcode {
    /// Persistence diagram of one dimension with the death level standing
    /// in for classes that never die. Under threshold-above, 0D points are
    /// `(b, c)` and 1D points `(0, d)`; threshold-below swaps the roles.
    /// The component alive for the whole filtration is left out.
    pub fn diagram(&self, dim: usize) -> Result<PersistenceDiagram> {
        let c = self.death_level;
        let points = match (dim, self.mode) {
            (0, ThresholdMode::Above) => self
                .births0
                .iter()
                .map(|&b| PersistencePair::new(b, c))
                .collect(),
            (1, ThresholdMode::Above) => self
                .deaths1
                .iter()
                .map(|&d| PersistencePair::new(0.0, d))
                .collect(),
            (0, ThresholdMode::Below) => self
                .births0
                .iter()
                .map(|&d| PersistencePair::new(0.0, d))
                .collect(),
            (1, ThresholdMode::Below) => self
                .deaths1
                .iter()
                .map(|&b| PersistencePair::new(b, c))
                .collect(),
            _ => {
                return Err(Error::OutOfRange {
                    name: "dim",
                    value: dim as f64,
                    expected: "0 or 1",
                })
            }
        };
        Ok(PersistenceDiagram::new(dim, points))
    }
}

/// Closed-form `(eps, β0)` coordinates of a forest with distinct weights:
/// `(0, c), (w_(1), c + 1), …, (w_(q), c + q)` for `c` components.
pub fn tree_betti_coordinates(tree: &WeightedNetwork) -> Result<Vec<(f64, usize)>> {
    let mut uf = UnionFind::new(tree.p());
    for e in tree.edges() {
        if !uf.union(e.i, e.j) {
            return Err(Error::HasCycle(e.i, e.j));
        }
    }
    let filt = maximal_filtration(tree);
    if let Some(k) = filt.multiplicity.iter().position(|&m| m > 1) {
        return Err(Error::RepeatedWeight(filt.values[k]));
    }
    let c = uf.components();
    let mut coords = vec![(0.0, c)];
    coords.extend(filt.values.iter().enumerate().map(|(r, &w)| (w, c + r + 1)));
    Ok(coords)
}

/// One step of a node-based filtration.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeStep {
    pub lambda: f64,
    pub node: usize,
    /// Edges `(node, j)` that enter together with the node.
    pub edges: Vec<(usize, usize)>,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeFiltration {
    pub curve: BettiCurve,
    pub steps: Vec<NodeStep>,
    /// Elder-rule 0D pairs; the oldest component per connected piece is
    /// reported with infinite death.
    pub diagram: PersistenceDiagram,
}

/// Sublevel filtration on node weights: node `i` enters at `w_i`, edge
/// `(i, j)` at `max(w_i, w_j)`. Ties enter in node-index order.
#[allow(clippy::needless_range_loop)]
pub fn node_filtration(graph: &BinaryNetwork, node_weights: &[f64]) -> Result<NodeFiltration> {
    let p = graph.p();
    if node_weights.len() != p {
        return Err(Error::SizeMismatch {
            left: node_weights.len(),
            right: p,
        });
    }
    if let Some(k) = node_weights.iter().position(|w| !w.is_finite()) {
        return Err(Error::InvalidEntry {
            row: k,
            col: k,
            value: node_weights[k],
            reason: "non-finite node weight",
        });
    }
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| node_weights[a].total_cmp(&node_weights[b]).then(a.cmp(&b)));

    let mut uf = UnionFind::new(p);
    let mut birth = vec![0.0; p];
    let mut entered = vec![false; p];
    let mut alive = 0usize;
    let mut steps = Vec::with_capacity(p);
    let mut pairs = Vec::new();
    for &v in &order {
        let lambda = node_weights[v];
        entered[v] = true;
        birth[v] = lambda;
        alive += 1;
        let mut edges = Vec::new();
        for u in 0..p {
            if u != v && entered[u] && graph.has_edge(u, v) {
                edges.push((v, u));
                let (ru, rv) = (uf.find(u), uf.find(v));
                if ru != rv {
                    // Elder rule: the younger root dies at lambda.
                    let (old, young) = if (birth[ru], ru) <= (birth[rv], rv) {
                        (ru, rv)
                    } else {
                        (rv, ru)
                    };
                    if birth[young] < lambda {
                        pairs.push(PersistencePair::new(birth[young], lambda));
                    }
                    uf.union(old, young);
                    let r = uf.find(old);
                    birth[r] = birth[old];
                    alive -= 1;
                }
            }
        }
        steps.push(NodeStep {
            lambda,
            node: v,
            edges,
            components: alive,
        });
    }
    for v in 0..p {
        if uf.find(v) == v {
            pairs.push(PersistencePair::new(birth[v], f64::INFINITY));
        }
    }

    let mut breakpoints: Vec<f64> = Vec::new();
    let mut values = vec![0usize];
    for s in &steps {
        if breakpoints.last() == Some(&s.lambda) {
            *values.last_mut().unwrap() = s.components;
        } else {
            breakpoints.push(s.lambda);
            values.push(s.components);
        }
    }
    Ok(NodeFiltration {
        curve: BettiCurve {
            dim: 0,
            breakpoints,
            values,
            continuity: Continuity::Right,
        },
        steps,
        diagram: PersistenceDiagram::new(0, pairs),
    })
}

/// Elder-rule pairing of a sampled 1D signal.
#[derive(Debug, Clone, PartialEq)]
pub struct MorsePairs {
    /// `(minimum, maximum)` pairs, one per interior local maximum.
    pub pairs: Vec<PersistencePair>,
    /// The global minimum paired with the largest sample value.
    pub essential: PersistencePair,
}

impl MorsePairs {
    /// All pairs including the essential class.
    pub fn diagram(&self) -> PersistenceDiagram {
        let mut points = self.pairs.clone();
        points.push(self.essential);
        PersistenceDiagram::new(0, points)
    }
}

/// Pairs local minima with local maxima of a sampled signal by the elder
/// rule on its sublevel sets. Runs of equal samples collapse to one point
/// first.
pub fn morse_pairs_1d(samples: &[f64]) -> Result<MorsePairs> {
    if samples.len() < 2 {
        return Err(Error::OutOfRange {
            name: "sample count",
            value: samples.len() as f64,
            expected: "at least 2",
        });
    }
    if let Some(k) = samples.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidEntry {
            row: k,
            col: 0,
            value: samples[k],
            reason: "non-finite sample",
        });
    }
    let mut f: Vec<f64> = Vec::with_capacity(samples.len());
    for &x in samples {
        if f.last() != Some(&x) {
            f.push(x);
        }
    }
    let n = f.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]).then(a.cmp(&b)));

    let mut uf = UnionFind::new(n);
    let mut birth = vec![(0.0, 0usize); n];
    let mut entered = vec![false; n];
    let mut pairs = Vec::new();
    for &v in &order {
        entered[v] = true;
        birth[v] = (f[v], v);
        let mut neighbours = [None, None];
        if v > 0 && entered[v - 1] {
            neighbours[0] = Some(v - 1);
        }
        if v + 1 < n && entered[v + 1] {
            neighbours[1] = Some(v + 1);
        }
        match neighbours {
            [Some(a), Some(b)] => {
                let (ra, rb) = (uf.find(a), uf.find(b));
                let (old, young) = if birth[ra] <= birth[rb] { (ra, rb) } else { (rb, ra) };
                pairs.push(PersistencePair::new(birth[young].0, f[v]));
                let keep = birth[old];
                uf.union(old, young);
                uf.union(old, v);
                let r = uf.find(v);
                birth[r] = keep;
            }
            [Some(a), None] | [None, Some(a)] => {
                let keep = birth[uf.find(a)];
                uf.union(a, v);
                let r = uf.find(v);
                birth[r] = keep;
            }
            [None, None] => {}
        }
    }
    let lo = f.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(MorsePairs {
        pairs,
        essential: PersistencePair::new(lo, hi),
    })
}
