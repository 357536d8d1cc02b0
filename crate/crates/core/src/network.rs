//! Weighted networks, binary networks, hypergraphs and point clouds.
//!
//! A [`WeightedNetwork`] stores symmetric nonnegative edge weights on `p`
//! nodes. A pair `(i, j)` is an edge iff its weight is strictly positive;
//! zero entries are absent edges. Networks up to [`DENSE_LIMIT`] nodes keep a
//! dense `p × p` array, larger ones a sorted edge list. Both layouts yield
//! edges in lexicographic `(i, j)` order with `i < j`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Node count above which networks switch to edge-list storage.
pub const DENSE_LIMIT: usize = 5000;

/// How edge weights are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Larger weight means stronger connection; graphs keep edges with
    /// `w > eps`.
    #[default]
    Similarity,
    /// Larger weight means farther apart; graphs keep edges with `w < eps`.
    Dissimilarity,
}

impl Convention {
    pub fn mode(self) -> ThresholdMode {
        match self {
            Convention::Similarity => ThresholdMode::Above,
            Convention::Dissimilarity => ThresholdMode::Below,
        }
    }
}

/// Direction of the threshold comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdMode {
    /// Keep edges with `w > eps`.
    #[default]
    Above,
    /// Keep edges with `w < eps`.
    Below,
}

impl ThresholdMode {
    #[inline]
    pub fn keeps(self, w: f64, eps: f64) -> bool {
        match self {
            ThresholdMode::Above => w > eps,
            ThresholdMode::Below => w < eps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense(Vec<f64>),
    Sparse(Vec<Edge>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedNetwork {
    p: usize,
    storage: Storage,
    convention: Convention,
}

fn check_weight(row: usize, col: usize, value: f64) -> Result<()> {
    if value.is_nan() {
        return Err(Error::InvalidEntry {
            row,
            col,
            value,
            reason: "NaN weight",
        });
    }
    if value.is_infinite() {
        return Err(Error::InvalidEntry {
            row,
            col,
            value,
            reason: "infinite weight",
        });
    }
    if value < 0.0 {
        return Err(Error::InvalidEntry {
            row,
            col,
            value,
            reason: "negative weight",
        });
    }
    Ok(())
}

impl WeightedNetwork {
    /// Builds a network from a row-major `p × p` array. Entries must be
    /// exactly symmetric with a zero diagonal.
    pub fn from_dense(p: usize, data: &[f64]) -> Result<Self> {
        Self::from_dense_with_tolerance(p, data, 0.0)
    }

    /// Like [`from_dense`](Self::from_dense) but accepts asymmetry up to
    /// `tol` (absolute), averaging the two triangles.
    pub fn from_dense_with_tolerance(p: usize, data: &[f64], tol: f64) -> Result<Self> {
        if data.len() != p * p {
            return Err(Error::SizeMismatch {
                left: data.len(),
                right: p * p,
            });
        }
        for i in 0..p {
            let d = data[i * p + i];
            if d.is_nan() || d.abs() > tol {
                return Err(Error::InvalidEntry {
                    row: i,
                    col: i,
                    value: d,
                    reason: "nonzero diagonal",
                });
            }
            for j in 0..p {
                if i != j {
                    check_weight(i, j, data[i * p + j])?;
                }
            }
        }
        for i in 0..p {
            for j in (i + 1)..p {
                let (a, b) = (data[i * p + j], data[j * p + i]);
                if (a - b).abs() > tol {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        let mut edges = Vec::new();
        for i in 0..p {
            for j in (i + 1)..p {
                let (a, b) = (data[i * p + j], data[j * p + i]);
                let w = if a == b { a } else { 0.5 * (a + b) };
                if w > 0.0 {
                    edges.push(Edge { i, j, w });
                }
            }
        }
        Ok(Self::from_sorted_edges(p, edges))
    }

    /// Builds a network from `(i, j, w)` triples. Zero weights are dropped;
    /// repeated pairs, self-loops and out-of-range indices are errors.
    pub fn from_edges<I>(p: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut list = Vec::new();
        for (a, b, w) in edges {
            if a >= p || b >= p {
                return Err(Error::OutOfRange {
                    name: "node index",
                    value: a.max(b) as f64,
                    expected: "below the node count",
                });
            }
            if a == b {
                return Err(Error::InvalidEntry {
                    row: a,
                    col: b,
                    value: w,
                    reason: "self-loop",
                });
            }
            check_weight(a, b, w)?;
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            list.push(Edge { i, j, w });
        }
        list.sort_by_key(|e| (e.i, e.j));
        for pair in list.windows(2) {
            if (pair[0].i, pair[0].j) == (pair[1].i, pair[1].j) {
                return Err(Error::DuplicateEdge(pair[0].i, pair[0].j));
            }
        }
        list.retain(|e| e.w > 0.0);
        Ok(Self::from_sorted_edges(p, list))
    }

    /// Builds a network by evaluating `f(i, j)` for every `i < j`.
    pub fn from_fn(p: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..p {
            for j in (i + 1)..p {
                let w = f(i, j);
                check_weight(i, j, w)?;
                if w > 0.0 {
                    edges.push(Edge { i, j, w });
                }
            }
        }
        Ok(Self::from_sorted_edges(p, edges))
    }

    fn from_sorted_edges(p: usize, edges: Vec<Edge>) -> Self {
        let storage = if p <= DENSE_LIMIT {
            let mut dense = vec![0.0; p * p];
            for e in &edges {
                dense[e.i * p + e.j] = e.w;
                dense[e.j * p + e.i] = e.w;
            }
            Storage::Dense(dense)
        } else {
            Storage::Sparse(edges)
        };
        WeightedNetwork {
            p,
            storage,
            convention: Convention::default(),
        }
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Node count.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of edges (pairs with positive weight).
    pub fn edge_count(&self) -> usize {
        match &self.storage {
            Storage::Dense(_) => self.edges().count(),
            Storage::Sparse(e) => e.len(),
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        match &self.storage {
            Storage::Dense(d) => d[i * self.p + j],
            Storage::Sparse(list) => {
                let key = if i < j { (i, j) } else { (j, i) };
                list.binary_search_by(|e| (e.i, e.j).cmp(&key))
                    .map(|k| list[k].w)
                    .unwrap_or(0.0)
            }
        }
    }

    /// Edges with `i < j` in lexicographic order.
    pub fn edges(&self) -> Edges<'_> {
        Edges {
            net: self,
            i: 0,
            j: 1,
            k: 0,
        }
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    /// Row-major `p × p` array with zero diagonal.
    pub fn to_dense(&self) -> Vec<f64> {
        match &self.storage {
            Storage::Dense(d) => d.clone(),
            Storage::Sparse(list) => {
                let mut d = vec![0.0; self.p * self.p];
                for e in list {
                    d[e.i * self.p + e.j] = e.w;
                    d[e.j * self.p + e.i] = e.w;
                }
                d
            }
        }
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.edges().map(|e| e.w).reduce(f64::max)
    }

    pub fn min_weight(&self) -> Option<f64> {
        self.edges().map(|e| e.w).reduce(f64::min)
    }
}

pub struct Edges<'a> {
    net: &'a WeightedNetwork,
    i: usize,
    j: usize,
    k: usize,
}

impl Iterator for Edges<'_> {
    type Item = Edge;

    fn next(&mut self) -> Option<Edge> {
        let p = self.net.p;
        match &self.net.storage {
            Storage::Sparse(list) => {
                let e = list.get(self.k).copied();
                self.k += 1;
                e
            }
            Storage::Dense(d) => {
                while self.i < p {
                    while self.j < p {
                        let (i, j) = (self.i, self.j);
                        self.j += 1;
                        let w = d[i * p + j];
                        if w > 0.0 {
                            return Some(Edge { i, j, w });
                        }
                    }
                    self.i += 1;
                    self.j = self.i + 1;
                }
                None
            }
        }
    }
}

/// Converts a correlation array into the dissimilarity network
/// `w_ij = sqrt(1 - corr_ij)`.
pub fn corr_to_weight(p: usize, corr: &[f64]) -> Result<WeightedNetwork> {
    const TOL: f64 = 1e-12;
    if corr.len() != p * p {
        return Err(Error::SizeMismatch {
            left: corr.len(),
            right: p * p,
        });
    }
    for i in 0..p {
        for j in 0..p {
            let c = corr[i * p + j];
            if c.is_nan() || !(-1.0 - TOL..=1.0 + TOL).contains(&c) {
                return Err(Error::InvalidEntry {
                    row: i,
                    col: j,
                    value: c,
                    reason: "correlation outside [-1, 1]",
                });
            }
            if (c - corr[j * p + i]).abs() > TOL {
                return Err(Error::Asymmetric { row: i, col: j });
            }
        }
        if (corr[i * p + i] - 1.0).abs() > TOL {
            return Err(Error::InvalidEntry {
                row: i,
                col: i,
                value: corr[i * p + i],
                reason: "diagonal must be 1",
            });
        }
    }
    let net = WeightedNetwork::from_fn(p, |i, j| {
        let c = corr[i * p + j].clamp(-1.0, 1.0);
        libm::sqrt(1.0 - c)
    })?;
    Ok(net.with_convention(Convention::Dissimilarity))
}

/// Outcome of [`check_metric`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricReport {
    pub nonnegativity: bool,
    pub identity: bool,
    pub symmetry: bool,
    pub triangle: bool,
    /// First `(i, j, k)` with `w_ij > w_ik + w_kj + tol`.
    pub violation: Option<(usize, usize, usize)>,
}

impl MetricReport {
    pub fn is_metric(&self) -> bool {
        self.nonnegativity && self.identity && self.symmetry && self.triangle
    }
}

/// Checks the four metric axioms on the weights, reading them as distances
/// (absent edges count as distance zero).
pub fn check_metric(net: &WeightedNetwork, tol: f64) -> MetricReport {
    let p = net.p();
    let w = net.to_dense();
    let mut report = MetricReport {
        nonnegativity: true,
        identity: true,
        symmetry: true,
        triangle: true,
        violation: None,
    };
    for i in 0..p {
        if w[i * p + i].abs() > tol {
            report.identity = false;
        }
        for j in 0..p {
            if w[i * p + j] < -tol {
                report.nonnegativity = false;
            }
            if (w[i * p + j] - w[j * p + i]).abs() > tol {
                report.symmetry = false;
            }
        }
    }
    'outer: for i in 0..p {
        for j in (i + 1)..p {
            for k in 0..p {
                if k == i || k == j {
                    continue;
                }
                if w[i * p + j] > w[i * p + k] + w[k * p + j] + tol {
                    report.triangle = false;
                    report.violation = Some((i, j, k));
                    break 'outer;
                }
            }
        }
    }
    report
}

/// Thresholded 0/1 network.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryNetwork {
    p: usize,
    adjacency: Vec<u8>,
    epsilon: f64,
    mode: ThresholdMode,
}

impl BinaryNetwork {
    /// Builds a binary network from an explicit symmetric 0/1 array.
    pub fn from_adjacency(p: usize, adjacency: &[u8]) -> Result<Self> {
        if adjacency.len() != p * p {
            return Err(Error::SizeMismatch {
                left: adjacency.len(),
                right: p * p,
            });
        }
        for i in 0..p {
            for j in 0..p {
                let a = adjacency[i * p + j];
                if a > 1 || (i == j && a != 0) {
                    return Err(Error::InvalidEntry {
                        row: i,
                        col: j,
                        value: a as f64,
                        reason: "adjacency must be 0/1 with zero diagonal",
                    });
                }
                if a != adjacency[j * p + i] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        Ok(BinaryNetwork {
            p,
            adjacency: adjacency.to_vec(),
            epsilon: f64::NAN,
            mode: ThresholdMode::Above,
        })
    }

    pub fn from_edges(p: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![0u8; p * p];
        for &(i, j) in edges {
            if i >= p || j >= p || i == j {
                return Err(Error::Invalid(alloc::format!("invalid edge ({i}, {j})")));
            }
            adjacency[i * p + j] = 1;
            adjacency[j * p + i] = 1;
        }
        Ok(BinaryNetwork {
            p,
            adjacency,
            epsilon: f64::NAN,
            mode: ThresholdMode::Above,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn mode(&self) -> ThresholdMode {
        self.mode
    }

    pub fn adjacency(&self) -> &[u8] {
        &self.adjacency
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.p + j] == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.p {
            for j in (i + 1)..self.p {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().filter(|&&a| a == 1).count() / 2
    }
}

/// Thresholds with the network's own convention.
pub fn threshold(net: &WeightedNetwork, eps: f64) -> BinaryNetwork {
    threshold_with(net, eps, net.convention().mode())
}

/// Keeps the edges whose weight passes `mode` at `eps`.
pub fn threshold_with(net: &WeightedNetwork, eps: f64, mode: ThresholdMode) -> BinaryNetwork {
    let p = net.p();
    let mut adjacency = vec![0u8; p * p];
    for e in net.edges() {
        if mode.keeps(e.w, eps) {
            adjacency[e.i * p + e.j] = 1;
            adjacency[e.j * p + e.i] = 1;
        }
    }
    BinaryNetwork {
        p,
        adjacency,
        epsilon: eps,
        mode,
    }
}

/// Vertex × hyperedge incidence array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    m: usize,
    incidence: Vec<u8>,
}

impl Hypergraph {
    /// `incidence` is row-major `n × m`; columns are hyperedges.
    pub fn new(n: usize, m: usize, incidence: &[u8]) -> Result<Self> {
        if incidence.len() != n * m {
            return Err(Error::SizeMismatch {
                left: incidence.len(),
                right: n * m,
            });
        }
        if let Some(k) = incidence.iter().position(|&h| h > 1) {
            return Err(Error::InvalidEntry {
                row: k / m,
                col: k % m,
                value: incidence[k] as f64,
                reason: "incidence entries must be 0 or 1",
            });
        }
        for e in 0..m {
            if (0..n).all(|v| incidence[v * m + e] == 0) {
                return Err(Error::Invalid(alloc::format!("hyperedge {e} is empty")));
            }
        }
        Ok(Hypergraph {
            n,
            m,
            incidence: incidence.to_vec(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn hyperedge_count(&self) -> usize {
        self.m
    }

    pub fn incidence(&self) -> &[u8] {
        &self.incidence
    }

    /// `H Hᵀ`: entry `(i, j)` counts hyperedges holding both vertices; the
    /// diagonal holds vertex degrees.
    pub fn cooccurrence(&self) -> Vec<i64> {
        let (n, m) = (self.n, self.m);
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..m)
                    .map(|e| (self.incidence[i * m + e] * self.incidence[j * m + e]) as i64)
                    .sum();
            }
        }
        out
    }
}

/// `A = H Hᵀ − D`, where `D` is the diagonal degree matrix.
pub fn hypergraph_adjacency(hg: &Hypergraph) -> Vec<i64> {
    let n = hg.n;
    let mut a = hg.cooccurrence();
    for i in 0..n {
        a[i * n + i] = 0;
    }
    a
}

/// Distance function between points in a pairwise-distance space.
pub trait DistanceSpace {
    fn len(&self) -> usize;
    fn distance(&self, i: usize, j: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    #[default]
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl Metric {
    pub fn eval(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Metric::Euclidean => libm::sqrt(diffs.map(|d| d * d).sum()),
            Metric::Manhattan => diffs.sum(),
            Metric::Chebyshev => diffs.fold(0.0, f64::max),
        }
    }
}

/// `n` points in `dim`-dimensional space, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    metric: Metric,
}

impl PointCloud {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("point dimension must be positive".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::SizeMismatch {
                left: coords.len(),
                right: dim,
            });
        }
        if let Some(k) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidEntry {
                row: k / dim,
                col: k % dim,
                value: coords[k],
                reason: "non-finite coordinate",
            });
        }
        Ok(PointCloud {
            dim,
            coords,
            metric: Metric::Euclidean,
        })
    }

    pub fn from_points(points: &[&[f64]]) -> Result<Self> {
        let dim = points.first().map_or(1, |p| p.len());
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Invalid("points have differing dimension".into()));
        }
        Self::new(dim, points.iter().flat_map(|p| p.iter().copied()).collect())
    }

    pub fn with_metric(mut self, metric: Metric) -> Self {
        self.metric = metric;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn distance_to(&self, x: &[f64], i: usize) -> f64 {
        self.metric.eval(x, self.point(i))
    }
}

impl DistanceSpace for PointCloud {
    fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        self.metric.eval(self.point(i), self.point(j))
    }
}

/// The weights of a network read as a distance matrix.
impl DistanceSpace for WeightedNetwork {
    fn len(&self) -> usize {
        self.p
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        self.weight(i, j)
    }
}
