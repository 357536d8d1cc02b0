//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toponet_core::WeightedNetwork;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph on `p` nodes: each pair present with probability `density`,
/// weights distinct with high probability.
pub fn random_network(rng: &mut ChaCha8Rng, p: usize, density: f64) -> WeightedNetwork {
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if rng.random::<f64>() < density {
                edges.push((i, j, rng.random_range(0.01..1.0)));
            }
        }
    }
    WeightedNetwork::from_edges(p, edges).unwrap()
}

/// Connected random graph: a random spanning tree plus extra edges.
pub fn random_connected(rng: &mut ChaCha8Rng, p: usize, density: f64) -> WeightedNetwork {
    let mut w = vec![0.0; p * p];
    for v in 1..p {
        let u = rng.random_range(0..v);
        let x = rng.random_range(0.01..1.0);
        w[u * p + v] = x;
        w[v * p + u] = x;
    }
    for i in 0..p {
        for j in i + 1..p {
            if w[i * p + j] == 0.0 && rng.random::<f64>() < density {
                let x = rng.random_range(0.01..1.0);
                w[i * p + j] = x;
                w[j * p + i] = x;
            }
        }
    }
    WeightedNetwork::from_dense(p, &w).unwrap()
}

/// Weights drawn from a small set so that ties occur.
pub fn random_tied_network(rng: &mut ChaCha8Rng, p: usize, density: f64) -> WeightedNetwork {
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if rng.random::<f64>() < density {
                edges.push((i, j, rng.random_range(1..5) as f64 / 4.0));
            }
        }
    }
    WeightedNetwork::from_edges(p, edges).unwrap()
}

/// Components of the graph keeping edges `w > eps`, by breadth-first
/// search.
#[allow(clippy::needless_range_loop)]
pub fn bfs_components(net: &WeightedNetwork, eps: f64) -> usize {
    let p = net.p();
    let mut seen = vec![false; p];
    let mut count = 0;
    for s in 0..p {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..p {
                if !seen[v] && v != u && net.weight(u, v) > eps {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    count
}

pub fn edges_above(net: &WeightedNetwork, eps: f64) -> usize {
    net.edges().filter(|e| e.w > eps).count()
}

/// Enumerates every partial injection from `0..m` into `0..n` as a vector
/// of `Option<target>`.
pub fn partial_injections(m: usize, n: usize, mut visit: impl FnMut(&[Option<usize>])) {
    fn rec(
        k: usize,
        m: usize,
        n: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Option<usize>>,
        visit: &mut dyn FnMut(&[Option<usize>]),
    ) {
        if k == m {
            visit(cur);
            return;
        }
        cur.push(None);
        rec(k + 1, m, n, used, cur, visit);
        cur.pop();
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(Some(j));
                rec(k + 1, m, n, used, cur, visit);
                cur.pop();
                used[j] = false;
            }
        }
    }
    rec(0, m, n, &mut vec![false; n], &mut Vec::new(), &mut visit);
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn gap(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

/// Costs of one augmented matching: matched pairs, then points of either
/// side sent to the diagonal.
fn matching_costs(a: &[(f64, f64)], b: &[(f64, f64)], inj: &[Option<usize>]) -> Vec<f64> {
    let mut costs = Vec::new();
    let mut hit = vec![false; b.len()];
    for (i, t) in inj.iter().enumerate() {
        match t {
            Some(j) => {
                hit[*j] = true;
                costs.push(linf(a[i], b[*j]));
            }
            None => costs.push(gap(a[i])),
        }
    }
    for (j, h) in hit.iter().enumerate() {
        if !h {
            costs.push(gap(b[j]));
        }
    }
    costs
}

pub fn brute_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let mut best = f64::INFINITY;
    partial_injections(a.len(), b.len(), |inj| {
        let c = matching_costs(a, b, inj).into_iter().fold(0.0, f64::max);
        best = best.min(c);
    });
    best
}

pub fn brute_wasserstein(a: &[(f64, f64)], b: &[(f64, f64)], q: f64) -> f64 {
    let mut best = f64::INFINITY;
    partial_injections(a.len(), b.len(), |inj| {
        let c: f64 = matching_costs(a, b, inj).into_iter().map(|x| x.powf(q)).sum();
        best = best.min(c);
    });
    best.powf(1.0 / q)
}

pub fn random_diagram(rng: &mut ChaCha8Rng, max_points: usize) -> Vec<(f64, f64)> {
    let k = rng.random_range(0..=max_points);
    (0..k)
        .map(|_| {
            let b: f64 = rng.random_range(0.0..1.0);
            (b, b + rng.random_range(0.0..1.0))
        })
        .collect()
}

/// All permutations of `0..n`.
pub fn permutations(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(k: usize, perm: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if k == perm.len() {
            visit(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, visit);
            perm.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    rec(0, &mut perm, &mut visit);
}

/// Births/deaths by replaying the threshold-above filtration one edge at a
/// time: an edge whose removal splits a component is a 0D birth, any other
/// removal kills a cycle.
pub fn replay_decomposition(net: &WeightedNetwork) -> (Vec<f64>, Vec<f64>) {
    let p = net.p();
    let mut edges = net.edge_list();
    // Remove from the smallest weight up; ties in reverse (i, j) order so
    // that the removal order mirrors a descending Kruskal insertion.
    edges.sort_by(|a, b| a.w.total_cmp(&b.w).then((b.i, b.j).cmp(&(a.i, a.j))));
    let mut present: Vec<bool> = vec![true; edges.len()];
    let comps = |present: &[bool]| -> usize {
        let mut parent: Vec<usize> = (0..p).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            r
        }
        let mut c = p;
        for (k, e) in edges.iter().enumerate() {
            if present[k] {
                let (a, b) = (find(&mut parent, e.i), find(&mut parent, e.j));
                if a != b {
                    parent[a] = b;
                    c -= 1;
                }
            }
        }
        c
    };
    let mut births = Vec::new();
    let mut deaths = Vec::new();
    for k in 0..edges.len() {
        let before = comps(&present);
        present[k] = false;
        if comps(&present) > before {
            births.push(edges[k].w);
        } else {
            deaths.push(edges[k].w);
        }
    }
    births.sort_by(f64::total_cmp);
    deaths.sort_by(f64::total_cmp);
    (births, deaths)
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix.
pub fn jacobi_eigen(p: usize, a: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut m = a.to_vec();
    let mut v = vec![0.0; p * p];
    for i in 0..p {
        v[i * p + i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..p)
            .flat_map(|i| (0..p).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * p + j] * m[i * p + j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for r in 0..p {
            for c in r + 1..p {
                let apq = m[r * p + c];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[c * p + c] - m[r * p + r]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..p {
                    let (mkr, mkc) = (m[k * p + r], m[k * p + c]);
                    m[k * p + r] = cs * mkr - sn * mkc;
                    m[k * p + c] = sn * mkr + cs * mkc;
                }
                for k in 0..p {
                    let (mrk, mck) = (m[r * p + k], m[c * p + k]);
                    m[r * p + k] = cs * mrk - sn * mck;
                    m[c * p + k] = sn * mrk + cs * mck;
                }
                for k in 0..p {
                    let (vkr, vkc) = (v[k * p + r], v[k * p + c]);
                    v[k * p + r] = cs * vkr - sn * vkc;
                    v[k * p + c] = sn * vkr + cs * vkc;
                }
            }
        }
    }
    ((0..p).map(|i| m[i * p + i]).collect(), v)
}

/// `f(A)` for symmetric `A` through the Jacobi decomposition.
pub fn jacobi_apply(p: usize, a: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
    let (vals, vecs) = jacobi_eigen(p, a);
    let mut out = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..p {
            out[i * p + j] = (0..p)
                .map(|k| vecs[i * p + k] * f(vals[k]) * vecs[j * p + k])
                .sum();
        }
    }
    out
}

/// `e^x` from its Taylor series after halving the argument until small.
pub fn taylor_exp(x: f64) -> f64 {
    let mut halvings = 0;
    let mut y = x;
    while y.abs() > 0.125 {
        y /= 2.0;
        halvings += 1;
    }
    let (mut term, mut sum, mut comp) = (1.0f64, 1.0f64, 0.0f64);
    for k in 1..40 {
        term *= y / k as f64;
        let t = term - comp;
        let s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    for _ in 0..halvings {
        sum *= sum;
    }
    sum
}

/// `2 Σ (−1)^{i−1} e^{−2 i² d²}` with Kahan summation and 400 terms.
pub fn ks_series_oracle(d: f64) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for i in 1..=400u32 {
        let i = i as f64;
        let sign = if i as u32 % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * 2.0 * taylor_exp(-2.0 * i * i * d * d);
        let t = term - comp;
        let s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    sum
}
