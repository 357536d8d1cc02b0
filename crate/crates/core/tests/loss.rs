mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use toponet_core::loss::*;
use toponet_core::WeightedNetwork;

/// Minimum over all bijections of the padded lists, dimension by dimension.
fn brute_top_loss(g1: &WeightedNetwork, g2: &WeightedNetwork) -> f64 {
    let (d1, d2) = (decompose(g1), decompose(g2));
    let maxw = |g: &WeightedNetwork| g.max_weight().unwrap_or(0.0);
    let minw = |g: &WeightedNetwork| g.min_weight().unwrap_or(0.0);
    let part = |a: &[f64], pa: f64, b: &[f64], pb: f64| {
        let n = a.len().max(b.len());
        let mut a = a.to_vec();
        a.resize(n, pa);
        let mut b = b.to_vec();
        b.resize(n, pb);
        let mut best = f64::INFINITY;
        permutations(n, |perm| {
            let s: f64 = (0..n).map(|i| (a[i] - b[perm[i]]).powi(2)).sum();
            best = best.min(s);
        });
        best
    };
    part(&d1.i0, maxw(g1), &d2.i0, maxw(g2)) + part(&d1.i1, minw(g1), &d2.i1, minw(g2))
}

fn small_network(r: &mut rand_chacha::ChaCha8Rng) -> WeightedNetwork {
    // At most 7 edges.
    let p = r.random_range(2..=5);
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if edges.len() < 7 && r.random::<f64>() < 0.7 {
                edges.push((i, j, r.random_range(0.01..1.0)));
            }
        }
    }
    WeightedNetwork::from_edges(p, edges).unwrap()
}

#[test]
fn top_loss_matches_brute_force() {
    let mut r = rng(71);
    for _ in 0..500 {
        let (a, b) = (small_network(&mut r), small_network(&mut r));
        let got = top_loss(&a, &b);
        let want = brute_top_loss(&a, &b);
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
}

#[test]
fn decomposition_counts() {
    let mut r = rng(72);
    for _ in 0..100 {
        let net = random_network(&mut r, 9, 0.4);
        let d = decompose(&net);
        let q = net.edge_count();
        assert_eq!(d.i0.len() + d.i1.len(), q);
        assert_eq!(d.i1.len() + net.p(), q + d.components);
        for (k, &(i, j)) in d.i0_edges.iter().enumerate() {
            assert_eq!(net.weight(i, j), d.i0[k]);
        }
    }
}

#[test]
fn penalised_regression_moves_towards_prior() {
    let mut r = rng(73);
    let p = 5;
    let observed: Vec<WeightedNetwork> = (0..4).map(|_| random_connected(&mut r, p, 0.8)).collect();
    // A prior whose topology differs: a heavy star.
    let prior = WeightedNetwork::from_edges(p, (1..p).map(|v| (0, v, 2.0))).unwrap();
    let plain = topo_regression(&RegressionProblem::new(observed.clone(), prior.clone(), 0.0)).unwrap();
    let mut prob = RegressionProblem::new(observed.clone(), prior.clone(), 50.0);
    prob.max_iter = 2000;
    let pen = topo_regression(&prob).unwrap();
    assert!(pen.trace.windows(2).all(|w| w[1] <= w[0]));
    assert!(top_loss(&pen.estimate, &prior) < top_loss(&plain.estimate, &prior));
    let mean: f64 = observed.iter().map(|g| g.weight(0, 1)).sum::<f64>() / 4.0;
    assert!((plain.estimate.weight(0, 1) - mean).abs() < 1e-8);
}

proptest! {
    #[test]
    fn top_loss_symmetric_and_relabel_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_network(&mut r, 5, 0.7);
        let b = random_network(&mut r, 5, 0.7);
        prop_assert!((top_loss(&a, &b) - top_loss(&b, &a)).abs() < 1e-12);
        prop_assert_eq!(top_loss(&a, &a), 0.0);
        let perm = [3usize, 0, 4, 1, 2];
        let relabelled = WeightedNetwork::from_fn(5, |i, j| a.weight(perm[i], perm[j])).unwrap();
        prop_assert!((top_loss(&relabelled, &b) - top_loss(&a, &b)).abs() < 1e-12);
    }
}
