mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use toponet_core::distances::ks_distance;
use toponet_core::inference::*;
use toponet_core::WeightedNetwork;

#[test]
fn pvalue_matches_series_oracle() {
    for k in 0..200 {
        let d = 1.0 + k as f64 * 0.02;
        let got = ks_tail(d);
        let want = ks_series_oracle(d).clamp(0.0, 1.0);
        assert!((got - want).abs() < 1e-13, "d = {d}: {got} vs {want}");
    }
    // Below 1 the oracle needs the same alternating series with more terms.
    for k in 1..20 {
        let d = 0.3 + k as f64 * 0.035;
        assert!((ks_tail(d) - ks_series_oracle(d).clamp(0.0, 1.0)).abs() < 1e-12);
    }
    let p = ks_pvalue(8.0, 8, KsMode::Continuous).unwrap();
    assert!((p - ks_series_oracle(2.0)).abs() < 1e-15);
    assert!((p - 6.7093e-4).abs() < 1e-7);
}

#[test]
fn transposition_walk_reproduces_relabelling() {
    let mut r = rng(41);
    let values: Vec<f64> = (0..9).map(|_| r.random_range(0.0..1.0)).collect();
    let d = PairwiseDistances::from_fn(9, |i, j| (values[i] - values[j]).abs());
    let mut st = TranspositionState::new(&d, 4).unwrap();
    for _ in 0..200 {
        let x = r.random_range(0..4);
        let y = r.random_range(0..5);
        let s = st.swap(x, y).unwrap();
        let direct = d.between_group(st.group1(), st.group2());
        assert!((s - direct).abs() < 1e-12);
    }
}

fn k3(rng: &mut rand_chacha::ChaCha8Rng, lo: f64, hi: f64) -> WeightedNetwork {
    WeightedNetwork::from_edges(
        3,
        [
            (0, 1, rng.random_range(lo..hi)),
            (0, 2, rng.random_range(lo..hi)),
            (1, 2, rng.random_range(lo..hi)),
        ],
    )
    .unwrap()
}

#[test]
fn separated_groups_are_detected() {
    // K3 networks with heavy versus light edges: between-group KS distance is
    // 2, within-group at most 1.
    let mut r = rng(42);
    let mut nets: Vec<WeightedNetwork> = (0..6).map(|_| k3(&mut r, 0.8, 0.9)).collect();
    nets.extend((0..6).map(|_| k3(&mut r, 0.1, 0.2)));
    let d = PairwiseDistances::from_fn(12, |i, j| ks_distance(&nets[i], &nets[j], 0).unwrap());
    let res = permutation_test(&d, 6, 999, 5).unwrap();
    assert!(res.p_value <= 0.05, "p = {}", res.p_value);
}

#[test]
fn identical_groups_are_not_rejected() {
    let mut r = rng(43);
    let group: Vec<WeightedNetwork> = (0..6).map(|_| k3(&mut r, 0.1, 0.9)).collect();
    let nets: Vec<WeightedNetwork> = group.iter().chain(&group).cloned().collect();
    let d = PairwiseDistances::from_fn(12, |i, j| ks_distance(&nets[i], &nets[j], 0).unwrap());
    let res = permutation_test(&d, 6, 1000, 9).unwrap();
    assert!(res.p_value > 0.3, "p = {}", res.p_value);
    let again = permutation_test(&d, 6, 1000, 9).unwrap();
    assert_eq!(res.p_value, again.p_value);
}

#[test]
fn null_is_independent_of_evaluation_order() {
    let d = PairwiseDistances::from_fn(7, |i, j| ((i * 7 + j) % 5) as f64 + (i as f64 - j as f64).abs());
    let forward: Vec<f64> = (0..50).map(|k| permuted_statistic(&d, 3, 77, k)).collect();
    let backward: Vec<f64> = (0..50).rev().map(|k| permuted_statistic(&d, 3, 77, k)).collect();
    let mut backward = backward;
    backward.reverse();
    assert_eq!(forward, backward);
}

proptest! {
    #[test]
    fn pvalue_is_monotone(dq in 0.0f64..20.0, step in 0.0f64..2.0, q in 1u64..50) {
        let a = ks_pvalue(dq, q, KsMode::Continuous).unwrap();
        let b = ks_pvalue(dq + step, q, KsMode::Continuous).unwrap();
        prop_assert!(b <= a + 1e-15);
        prop_assert!((0.0..=1.0).contains(&a));
        let ai = ks_pvalue(dq, q, KsMode::Ceiling).unwrap();
        let bi = ks_pvalue(dq + step, q, KsMode::Ceiling).unwrap();
        prop_assert!(bi <= ai);
    }

    #[test]
    fn permutation_pvalue_in_unit_interval(seed in any::<u64>(), m in 1usize..5) {
        let mut r = rng(seed);
        let values: Vec<f64> = (0..6).map(|_| r.random_range(0.0..1.0)).collect();
        let d = PairwiseDistances::from_fn(6, |i, j| (values[i] - values[j]).abs());
        let res = permutation_test(&d, m, 50, seed).unwrap();
        prop_assert!(res.p_value > 0.0 && res.p_value <= 1.0);
    }
}
