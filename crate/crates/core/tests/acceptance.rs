//! One line per acceptance criterion; exits nonzero if any line is FAIL.

mod common;

use std::time::Instant;

use common::*;
use rand::Rng;
use toponet_core::classical::matrix_norm_distance;
use toponet_core::distances::{bottleneck, gh_distance, ks_distance, single_linkage_matrix, wasserstein};
use toponet_core::filtration::{betti_curves, graph_barcode};
use toponet_core::inference::{ks_pvalue, ks_series_term, KsMode};
use toponet_core::loss::{decompose, top_loss, topo_regression, RegressionProblem};
use toponet_core::simplicial::{
    betti_via_hodge, betti_via_rank, boundary_matrix, persistence, FilteredComplex, SimplicialComplex,
};
use toponet_core::summaries::{
    entropy, landscape, persistence_image, Barcode, ImageGrid, ImageNormalization, ImageWeight,
};
use toponet_core::{PersistenceDiagram, WeightedNetwork};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn boundary() -> Outcome {
    let t = Instant::now();
    let k = SimplicialComplex::from_simplices([
        &[1usize][..],
        &[2],
        &[3],
        &[4],
        &[5],
        &[1, 2],
        &[2, 3],
        &[3, 1],
        &[2, 4],
        &[4, 1],
        &[4, 5],
        &[1, 2, 3],
    ])
    .map_err(|e| e.to_string())?;
    let d1 = boundary_matrix(&k, 1).map_err(|e| e.to_string())?.matrix;
    let d2 = boundary_matrix(&k, 2).map_err(|e| e.to_string())?.matrix;
    let printed1 = [
        [-1, 0, 1, 0, 1, 0],
        [1, -1, 0, -1, 0, 0],
        [0, 1, -1, 0, 0, 0],
        [0, 0, 0, 1, -1, -1],
        [0, 0, 0, 0, 0, 1],
    ];
    for (r, row) in printed1.iter().enumerate() {
        check(d1.row(r) == row, format!("∂1 row {r} = {:?}", d1.row(r)))?;
    }
    check(d2.column(0) == vec![1, 1, 1, 0, 0, 0], "∂2 column differs")?;
    check(d1.mul(&d2).is_zero(), "∂1∂2 ≠ 0")?;
    for (dim, want) in [(0, 1), (1, 1)] {
        check(betti_via_rank(&k, dim) == want, format!("rank β{dim}"))?;
        check(betti_via_hodge(&k, dim) == want, format!("Hodge β{dim}"))?;
    }
    let ms = t.elapsed().as_secs_f64() * 1e3;
    check(ms < 1000.0, format!("took {ms:.1} ms"))?;
    Ok(format!("β0 = β1 = 1 by rank and Hodge, {ms:.2} ms"))
}

fn entropy_values() -> Outcome {
    let e = |ls: &[f64]| {
        let bc = Barcode::new(ls.iter().map(|&l| (0.0, l)).collect()).unwrap();
        entropy(&bc).unwrap()
    };
    let (e1, e2) = (e(&[1.0, 1.0, 1.0]), e(&[1.0, 2.0, 3.0]));
    let analytic2 = -[1.0f64, 2.0, 3.0].iter().map(|l| l / 6.0 * (l / 6.0).ln()).sum::<f64>();
    check((e1 - 3f64.ln()).abs() < 1e-3, format!("E(B1) = {e1}"))?;
    check((e2 - analytic2).abs() < 1e-3 && (e2 - 1.0114).abs() < 1e-3, format!("E(B2) = {e2}"))?;
    check(e1 > e2, "E(B1) ≤ E(B2)")?;
    Ok(format!("E(B1) = {e1:.4}, E(B2) = {e2:.4}"))
}

fn gh_degeneracy() -> Outcome {
    let cycle = WeightedNetwork::from_edges(3, [(0, 1, 0.2), (0, 2, 0.5), (1, 2, 0.6)]).unwrap();
    let tree = WeightedNetwork::from_edges(3, [(0, 1, 0.2), (0, 2, 0.5)]).unwrap();
    let printed = [0.0, 0.2, 0.5, 0.2, 0.0, 0.5, 0.5, 0.5, 0.0];
    for net in [&cycle, &tree] {
        check(single_linkage_matrix(net).as_slice() == printed, "SLM differs")?;
    }
    let d = gh_distance(&cycle, &tree).map_err(|e| e.to_string())?;
    check(d == 0.0, format!("D_GH = {d}"))?;
    Ok("printed SLM for both graphs, D_GH = 0".into())
}

fn euler_suite() -> Outcome {
    let mut r = rng(1001);
    let mut checks = 0usize;
    for _ in 0..200 {
        let p = r.random_range(2..=12);
        let density = r.random_range(0.0..0.8);
        let net = random_connected(&mut r, p, density);
        let q = net.edge_count();
        let (b0, b1) = betti_curves(&net);
        let mut probes: Vec<f64> = b0.breakpoints().to_vec();
        let mids: Vec<f64> = probes.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
        probes.extend(mids);
        probes.extend([-1.0, 2.0]);
        for &eps in &probes {
            let (x0, x1) = (b0.at(eps) as i64, b1.at(eps) as i64);
            let qe = edges_above(&net, eps) as i64;
            check(x0 - x1 == p as i64 - qe, format!("Euler fails at {eps}"))?;
            check(b0.at(eps) == bfs_components(&net, eps), format!("BFS disagrees at {eps}"))?;
            checks += 1;
        }
        // Each breakpoint removes one edge: either β0 rises by one or β1 drops by one.
        for (u, v) in b0.values().windows(2).zip(b1.values().windows(2)) {
            let up = u[1] == u[0] + 1 && v[1] == v[0];
            let down = u[1] == u[0] && v[1] + 1 == v[0];
            check(up || down, "step is not a unit step in exactly one curve")?;
        }
        let d = decompose(&net);
        let mut all: Vec<f64> = d.i0.iter().chain(&d.i1).copied().collect();
        all.sort_by(f64::total_cmp);
        let mut weights: Vec<f64> = net.edges().map(|e| e.w).collect();
        weights.sort_by(f64::total_cmp);
        check(all == weights, "I0 ⊎ I1 ≠ edge weights")?;
        check(d.i1.len() + p == q + 1, "|I1| ≠ q − p + 1")?;
    }
    Ok(format!("200 graphs, {checks} threshold probes"))
}

fn matching_oracles() -> Outcome {
    let mut r = rng(1002);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let (a, b) = (random_diagram(&mut r, 6), random_diagram(&mut r, 6));
        let (da, db) = (
            PersistenceDiagram::from_pairs(0, &a),
            PersistenceDiagram::from_pairs(0, &b),
        );
        worst = worst.max((bottleneck(&da, &db).unwrap() - brute_bottleneck(&a, &b)).abs());
        for q in [1.0, 2.0] {
            worst = worst.max((wasserstein(&da, &db, q).unwrap() - brute_wasserstein(&a, &b, q)).abs());
        }
    }
    for _ in 0..500 {
        let (g1, g2) = (small_network(&mut r), small_network(&mut r));
        worst = worst.max((top_loss(&g1, &g2) - brute_top_loss(&g1, &g2)).abs());
    }
    check(worst <= 1e-9, format!("max error {worst:e}"))?;
    Ok(format!("1000 instances, max error {worst:.1e}"))
}

fn small_network(r: &mut rand_chacha::ChaCha8Rng) -> WeightedNetwork {
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

fn brute_top_loss(g1: &WeightedNetwork, g2: &WeightedNetwork) -> f64 {
    let (d1, d2) = (decompose(g1), decompose(g2));
    let part = |a: &[f64], pa: f64, b: &[f64], pb: f64| {
        let n = a.len().max(b.len());
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        a.resize(n, pa);
        b.resize(n, pb);
        let mut best = f64::INFINITY;
        permutations(n, |perm| {
            best = best.min((0..n).map(|i| (a[i] - b[perm[i]]).powi(2)).sum());
        });
        best
    };
    let hi = |g: &WeightedNetwork| g.max_weight().unwrap_or(0.0);
    let lo = |g: &WeightedNetwork| g.min_weight().unwrap_or(0.0);
    part(&d1.i0, hi(g1), &d2.i0, hi(g2)) + part(&d1.i1, lo(g1), &d2.i1, lo(g2))
}

fn stability() -> Outcome {
    let mut r = rng(1003);
    for _ in 0..500 {
        let p = r.random_range(3..=10);
        let x = random_connected(&mut r, p, 0.5);
        let delta = r.random_range(0.0..0.1);
        let y = WeightedNetwork::from_edges(
            p,
            x.edges()
                .map(|e| (e.i, e.j, (e.w + r.random_range(-delta..=delta)).max(1e-6)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let level = 3.0;
        let px = graph_barcode(&x, Some(level)).unwrap().diagram(0).unwrap();
        let py = graph_barcode(&y, Some(level)).unwrap().diagram(0).unwrap();
        let db = bottleneck(&px, &py).unwrap();
        let sup = matrix_norm_distance(&x, &y, f64::INFINITY).unwrap();
        check(db <= sup + 1e-12, format!("D_B = {db} > {sup}"))?;
    }
    let mut worst_ks: f64 = 0.0;
    for _ in 0..100 {
        let x = random_connected(&mut r, 10, 0.5);
        let edges: Vec<_> = x.edges().map(|e| (e.i, e.j, e.w)).collect();
        let k = r.random_range(0..edges.len());
        let magnitude = r.random_range(1.0..5.0);
        let mut corrupted = edges.clone();
        corrupted[k].2 += magnitude;
        let y = WeightedNetwork::from_edges(10, corrupted).unwrap();
        let dinf = matrix_norm_distance(&x, &y, f64::INFINITY).unwrap();
        check((dinf - magnitude).abs() < 1e-12, format!("D_∞ = {dinf}, corruption {magnitude}"))?;
        let ks = ks_distance(&x, &y, 0).unwrap();
        check(ks <= 1.0, format!("D_KS = {ks}"))?;
        worst_ks = worst_ks.max(ks);
    }
    Ok(format!("500 perturbations; outlier D_KS ≤ {worst_ks}"))
}

fn exact_inference() -> Outcome {
    let p = ks_pvalue(8.0, 8, KsMode::Continuous).map_err(|e| e.to_string())?;
    let oracle = ks_series_oracle(2.0);
    check((p - 6.7093e-4).abs() <= 1e-7, format!("p = {p}"))?;
    check((p - oracle).abs() <= 1e-15, format!("oracle {oracle}"))?;
    let second = ks_series_term(2.0, 2).abs();
    check(second < 1e-13, format!("second term {second:e}"))?;
    let mut prev = f64::INFINITY;
    for k in 0..=400 {
        let v = ks_pvalue(k as f64 * 0.05, 8, KsMode::Continuous).unwrap();
        check(v <= prev, "p not monotone")?;
        prev = v;
    }
    Ok(format!("p(2) = {p:.6e}, second term {second:.2e}"))
}

fn reduction_cross_oracle() -> Outcome {
    let mut r = rng(1004);
    for _ in 0..100 {
        let p = r.random_range(2..=50);
        let density = r.random_range(0.05..0.5);
        let net = random_network(&mut r, p, density);
        let bc = graph_barcode(&net, None).unwrap();
        let mut items: Vec<(Vec<usize>, f64)> = (0..p).map(|v| (vec![v], -2.0)).collect();
        items.extend(net.edges().map(|e| (vec![e.i, e.j], -e.w)));
        let fc = FilteredComplex::from_simplices(items).map_err(|e| e.to_string())?;
        let d = persistence(&fc, 1);
        let mut deaths: Vec<f64> =
            d[0].points.iter().filter(|x| x.is_finite()).map(|x| -x.death).collect();
        let mut births: Vec<f64> = d[1].points.iter().map(|x| -x.birth).collect();
        deaths.sort_by(f64::total_cmp);
        births.sort_by(f64::total_cmp);
        check(deaths == bc.births0 && births == bc.deaths1, format!("p = {p} differs"))?;
    }
    Ok("100 graphs identical".into())
}

fn landscape_image() -> Outcome {
    let mut r = rng(1005);
    for _ in 0..200 {
        let bc = Barcode::new(random_diagram(&mut r, 8)).unwrap();
        for k in 0..50 {
            let eps = -0.1 + k as f64 * 0.05;
            let mut prev = f64::INFINITY;
            for level in 1..=bc.len() + 1 {
                let v = landscape(&bc, level, eps).unwrap();
                check(v <= prev, "landscape not ordered")?;
                prev = v;
            }
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let pts = random_diagram(&mut r, 8);
        if pts.is_empty() {
            continue;
        }
        let pd = PersistenceDiagram::from_pairs(0, &pts);
        let sigma = r.random_range(0.01..0.1);
        let grid = ImageGrid::covering(&pd, 6.0 * sigma, 40, 40).map_err(|e| e.to_string())?;
        let img = persistence_image(&pd, grid, sigma, ImageWeight::Uniform, ImageNormalization::UnitMass)
            .map_err(|e| e.to_string())?;
        worst = worst.max((img.total() - pts.len() as f64).abs());
    }
    check(worst <= 1e-3, format!("mass error {worst:e}"))?;
    Ok(format!("200 barcodes ordered, image mass error {worst:.1e}"))
}

fn regression() -> Outcome {
    let mut r = rng(1006);
    let p = 5;
    let observed: Vec<WeightedNetwork> = (0..4).map(|_| random_connected(&mut r, p, 0.8)).collect();
    let prior = WeightedNetwork::from_edges(p, (1..p).map(|v| (0, v, 2.0))).unwrap();
    let plain = topo_regression(&RegressionProblem::new(observed.clone(), prior.clone(), 0.0))
        .map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for i in 0..p {
        for j in i + 1..p {
            let mean = observed.iter().map(|g| g.weight(i, j)).sum::<f64>() / observed.len() as f64;
            worst = worst.max((plain.estimate.weight(i, j) - mean).abs());
        }
    }
    check(worst <= 1e-8, format!("λ = 0 off mean by {worst:e}"))?;
    let mut prob = RegressionProblem::new(observed, prior.clone(), 50.0);
    prob.max_iter = 2000;
    let pen = topo_regression(&prob).map_err(|e| e.to_string())?;
    check(pen.trace.windows(2).all(|w| w[1] <= w[0]), "trace increases")?;
    let (l0, l1) = (top_loss(&plain.estimate, &prior), top_loss(&pen.estimate, &prior));
    check(l1 < l0, format!("L_top {l1} ≥ {l0}"))?;
    Ok(format!("L_top to prior {l0:.4} → {l1:.4}"))
}

fn scale() -> Outcome {
    let mut r = rng(1007);
    let p = 1000;
    let mut dense = || {
        let w: Vec<f64> = (0..p * p).map(|_| r.random_range(0.0..1.0)).collect();
        WeightedNetwork::from_fn(p, |i, j| if i < j { w[i * p + j] } else { w[j * p + i] }).unwrap()
    };
    let (a, b) = (dense(), dense());
    let t = Instant::now();
    let (a0, _) = betti_curves(&a);
    let (b0, _) = betti_curves(&b);
    let ks0 = ks_distance(&a, &b, 0).unwrap();
    let ks1 = ks_distance(&a, &b, 1).unwrap();
    let secs = t.elapsed().as_secs_f64();
    check(a0.breakpoints().len() == p * (p - 1) / 2 && b0.breakpoints().len() == a0.breakpoints().len(), "breakpoints")?;
    check(secs < 10.0, format!("took {secs:.2} s"))?;
    Ok(format!("p = 1000 in {secs:.2} s (KS0 = {ks0}, KS1 = {ks1})"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("boundary reproduction", boundary),
        ("entropy values", entropy_values),
        ("GH degeneracy", gh_degeneracy),
        ("Euler/monotonicity suite", euler_suite),
        ("matching oracles", matching_oracles),
        ("stability spot-checks", stability),
        ("exact inference", exact_inference),
        ("persistence-reduction cross-oracle", reduction_cross_oracle),
        ("landscape/image properties", landscape_image),
        ("regression sanity", regression),
        ("scale smoke test", scale),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
