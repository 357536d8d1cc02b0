use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complex::SimplicialComplex;
use super::filtered::FilteredComplex;
use super::rips::{check_rips_args, MAX_SIMPLICES};
use crate::error::{Error, Result};
use crate::network::{DistanceSpace, PointCloud};

/// Greedy maxmin landmarks with a seeded random first point.
pub fn maxmin_landmarks<S: DistanceSpace + ?Sized>(
    space: &S,
    count: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    let n = space.len();
    check_count(count, n)?;
    let first = ChaCha8Rng::seed_from_u64(seed).random_range(0..n);
    maxmin_landmarks_from(space, count, first)
}

/// Greedy maxmin landmarks starting from `first`. Ties go to the lowest
/// index.
pub fn maxmin_landmarks_from<S: DistanceSpace + ?Sized>(
    space: &S,
    count: usize,
    first: usize,
) -> Result<Vec<usize>> {
    let n = space.len();
    check_count(count, n)?;
    if first >= n {
        return Err(Error::OutOfRange {
            name: "first landmark",
            value: first as f64,
            expected: "a point index",
        });
    }
    let mut chosen = vec![first];
    let mut nearest: Vec<f64> = (0..n).map(|i| space.distance(first, i)).collect();
    nearest[first] = f64::NEG_INFINITY;
    while chosen.len() < count {
        let mut best = None;
        for (i, &d) in nearest.iter().enumerate() {
            if d == f64::NEG_INFINITY {
                continue;
            }
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((i, d));
            }
        }
        let (next, _) = best.expect("count <= n leaves a candidate");
        chosen.push(next);
        nearest[next] = f64::NEG_INFINITY;
        for (i, d) in nearest.iter_mut().enumerate() {
            if *d != f64::NEG_INFINITY {
                *d = d.min(space.distance(next, i));
            }
        }
    }
    Ok(chosen)
}

fn check_count(count: usize, n: usize) -> Result<()> {
    if count == 0 || count > n {
        return Err(Error::OutOfRange {
            name: "landmark count",
            value: count as f64,
            expected: "between 1 and the number of points",
        });
    }
    Ok(())
}

/// Witness filtration on the given landmarks with every point acting as a
/// witness. Landmarks enter at 0. A `k`-simplex `σ` with `k >= 1` enters at
/// the smallest `eps` for which all faces are present and some witness `w`
/// has `max_{v∈σ} d(w, v) <= eps + d_k(w)`, where `d_k(w)` is the distance
/// from `w` to its `(k+1)`-th closest landmark. Vertex labels are the
/// landmarks' point indices.
pub fn witness_filtration<S: DistanceSpace + ?Sized>(
    space: &S,
    landmarks: &[usize],
    max_dim: usize,
) -> Result<FilteredComplex> {
    let l = landmarks.len();
    if l == 0 {
        return Err(Error::Empty("landmark set"));
    }
    check_rips_args(l, max_dim)?;
    let n = space.len();
    if let Some(&bad) = landmarks.iter().find(|&&v| v >= n) {
        return Err(Error::OutOfRange {
            name: "landmark",
            value: bad as f64,
            expected: "a point index",
        });
    }
    // dist[w * l + a]: witness w to landmark position a.
    let dist: Vec<f64> = (0..n)
        .flat_map(|w| landmarks.iter().map(move |&v| (w, v)))
        .map(|(w, v)| space.distance(w, v))
        .collect();
    let ranked: Vec<Vec<f64>> = (0..n)
        .map(|w| {
            let mut d = dist[w * l..(w + 1) * l].to_vec();
            d.sort_by(f64::total_cmp);
            d
        })
        .collect();

    // Simplices as ascending landmark positions with their entry times.
    let mut levels: Vec<Vec<(Vec<usize>, f64)>> = vec![(0..l).map(|a| (vec![a], 0.0)).collect()];
    let mut total = l;
    for k in 1..=max_dim.min(l - 1) {
        let prev = &levels[k - 1];
        let lookup = |s: &[usize]| -> Option<f64> {
            prev.binary_search_by(|(t, _)| t.as_slice().cmp(s))
                .ok()
                .map(|i| prev[i].1)
        };
        let mut next = Vec::new();
        for (s, _) in prev {
            let last = *s.last().unwrap();
            'candidate: for a in last + 1..l {
                let mut cand = s.clone();
                cand.push(a);
                let mut face_time: f64 = 0.0;
                for skip in 0..cand.len() {
                    let face: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    match lookup(&face) {
                        Some(t) => face_time = face_time.max(t),
                        None => continue 'candidate,
                    }
                }
                let mut own = f64::INFINITY;
                for w in 0..n {
                    let reach = cand
                        .iter()
                        .map(|&a| dist[w * l + a])
                        .fold(0.0f64, f64::max);
                    own = own.min(reach - ranked[w][k]);
                }
                next.push((cand, face_time.max(own)));
                total += 1;
                if total > MAX_SIMPLICES {
                    return Err(Error::TooLarge {
                        what: "simplex count",
                        value: total,
                        limit: MAX_SIMPLICES,
                    });
                }
            }
        }
        levels.push(next);
    }

    let mut complex = SimplicialComplex::new();
    let mut times = Vec::with_capacity(levels.len());
    for level in levels {
        let mut ts = Vec::with_capacity(level.len());
        for (s, t) in level {
            let labels: Vec<usize> = s.iter().map(|&a| landmarks[a]).collect();
            complex.insert(&labels)?;
            ts.push(t);
        }
        times.push(ts);
    }
    FilteredComplex::new(complex, times)
}

/// Witness complex at scale `eps >= 0`.
pub fn witness_complex<S: DistanceSpace + ?Sized>(
    space: &S,
    landmarks: &[usize],
    eps: f64,
    max_dim: usize,
) -> Result<SimplicialComplex> {
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            expected: "nonnegative",
        });
    }
    Ok(witness_filtration(space, landmarks, max_dim)?.sublevel(eps))
}

/// Distance to measure: `((1/k) Σ ‖x − x_i‖^p)^{1/p}` over the `k` nearest
/// points of the cloud.
pub fn dtm(x: &[f64], cloud: &PointCloud, k: usize, p: f64) -> Result<f64> {
    let n = cloud.len();
    if k == 0 || k > n {
        return Err(Error::OutOfRange {
            name: "k",
            value: k as f64,
            expected: "between 1 and the number of points",
        });
    }
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            expected: "positive and finite",
        });
    }
    if x.len() != cloud.dim() {
        return Err(Error::SizeMismatch {
            left: x.len(),
            right: cloud.dim(),
        });
    }
    let mut d: Vec<f64> = (0..n).map(|i| cloud.distance_to(x, i)).collect();
    d.sort_by(f64::total_cmp);
    let mean = d[..k].iter().map(|&r| libm::pow(r, p)).sum::<f64>() / k as f64;
    Ok(libm::pow(mean, 1.0 / p))
}
