//! Vectorisable barcode summaries: accumulated persistence, persistence
//! entropy, landscapes and persistence images.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::PersistenceDiagram;
use crate::error::{Error, Result};

/// Finite intervals `(ξ, τ)` with `ξ <= τ`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Barcode {
    intervals: Vec<(f64, f64)>,
}

impl Barcode {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for (k, &(b, d)) in intervals.iter().enumerate() {
            if d.is_infinite() && b.is_finite() {
                return Err(Error::InfiniteDeath);
            }
            if !(b.is_finite() && d.is_finite()) {
                return Err(Error::InvalidEntry {
                    row: k,
                    col: 0,
                    value: if b.is_finite() { d } else { b },
                    reason: "interval endpoint is not finite",
                });
            }
            if b > d {
                return Err(Error::InvalidEntry {
                    row: k,
                    col: 1,
                    value: d,
                    reason: "death precedes birth",
                });
            }
        }
        Ok(Barcode { intervals })
    }

    /// Rejects diagrams with infinite deaths; truncate them first.
    pub fn from_diagram(pd: &PersistenceDiagram) -> Result<Self> {
        Self::new(pd.points.iter().map(|p| (p.birth, p.death)).collect())
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn lengths(&self) -> impl Iterator<Item = f64> + '_ {
        self.intervals.iter().map(|&(b, d)| d - b)
    }

    pub fn total_length(&self) -> f64 {
        self.lengths().sum()
    }
}

/// Accumulated persistence: total length of the bars whose centre is
/// `<= t`.
pub fn apf(bc: &Barcode, t: f64) -> f64 {
    bc.intervals
        .iter()
        .filter(|&&(b, d)| (b + d) / 2.0 <= t)
        .map(|&(b, d)| d - b)
        .sum()
}

/// Persistence entropy `−Σ p_i ln p_i` with `p_i = l_i / L`.
pub fn entropy(bc: &Barcode) -> Result<f64> {
    let total = bc.total_length();
    if total <= 0.0 {
        return Err(Error::Invalid("entropy needs a bar of positive length".into()));
    }
    Ok(-bc
        .lengths()
        .filter(|&l| l > 0.0)
        .map(|l| {
            let p = l / total;
            p * libm::log(p)
        })
        .sum::<f64>())
}

fn bump(b: f64, d: f64, eps: f64) -> f64 {
    (eps - b).min(d - eps).max(0.0)
}

/// `k`-th largest tent value at `eps` (`k >= 1`); zero when fewer than `k`
/// bars are alive.
pub fn landscape(bc: &Barcode, k: usize, eps: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::OutOfRange {
            name: "k",
            value: 0.0,
            expected: "at least 1",
        });
    }
    let mut h: Vec<f64> = bc
        .intervals
        .iter()
        .map(|&(b, d)| bump(b, d, eps))
        .filter(|&x| x > 0.0)
        .collect();
    if h.len() < k {
        return Ok(0.0);
    }
    h.sort_by(|a, b| b.total_cmp(a));
    Ok(h[k - 1])
}

pub fn landscape_curve(bc: &Barcode, k: usize, grid: &[f64]) -> Result<Vec<f64>> {
    grid.iter().map(|&e| landscape(bc, k, e)).collect()
}

/// Weight applied to each point before smoothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImageWeight {
    #[default]
    Uniform,
    /// `τ − ξ`.
    Linear,
    /// `1 − exp(−(τ − ξ))`.
    Exponential,
}

impl ImageWeight {
    pub fn eval(self, birth: f64, death: f64) -> f64 {
        match self {
            ImageWeight::Uniform => 1.0,
            ImageWeight::Linear => death - birth,
            ImageWeight::Exponential => 1.0 - libm::exp(-(death - birth)),
        }
    }
}

/// Scaling applied on top of the weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImageNormalization {
    /// Every point carries mass `w`.
    #[default]
    UnitMass,
    /// Every point carries mass `w / m`.
    Average,
}

/// Pixel grid in (birth, death) coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl ImageGrid {
    pub fn new(x: (f64, f64), y: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::Empty("image grid"));
        }
        for (lo, hi) in [x, y] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::OutOfRange {
                    name: "grid range",
                    value: hi - lo,
                    expected: "finite with lower < upper",
                });
            }
        }
        Ok(ImageGrid {
            x_min: x.0,
            x_max: x.1,
            y_min: y.0,
            y_max: y.1,
            nx,
            ny,
        })
    }

    /// A grid covering all points of `pd` with a margin of `margin`.
    pub fn covering(pd: &PersistenceDiagram, margin: f64, nx: usize, ny: usize) -> Result<Self> {
        if pd.is_empty() {
            return Err(Error::Empty("persistence diagram"));
        }
        let (mut x0, mut x1, mut y0, mut y1) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for p in &pd.points {
            x0 = x0.min(p.birth);
            x1 = x1.max(p.birth);
            y0 = y0.min(p.death);
            y1 = y1.max(p.death);
        }
        Self::new((x0 - margin, x1 + margin), (y0 - margin, y1 + margin), nx, ny)
    }

    fn edges(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..=n)
            .map(|k| {
                if k == n {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / n as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceImage {
    pub grid: ImageGrid,
    pub sigma: f64,
    pub weight: ImageWeight,
    pub normalization: ImageNormalization,
    /// `ny` rows of `nx` pixels; row `r` covers the `r`-th death band from
    /// `y_min` upwards and column `c` the `c`-th birth band from `x_min`.
    pub pixels: Vec<f64>,
}

impl PersistenceImage {
    pub fn pixel(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.grid.nx + col]
    }

    pub fn total(&self) -> f64 {
        self.pixels.iter().sum()
    }
}

fn cell_masses(edges: &[f64], mu: f64, sigma: f64) -> Vec<f64> {
    let s = sigma * core::f64::consts::SQRT_2;
    let cdf: Vec<f64> = edges.iter().map(|&e| libm::erf((e - mu) / s)).collect();
    cdf.windows(2).map(|w| 0.5 * (w[1] - w[0])).collect()
}

/// Integrates an isotropic Gaussian of bandwidth `sigma` around every point
/// exactly over each pixel.
pub fn persistence_image(
    pd: &PersistenceDiagram,
    grid: ImageGrid,
    sigma: f64,
    weight: ImageWeight,
    normalization: ImageNormalization,
) -> Result<PersistenceImage> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::OutOfRange {
            name: "sigma",
            value: sigma,
            expected: "positive and finite",
        });
    }
    if !pd.is_finite() {
        return Err(Error::InfiniteDeath);
    }
    let xs = ImageGrid::edges(grid.x_min, grid.x_max, grid.nx);
    let ys = ImageGrid::edges(grid.y_min, grid.y_max, grid.ny);
    let scale = match normalization {
        ImageNormalization::UnitMass => 1.0,
        ImageNormalization::Average if pd.is_empty() => 0.0,
        ImageNormalization::Average => 1.0 / pd.len() as f64,
    };
    let mut pixels = vec![0.0; grid.nx * grid.ny];
    for p in &pd.points {
        let w = scale * weight.eval(p.birth, p.death);
        if w == 0.0 {
            continue;
        }
        let fx = cell_masses(&xs, p.birth, sigma);
        let fy = cell_masses(&ys, p.death, sigma);
        for (r, &my) in fy.iter().enumerate() {
            if my == 0.0 {
                continue;
            }
            let row = &mut pixels[r * grid.nx..(r + 1) * grid.nx];
            for (px, &mx) in row.iter_mut().zip(&fx) {
                *px += w * mx * my;
            }
        }
    }
    Ok(PersistenceImage {
        grid,
        sigma,
        weight,
        normalization,
        pixels,
    })
}
