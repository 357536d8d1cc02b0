//! Persistence diagrams: multisets of (birth, death) pairs.

use alloc::vec::Vec;

/// A single (birth, death) pair. `death` may be `f64::INFINITY` for
/// classes that never die.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub birth: f64,
    pub death: f64,
}

impl PersistencePair {
    pub const fn new(birth: f64, death: f64) -> Self {
        PersistencePair { birth, death }
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    pub fn midpoint(&self) -> f64 {
        (self.death + self.birth) / 2.0
    }

    pub fn is_finite(&self) -> bool {
        self.birth.is_finite() && self.death.is_finite()
    }
}

impl From<(f64, f64)> for PersistencePair {
    fn from((birth, death): (f64, f64)) -> Self {
        PersistencePair { birth, death }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceDiagram {
    pub dim: usize,
    pub points: Vec<PersistencePair>,
}

impl PersistenceDiagram {
    pub fn new(dim: usize, points: Vec<PersistencePair>) -> Self {
        PersistenceDiagram { dim, points }
    }

    pub fn from_pairs(dim: usize, pairs: &[(f64, f64)]) -> Self {
        PersistenceDiagram {
            dim,
            points: pairs.iter().copied().map(PersistencePair::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.points.iter().all(PersistencePair::is_finite)
    }

    /// Replaces infinite deaths by `death_level`.
    pub fn truncated(&self, death_level: f64) -> Self {
        let points = self
            .points
            .iter()
            .map(|pt| {
                if pt.death.is_infinite() {
                    PersistencePair::new(pt.birth, death_level)
                } else {
                    *pt
                }
            })
            .collect();
        PersistenceDiagram::new(self.dim, points)
    }

    /// Drops pairs with zero persistence.
    pub fn without_diagonal(&self) -> Self {
        let points = self
            .points
            .iter()
            .filter(|pt| pt.death > pt.birth)
            .copied()
            .collect();
        PersistenceDiagram::new(self.dim, points)
    }

    /// Points ordered by (birth, death), for multiset comparisons.
    pub fn sorted(&self) -> Self {
        let mut points = self.points.clone();
        points.sort_by(|a, b| {
            a.birth
                .total_cmp(&b.birth)
                .then(a.death.total_cmp(&b.death))
        });
        PersistenceDiagram::new(self.dim, points)
    }

    pub fn essential_count(&self) -> usize {
        self.points.iter().filter(|pt| pt.death.is_infinite()).count()
    }
}
