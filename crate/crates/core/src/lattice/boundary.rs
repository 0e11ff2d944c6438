use serde::Serialize;

use super::faces::{FaceId, FacePoset};
use super::fan::{Fan, SupportFunction};
use crate::linalg::dot_i64;

/// Integer values of `H` on the facets of `Q`, one per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoundaryPattern {
    pub values: Vec<i64>,
}

impl BoundaryPattern {
    pub fn new(values: Vec<i64>) -> Self {
        Self { values }
    }

    pub fn is_positive(&self, facet: usize) -> bool {
        self.values[facet] > 0
    }

    pub fn signs(&self) -> Vec<bool> {
        self.values.iter().map(|&v| v > 0).collect()
    }

    /// Bit `rho` set when facet `rho` is positive.
    pub fn positive_mask(&self) -> u64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    pub fn all_nonpositive(&self) -> bool {
        self.values.iter().all(|&v| v <= 0)
    }

    /// Whether a face lies in the closed positive part of the boundary.
    pub fn contains_face(&self, poset: &FacePoset, face: FaceId) -> bool {
        poset.active_mask(face) & self.positive_mask() != 0
    }
}

impl std::ops::Add for &BoundaryPattern {
    type Output = BoundaryPattern;
    fn add(self, rhs: Self) -> BoundaryPattern {
        BoundaryPattern::new(
            self.values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// `H(L, u)_rho = <u, v_rho> - c_rho`; positive exactly where `chi^u` has a pole.
pub fn h_function(fan: &Fan, l: &SupportFunction, u: &[i64]) -> BoundaryPattern {
    assert_eq!(
        l.len(),
        fan.num_rays(),
        "bundle length differs from ray count"
    );
    assert_eq!(
        u.len(),
        fan.dim(),
        "weight dimension differs from fan dimension"
    );
    BoundaryPattern::new(
        fan.rays()
            .iter()
            .zip(l.values())
            .map(|(r, &c)| dot_i64(u, r) - c)
            .collect(),
    )
}
