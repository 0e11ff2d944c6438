//! The tropical limit of the mirror superpotential: complement regions of the
//! corner locus of `max_alpha (<u, alpha> - nu(alpha))`.

mod skeleton;
mod svg;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{polytope_from_support, Fan, Inequality, SupportFunction};
use crate::polyhedron::{self, LinearConstraint};

pub use skeleton::{amoeba_skeleton_2d, Point2, Skeleton, SkeletonEdge, SkeletonRay};
pub use svg::export_svg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("tropical polynomial has no terms")]
    NoTerms,
    #[error("exponent {0:?} appears twice")]
    DuplicateExponent(Vec<i64>),
    #[error("the constant term (0, 0) is missing")]
    MissingConstant,
    #[error("exponent {0:?} has the wrong dimension")]
    DimensionMismatch(Vec<i64>),
    #[error("operation needs dimension 2, got {0}")]
    NotPlanar(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub alpha: Vec<i64>,
    pub nu: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalPolynomial {
    dim: usize,
    terms: Vec<Term>,
}

impl TropicalPolynomial {
    pub fn new(dim: usize, terms: Vec<(Vec<i64>, i64)>) -> Result<Self, TropicalError> {
        if terms.is_empty() {
            return Err(TropicalError::NoTerms);
        }
        let mut seen = BTreeSet::new();
        for (alpha, _) in &terms {
            if alpha.len() != dim {
                return Err(TropicalError::DimensionMismatch(alpha.clone()));
            }
            if !seen.insert(alpha.clone()) {
                return Err(TropicalError::DuplicateExponent(alpha.clone()));
            }
        }
        if !terms
            .iter()
            .any(|(a, nu)| a.iter().all(|&x| x == 0) && *nu == 0)
        {
            return Err(TropicalError::MissingConstant);
        }
        Ok(Self {
            dim,
            terms: terms
                .into_iter()
                .map(|(alpha, nu)| Term { alpha, nu })
                .collect(),
        })
    }

    /// The mirror of a fan: the constant term plus one term per ray with
    /// weight `psi`.
    pub fn from_fan(fan: &Fan, psi: &SupportFunction) -> Self {
        let mut terms = vec![(vec![0; fan.dim()], 0)];
        terms.extend(fan.rays().iter().cloned().zip(psi.values().iter().copied()));
        Self::new(fan.dim(), terms).expect("rays are distinct and nonzero")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `<u, alpha> - nu(alpha)` for term `i`.
    pub fn value(&self, i: usize, u: &[num_rational::BigRational]) -> num_rational::BigRational {
        let t = &self.terms[i];
        crate::linalg::dot_rat(&t.alpha, u) - crate::linalg::rat(t.nu)
    }
}

/// The closed set where term `alpha` dominates, as
/// `<u, alpha - beta> >= nu(alpha) - nu(beta)` for every other term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub term: usize,
    pub alpha: Vec<i64>,
    pub inequalities: Vec<(Vec<i64>, i64)>,
    pub full_dim: bool,
    /// Recession cone is trivial. Only meaningful together with `full_dim`.
    pub bounded: bool,
}

impl Region {
    pub fn constraints(&self) -> Vec<LinearConstraint> {
        self.inequalities
            .iter()
            .map(|(a, b)| LinearConstraint::ge(a, *b))
            .collect()
    }
}

pub fn regions(w: &TropicalPolynomial) -> Vec<Region> {
    (0..w.terms.len())
        .map(|i| {
            let a = &w.terms[i];
            let inequalities: Vec<(Vec<i64>, i64)> = w
                .terms
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, b)| {
                    (
                        a.alpha.iter().zip(&b.alpha).map(|(x, y)| x - y).collect(),
                        a.nu - b.nu,
                    )
                })
                .collect();
            let cons: Vec<LinearConstraint> = inequalities
                .iter()
                .map(|(c, r)| LinearConstraint::ge(c, *r))
                .collect();
            Region {
                term: i,
                alpha: a.alpha.clone(),
                full_dim: polyhedron::has_interior(&cons),
                bounded: polyhedron::is_bounded(w.dim, &cons),
                inequalities,
            }
        })
        .collect()
}

/// Full-dimensional bounded regions.
pub fn bounded_regions(w: &TropicalPolynomial) -> Vec<Region> {
    regions(w)
        .into_iter()
        .filter(|r| r.full_dim && r.bounded)
        .collect()
}

/// Every term dominates on an open set.
pub fn is_maximal_subdivision(w: &TropicalPolynomial) -> bool {
    regions(w).iter().all(|r| r.full_dim)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoReport {
    /// Exponents of the bounded full-dimensional regions.
    pub bounded: Vec<Vec<i64>>,
    pub extra_bounded_region: bool,
    /// `C_0` and `Q` have the same normalized inequality system.
    pub c0_matches_polytope: bool,
    pub warnings: Vec<String>,
}

impl FanoReport {
    pub fn verdict(&self) -> &'static str {
        if self.extra_bounded_region {
            "extra bounded region (not Fano)"
        } else {
            "Fano-consistent"
        }
    }
}

fn normalized(mut v: Vec<Inequality>) -> Vec<Inequality> {
    v = v.into_iter().map(|i| i.normalized()).collect();
    v.sort();
    v.dedup();
    v
}

pub fn fano_diagnostic(fan: &Fan, psi: &SupportFunction) -> FanoReport {
    let w = TropicalPolynomial::from_fan(fan, psi);
    let all = regions(&w);
    let mut warnings = Vec::new();
    for r in all.iter().filter(|r| !r.full_dim) {
        warnings.push(format!(
            "subdivision is not maximal: term {:?} never dominates",
            r.alpha
        ));
    }
    let bounded: Vec<&Region> = all.iter().filter(|r| r.full_dim && r.bounded).collect();
    let extra = bounded.iter().any(|r| r.term != 0);

    // C_0: <u, -beta> >= -nu(beta), i.e. <u, beta> <= nu(beta)
    let c0 = normalized(
        all[0]
            .inequalities
            .iter()
            .map(|(a, b)| Inequality {
                normal: a.iter().map(|x| -x).collect(),
                bound: -b,
            })
            .collect(),
    );
    let q = polytope_from_support(fan, psi);
    let c0_matches_polytope = c0 == q.normalized_inequalities();
    FanoReport {
        bounded: bounded.iter().map(|r| r.alpha.clone()).collect(),
        extra_bounded_region: extra,
        c0_matches_polytope,
        warnings,
    }
}
