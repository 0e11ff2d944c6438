//! Exact feasibility of small linear systems by Fourier–Motzkin elimination.
//!
//! Constraints are `coeffs · x (>=|>|=) rhs` over the rationals. Strictness is
//! tracked through elimination, which is what lets the same routine answer
//! emptiness, full-dimensionality and recession-cone questions.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Ge,
    Gt,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }

    fn from_ints(coeffs: &[i64], relation: Relation, rhs: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), relation, rat(rhs))
    }

    /// `coeffs · x >= rhs`
    pub fn ge(coeffs: &[i64], rhs: i64) -> Self {
        Self::from_ints(coeffs, Relation::Ge, rhs)
    }

    /// `coeffs · x > rhs`
    pub fn gt(coeffs: &[i64], rhs: i64) -> Self {
        Self::from_ints(coeffs, Relation::Gt, rhs)
    }

    /// `coeffs · x <= rhs`
    pub fn le(coeffs: &[i64], rhs: i64) -> Self {
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        Self::from_ints(&neg, Relation::Ge, -rhs)
    }

    /// `coeffs · x < rhs`
    pub fn lt(coeffs: &[i64], rhs: i64) -> Self {
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        Self::from_ints(&neg, Relation::Gt, -rhs)
    }

    pub fn eq(coeffs: &[i64], rhs: i64) -> Self {
        Self::from_ints(coeffs, Relation::Eq, rhs)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    fn strict(&self) -> Self {
        let relation = match self.relation {
            Relation::Ge => Relation::Gt,
            r => r,
        };
        Self {
            relation,
            ..self.clone()
        }
    }

    fn homogeneous(&self) -> Self {
        let relation = match self.relation {
            Relation::Gt => Relation::Ge,
            r => r,
        };
        Self {
            coeffs: self.coeffs.clone(),
            relation,
            rhs: BigRational::zero(),
        }
    }
}

// One-sided inequality used during elimination: coeffs · x >= rhs (or > when strict).
#[derive(Clone, Debug)]
struct Half {
    coeffs: Vec<BigRational>,
    strict: bool,
    rhs: BigRational,
}

fn split(constraints: &[LinearConstraint]) -> Vec<Half> {
    let mut out = Vec::with_capacity(constraints.len());
    for c in constraints {
        match c.relation {
            Relation::Ge | Relation::Gt => out.push(Half {
                coeffs: c.coeffs.clone(),
                strict: c.relation == Relation::Gt,
                rhs: c.rhs.clone(),
            }),
            Relation::Eq => {
                out.push(Half {
                    coeffs: c.coeffs.clone(),
                    strict: false,
                    rhs: c.rhs.clone(),
                });
                out.push(Half {
                    coeffs: c.coeffs.iter().map(|v| -v).collect(),
                    strict: false,
                    rhs: -c.rhs.clone(),
                });
            }
        }
    }
    out
}

// Scales so the first nonzero coefficient has absolute value one, then keeps
// only the tightest inequality per direction. Returns None on a trivially
// violated constant constraint.
fn normalize(halves: Vec<Half>) -> Option<Vec<Half>> {
    let mut best: BTreeMap<Vec<BigRational>, (BigRational, bool)> = BTreeMap::new();
    for h in halves {
        let Some(lead) = h.coeffs.iter().find(|v| !v.is_zero()).cloned() else {
            let ok = if h.strict {
                BigRational::zero() > h.rhs
            } else {
                BigRational::zero() >= h.rhs
            };
            if !ok {
                return None;
            }
            continue;
        };
        let scale = lead.abs().recip();
        let coeffs: Vec<BigRational> = h.coeffs.iter().map(|v| v * &scale).collect();
        let rhs = &h.rhs * &scale;
        match best.get_mut(&coeffs) {
            Some(entry) => {
                if rhs > entry.0 {
                    *entry = (rhs, h.strict);
                } else if rhs == entry.0 {
                    entry.1 |= h.strict;
                }
            }
            None => {
                best.insert(coeffs, (rhs, h.strict));
            }
        }
    }
    Some(
        best.into_iter()
            .map(|(coeffs, (rhs, strict))| Half {
                coeffs,
                strict,
                rhs,
            })
            .collect(),
    )
}

/// Decides whether the system has a rational solution.
pub fn is_feasible(constraints: &[LinearConstraint]) -> bool {
    let dim = constraints.first().map_or(0, |c| c.dim());
    debug_assert!(constraints.iter().all(|c| c.dim() == dim));
    let Some(mut system) = normalize(split(constraints)) else {
        return false;
    };
    for var in (0..dim).rev() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for h in system {
            if h.coeffs[var].is_positive() {
                pos.push(h);
            } else if h.coeffs[var].is_negative() {
                neg.push(h);
            } else {
                rest.push(h);
            }
        }
        for p in &pos {
            for n in &neg {
                let a = p.coeffs[var].clone();
                let b = -n.coeffs[var].clone();
                let coeffs: Vec<BigRational> = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(x, y)| x * &b + y * &a)
                    .collect();
                rest.push(Half {
                    coeffs,
                    strict: p.strict || n.strict,
                    rhs: &p.rhs * &b + &n.rhs * &a,
                });
            }
        }
        system = match normalize(rest) {
            Some(s) => s,
            None => return false,
        };
    }
    true
}

/// True when the system has a point satisfying every inequality strictly.
/// Any equality constraint makes the set lower dimensional.
pub fn has_interior(constraints: &[LinearConstraint]) -> bool {
    if constraints.iter().any(|c| c.relation == Relation::Eq) {
        return false;
    }
    let strict: Vec<LinearConstraint> = constraints.iter().map(|c| c.strict()).collect();
    is_feasible(&strict)
}

/// Dimension of the solution set, or `None` when it is empty. An inequality
/// is an implicit equality when it cannot hold strictly anywhere on the set.
pub fn dimension(dim: usize, constraints: &[LinearConstraint]) -> Option<usize> {
    if !is_feasible(constraints) {
        return None;
    }
    let mut hull = Vec::new();
    for (k, c) in constraints.iter().enumerate() {
        let tight = match c.relation {
            Relation::Eq => true,
            Relation::Gt => false,
            Relation::Ge => {
                let mut probe = constraints.to_vec();
                probe[k] = c.strict();
                !is_feasible(&probe)
            }
        };
        if tight {
            hull.push(c.coeffs.clone());
        }
    }
    Some(dim - crate::linalg::rank(&hull))
}

/// True when the recession cone of the (assumed nonempty) system is `{0}`.
pub fn is_bounded(dim: usize, constraints: &[LinearConstraint]) -> bool {
    let cone: Vec<LinearConstraint> = constraints.iter().map(|c| c.homogeneous()).collect();
    for var in 0..dim {
        for sign in [1i64, -1] {
            let mut probe = cone.clone();
            let mut unit = vec![BigRational::zero(); dim];
            unit[var] = rat(sign);
            probe.push(LinearConstraint::new(
                unit,
                Relation::Ge,
                BigRational::one(),
            ));
            if is_feasible(&probe) {
                return false;
            }
        }
    }
    true
}
