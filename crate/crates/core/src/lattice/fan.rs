use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::LatticeError;
use crate::linalg::{det, dot_rat, gcd_all, rat, solve, to_integer_vec, to_rational_rows};

/// An integral fan given by primitive rays and its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

/// One integer per ray. Encodes a support function, a torus-invariant divisor
/// `sum c_rho D_rho`, or tropical weights, depending on context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupportFunction(pub Vec<i64>);

impl SupportFunction {
    pub fn new(values: Vec<i64>) -> Self {
        Self(values)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Add for &SupportFunction {
    type Output = SupportFunction;
    fn add(self, rhs: Self) -> SupportFunction {
        assert_eq!(
            self.len(),
            rhs.len(),
            "support functions over different fans"
        );
        SupportFunction(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &SupportFunction {
    type Output = SupportFunction;
    fn sub(self, rhs: Self) -> SupportFunction {
        assert_eq!(
            self.len(),
            rhs.len(),
            "support functions over different fans"
        );
        SupportFunction(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &SupportFunction {
    type Output = SupportFunction;
    fn neg(self) -> SupportFunction {
        SupportFunction(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanDiagnostics {
    pub primitive: bool,
    pub smooth: bool,
    pub complete: bool,
    pub strictly_convex: bool,
}

impl FanDiagnostics {
    pub fn all(&self) -> bool {
        self.primitive && self.smooth && self.complete && self.strictly_convex
    }
}

/// A wall together with the two maximal cones on either side and the ray of
/// each cone opposite the wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub rays: Vec<usize>,
    pub cones: Vec<(usize, usize)>,
}

impl Fan {
    /// Structural checks only: ray dimensions and cone indices.
    pub fn new(
        dim: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::Malformed(
                "fan dimension must be positive".into(),
            ));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(LatticeError::Malformed(format!(
                    "ray {i} has {} coordinates, expected {dim}",
                    r.len()
                )));
            }
            if r.iter().all(|&v| v == 0) {
                return Err(LatticeError::Malformed(format!("ray {i} is zero")));
            }
        }
        for (c, cone) in max_cones.iter().enumerate() {
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != cone.len() {
                return Err(LatticeError::Malformed(format!("cone {c} repeats a ray")));
            }
            if let Some(bad) = cone.iter().find(|&&i| i >= rays.len()) {
                return Err(LatticeError::Malformed(format!(
                    "cone {c} references ray {bad}, but there are only {} rays",
                    rays.len()
                )));
            }
        }
        let max_cones = max_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Ok(Self {
            dim,
            rays,
            max_cones,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    fn check_cone_sizes(&self) -> Result<(), LatticeError> {
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.len() != self.dim {
                return Err(LatticeError::MalformedCone {
                    cone: c,
                    rays: cone.len(),
                    dim: self.dim,
                });
            }
        }
        Ok(())
    }

    /// True when `rays` is contained in some maximal cone.
    pub fn is_cone(&self, rays: &BTreeSet<usize>) -> bool {
        self.max_cones
            .iter()
            .any(|c| rays.iter().all(|r| c.contains(r)))
    }

    /// The linear functional `m` with `<m, v_rho> = values[rho]` on the rays of
    /// maximal cone `cone`. `None` if the cone's rays are linearly dependent.
    pub fn cone_functional(
        &self,
        cone: usize,
        values: &SupportFunction,
    ) -> Option<Vec<BigRational>> {
        let rows: Vec<Vec<i64>> = self.max_cones[cone]
            .iter()
            .map(|&r| self.rays[r].clone())
            .collect();
        let rhs: Vec<BigRational> = self.max_cones[cone]
            .iter()
            .map(|&r| rat(values.0[r]))
            .collect();
        solve(&to_rational_rows(&rows), &rhs)
    }

    /// Integral version of [`Fan::cone_functional`], valid for smooth cones.
    pub fn cone_functional_int(&self, cone: usize, values: &SupportFunction) -> Option<Vec<i64>> {
        self.cone_functional(cone, values)
            .and_then(|m| to_integer_vec(&m))
    }

    /// Every (n-1)-subset of every maximal cone, with the cones containing it.
    pub fn walls(&self) -> Vec<Wall> {
        let mut map: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            for (skip, &opposite) in cone.iter().enumerate() {
                let wall: Vec<usize> = cone
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &r)| r)
                    .collect();
                map.entry(wall).or_default().push((c, opposite));
            }
        }
        map.into_iter()
            .map(|(rays, cones)| Wall { rays, cones })
            .collect()
    }

    // Sign of det(wall rays..., x): which side of the wall hyperplane x lies on.
    fn side(&self, wall: &[usize], x: &[i64]) -> i32 {
        let mut rows: Vec<Vec<i64>> = wall.iter().map(|&r| self.rays[r].clone()).collect();
        rows.push(x.to_vec());
        let d = det(&rows);
        if d.is_positive() {
            1
        } else if d.is_negative() {
            -1
        } else {
            0
        }
    }

    fn is_complete(&self) -> bool {
        if self.max_cones.is_empty() {
            return false;
        }
        let walls = self.walls();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.max_cones.len()];
        for w in &walls {
            if w.cones.len() != 2 {
                return false;
            }
            let (a, ra) = w.cones[0];
            let (b, rb) = w.cones[1];
            let sa = self.side(&w.rays, &self.rays[ra]);
            let sb = self.side(&w.rays, &self.rays[rb]);
            if sa == 0 || sb == 0 || sa == sb {
                return false;
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut seen = vec![false; self.max_cones.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &n in &adjacency[c] {
                if !seen[n] {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn is_strictly_convex(&self, psi: &SupportFunction) -> bool {
        for w in self.walls() {
            if w.cones.len() != 2 {
                return false;
            }
            for (here, there) in [(0, 1), (1, 0)] {
                let (cone, _) = w.cones[here];
                let (_, opposite) = w.cones[there];
                let Some(m) = self.cone_functional(cone, psi) else {
                    return false;
                };
                if dot_rat(&self.rays[opposite], &m) >= rat(psi.0[opposite]) {
                    return false;
                }
            }
        }
        true
    }

    /// Smoothness, completeness (wall pairing plus connectivity) and strict
    /// convexity of `psi`, checked wall by wall.
    pub fn validate(&self, psi: &SupportFunction) -> Result<FanDiagnostics, LatticeError> {
        self.check_cone_sizes()?;
        if psi.len() != self.rays.len() {
            return Err(LatticeError::LengthMismatch {
                expected: self.rays.len(),
                found: psi.len(),
            });
        }
        let primitive = self.rays.iter().all(|r| gcd_all(r) == 1);
        let smooth = self.max_cones.iter().all(|cone| {
            let rows: Vec<Vec<i64>> = cone.iter().map(|&r| self.rays[r].clone()).collect();
            det(&rows).abs().is_one()
        });
        let complete = self.is_complete();
        let strictly_convex = complete && self.is_strictly_convex(psi);
        Ok(FanDiagnostics {
            primitive,
            smooth,
            complete,
            strictly_convex,
        })
    }
}

/// Free-function form of [`Fan::validate`].
pub fn validate_fan(fan: &Fan, psi: &SupportFunction) -> Result<FanDiagnostics, LatticeError> {
    fan.validate(psi)
}
