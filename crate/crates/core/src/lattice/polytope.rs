use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::fan::{Fan, SupportFunction};
use super::LatticeError;
use crate::linalg::{
    ceil_i64, dot_i64, dot_rat, floor_i64, rat, solve, to_integer_vec, to_rational_rows,
};
use crate::polyhedron::{self, LinearConstraint};

/// `<u, normal> <= bound`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Inequality {
    pub normal: Vec<i64>,
    pub bound: i64,
}

impl Inequality {
    pub fn constraint(&self) -> LinearConstraint {
        LinearConstraint::le(&self.normal, self.bound)
    }

    pub fn holds_int(&self, u: &[i64]) -> bool {
        dot_i64(&self.normal, u) <= self.bound
    }

    pub fn holds(&self, u: &[BigRational]) -> bool {
        dot_rat(&self.normal, u) <= rat(self.bound)
    }

    pub fn is_tight(&self, u: &[BigRational]) -> bool {
        dot_rat(&self.normal, u) == rat(self.bound)
    }

    /// Divides normal and bound by the gcd of the normal's entries.
    pub fn normalized(&self) -> Inequality {
        let g = crate::linalg::gcd_all(&self.normal);
        if g <= 1 {
            return self.clone();
        }
        // floor keeps the integer points; for primitive normals g == 1 anyway
        Inequality {
            normal: self.normal.iter().map(|v| v / g).collect(),
            bound: self.bound.div_euclid(g),
        }
    }
}

/// An inequality-described polytope with its exact vertex set.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    dim: usize,
    inequalities: Vec<Inequality>,
    vertices: Vec<Vec<BigRational>>,
    feasible: bool,
    bounded: bool,
}

impl Serialize for Polytope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let verts: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        let mut st = s.serialize_struct("Polytope", 4)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("inequalities", &self.inequalities)?;
        st.serialize_field("vertices", &verts)?;
        st.serialize_field("feasible", &self.feasible)?;
        st.end()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

impl Polytope {
    /// Builds the polytope `{u : <u, normal_i> <= bound_i}`. Vertices are found
    /// by solving every nonsingular n-subset of the inequalities and keeping the
    /// feasible solutions; emptiness and boundedness are decided by exact
    /// elimination.
    pub fn from_inequalities(dim: usize, inequalities: Vec<Inequality>) -> Self {
        let constraints: Vec<LinearConstraint> =
            inequalities.iter().map(|i| i.constraint()).collect();
        let feasible = polyhedron::is_feasible(&constraints);
        let bounded = feasible && polyhedron::is_bounded(dim, &constraints);
        let mut vertices: Vec<Vec<BigRational>> = Vec::new();
        if feasible {
            let mut seen = BTreeSet::new();
            for subset in combinations(inequalities.len(), dim) {
                let rows: Vec<Vec<i64>> = subset
                    .iter()
                    .map(|&i| inequalities[i].normal.clone())
                    .collect();
                let rhs: Vec<BigRational> =
                    subset.iter().map(|&i| rat(inequalities[i].bound)).collect();
                let Some(x) = solve(&to_rational_rows(&rows), &rhs) else {
                    continue;
                };
                if inequalities.iter().all(|ineq| ineq.holds(&x)) && seen.insert(x.clone()) {
                    vertices.push(x);
                }
            }
        }
        Self {
            dim,
            inequalities,
            vertices,
            feasible,
            bounded,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        !self.feasible
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn contains_int(&self, u: &[i64]) -> bool {
        self.inequalities.iter().all(|i| i.holds_int(u))
    }

    /// Indices of the inequalities tight at `x`.
    pub fn active_set(&self, x: &[BigRational]) -> BTreeSet<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, ineq)| ineq.is_tight(x))
            .map(|(i, _)| i)
            .collect()
    }

    /// Every vertex is tight on exactly `dim` inequalities.
    pub fn is_simple(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| self.active_set(v).len() == self.dim)
    }

    pub fn integral_vertices(&self) -> Option<Vec<Vec<i64>>> {
        self.vertices.iter().map(|v| to_integer_vec(v)).collect()
    }

    pub fn has_interior(&self) -> bool {
        let c: Vec<LinearConstraint> = self.inequalities.iter().map(|i| i.constraint()).collect();
        polyhedron::has_interior(&c)
    }

    /// Inequalities scaled to primitive normals and sorted, for comparing
    /// two descriptions of the same polytope.
    pub fn normalized_inequalities(&self) -> Vec<Inequality> {
        let mut v: Vec<Inequality> = self.inequalities.iter().map(|i| i.normalized()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// `Q = {u : <u, v_rho> <= psi_rho}` for a smooth complete fan.
pub fn polytope_from_support(fan: &Fan, psi: &SupportFunction) -> Polytope {
    assert_eq!(
        fan.num_rays(),
        psi.len(),
        "support function length differs from ray count"
    );
    let inequalities = fan
        .rays()
        .iter()
        .zip(psi.values())
        .map(|(r, &c)| Inequality {
            normal: r.clone(),
            bound: c,
        })
        .collect();
    Polytope::from_inequalities(fan.dim(), inequalities)
}

/// Integer points of a bounded polytope, in lexicographic order.
pub fn lattice_points(p: &Polytope) -> Result<Vec<Vec<i64>>, LatticeError> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    if !p.is_bounded() {
        return Err(LatticeError::Unbounded);
    }
    let n = p.dim();
    let lo: Vec<i64> = (0..n)
        .map(|k| {
            p.vertices()
                .iter()
                .map(|v| ceil_i64(&v[k]))
                .min()
                .expect("bounded nonempty polytope has a vertex")
        })
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|k| {
            p.vertices()
                .iter()
                .map(|v| floor_i64(&v[k]))
                .max()
                .expect("bounded nonempty polytope has a vertex")
        })
        .collect();
    let mut out = Vec::new();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(out);
    }
    let mut cur = lo.clone();
    loop {
        if p.contains_int(&cur) {
            out.push(cur.clone());
        }
        // odometer, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                cur[k + 1..n].copy_from_slice(&lo[k + 1..n]);
                break;
            }
        }
    }
}
