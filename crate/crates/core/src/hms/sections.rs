use std::collections::BTreeSet;

use serde::Serialize;

use super::HmsError;
use crate::lattice::{FaceId, SupportFunction, ToricModel};
use crate::linalg::{dot_i64, gcd_all, rat, solve, to_integer_vec, to_rational_rows};

/// Integral lifts of a tropical Lagrangian section, one per vertex of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionData {
    /// Vertex faces of `Q`, in face order.
    pub vertices: Vec<FaceId>,
    pub lifts: Vec<Vec<i64>>,
}

impl SectionData {
    /// Adds the same integral vector to every lift.
    pub fn shifted(&self, m: &[i64]) -> Self {
        Self {
            vertices: self.vertices.clone(),
            lifts: self
                .lifts
                .iter()
                .map(|l| l.iter().zip(m).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }
}

fn vertex_faces(model: &ToricModel) -> Vec<FaceId> {
    model.poset.faces_of_dim(0).map(|f| f.id).collect()
}

// Functional m with <m, v_rho> = c_rho on the rays tight at the vertex.
fn vertex_functional(model: &ToricModel, rays: &BTreeSet<usize>, l: &SupportFunction) -> Vec<i64> {
    let rows: Vec<Vec<i64>> = rays.iter().map(|&r| model.fan.ray(r).to_vec()).collect();
    let rhs: Vec<_> = rays.iter().map(|&r| rat(l.values()[r])).collect();
    let m = solve(&to_rational_rows(&rows), &rhs).expect("vertex cone is a basis");
    to_integer_vec(&m).expect("smooth cone gives an integral functional")
}

/// `m_v` = the linear function of `L` on the maximal cone dual to `v`.
pub fn bundle_to_sections(model: &ToricModel, l: &SupportFunction) -> SectionData {
    let vertices = vertex_faces(model);
    let lifts = vertices
        .iter()
        .map(|&v| vertex_functional(model, &model.poset.face(v).active, l))
        .collect();
    SectionData { vertices, lifts }
}

/// Primitive direction of the edge of `Q` between two vertices.
fn edge_tangent(model: &ToricModel, edge: FaceId) -> (FaceId, FaceId, Vec<i64>) {
    let face = model.poset.face(edge);
    let ends: Vec<FaceId> = model
        .poset
        .faces_of_dim(0)
        .filter(|v| model.poset.lt(v.id, edge))
        .map(|v| v.id)
        .collect();
    assert_eq!(ends.len(), 2, "edge {edge} has {} endpoints", ends.len());
    let p = &model.polytope.vertices()[model.poset.face(ends[0]).vertices[0]];
    let q = &model.polytope.vertices()[model.poset.face(ends[1]).vertices[0]];
    let diff: Vec<_> = q.iter().zip(p).map(|(a, b)| a - b).collect();
    let diff = to_integer_vec(&diff).expect("vertices of Q are integral");
    let g = gcd_all(&diff);
    debug_assert!(g > 0 && face.dim == 1);
    (ends[0], ends[1], diff.iter().map(|x| x / g).collect())
}

/// Checks edge compatibility and reconstructs `c_rho = <m_v, v_rho>`.
pub fn sections_to_bundle(
    model: &ToricModel,
    s: &SectionData,
) -> Result<SupportFunction, HmsError> {
    let vertices = vertex_faces(model);
    if s.vertices != vertices || s.lifts.iter().any(|l| l.len() != model.dim()) {
        return Err(HmsError::Shape);
    }
    let lift = |v: FaceId| &s.lifts[vertices.iter().position(|&x| x == v).expect("known vertex")];
    for e in model.poset.faces_of_dim(1) {
        let (a, b, t) = edge_tangent(model, e.id);
        let diff: Vec<i64> = lift(a).iter().zip(lift(b)).map(|(x, y)| x - y).collect();
        // diff = k * t for some integer k
        let k = t
            .iter()
            .zip(&diff)
            .find(|(ti, _)| **ti != 0)
            .map(|(ti, di)| di / ti)
            .unwrap_or(0);
        let ok = diff.iter().zip(&t).all(|(d, ti)| *d == k * ti);
        if !ok {
            return Err(HmsError::IncompatibleEdge {
                edge: e.id,
                from: a,
                to: b,
            });
        }
    }
    let mut c: Vec<Option<i64>> = vec![None; model.num_rays()];
    for &v in &vertices {
        for &r in &model.poset.face(v).active {
            let val = dot_i64(lift(v), model.fan.ray(r));
            match c[r] {
                None => c[r] = Some(val),
                Some(prev) if prev != val => return Err(HmsError::InconsistentRay(r)),
                Some(_) => {}
            }
        }
    }
    let values = c
        .into_iter()
        .map(|x| x.ok_or(HmsError::Shape))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SupportFunction::new(values))
}

/// The integral `m` with `b - a = <m, v_rho>` on every ray, if there is one.
pub fn linear_shift_between(
    model: &ToricModel,
    a: &SupportFunction,
    b: &SupportFunction,
) -> Option<Vec<i64>> {
    let diff = b - a;
    let cone: BTreeSet<usize> = model.fan.max_cones()[0].iter().copied().collect();
    let m = vertex_functional(model, &cone, &diff);
    (0..model.num_rays())
        .all(|r| dot_i64(&m, model.fan.ray(r)) == diff.values()[r])
        .then_some(m)
}
