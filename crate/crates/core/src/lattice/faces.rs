use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::polytope::Polytope;
use super::LatticeError;
use crate::linalg::affine_dimension;

/// Position of a face in the poset's total order.
pub type FaceId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: FaceId,
    pub dim: usize,
    /// Inequalities tight on the whole face.
    pub active: BTreeSet<usize>,
    /// Indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
}

/// All faces of a polytope, stored in a total order that refines inclusion:
/// by dimension first, then by enumeration order.
#[derive(Clone, Debug, Serialize)]
pub struct FacePoset {
    dim: usize,
    faces: Vec<Face>,
    // below[a] has bit b set when face a is contained in face b (a != b)
    #[serde(skip)]
    below: Vec<Vec<bool>>,
    #[serde(skip)]
    active_masks: Vec<u64>,
    #[serde(skip)]
    by_active: BTreeMap<BTreeSet<usize>, FaceId>,
}

impl FacePoset {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    /// The polytope itself, always last in the total order.
    pub fn top(&self) -> FaceId {
        self.faces.len() - 1
    }

    pub fn find(&self, active: &BTreeSet<usize>) -> Option<FaceId> {
        self.by_active.get(active).copied()
    }

    /// Strict containment `a ⊊ b`.
    pub fn lt(&self, a: FaceId, b: FaceId) -> bool {
        self.below[a][b]
    }

    pub fn le(&self, a: FaceId, b: FaceId) -> bool {
        a == b || self.below[a][b]
    }

    /// Bitmask of the facets (inequality indices) tight on face `id`.
    pub fn active_mask(&self, id: FaceId) -> u64 {
        self.active_masks[id]
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    /// Counts of faces by dimension, index = dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim + 1];
        for f in &self.faces {
            out[f.dim] += 1;
        }
        out
    }

    /// Every strictly nested chain of faces, grouped by length, each chain
    /// listed in increasing order.
    pub fn chains(&self) -> Vec<Vec<Vec<FaceId>>> {
        let mut by_len: Vec<Vec<Vec<FaceId>>> = vec![Vec::new(); self.dim + 1];
        let mut stack: Vec<Vec<FaceId>> = (0..self.len()).map(|f| vec![f]).collect();
        stack.reverse();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains are nonempty");
            for next in (last + 1..self.len()).rev() {
                if self.lt(last, next) {
                    let mut c = chain.clone();
                    c.push(next);
                    stack.push(c);
                }
            }
            by_len[chain.len() - 1].push(chain);
        }
        for group in &mut by_len {
            group.sort();
        }
        by_len
    }
}

/// Enumerates faces as the distinct intersections of vertex active sets.
pub fn face_poset(p: &Polytope) -> Result<FacePoset, LatticeError> {
    if p.is_empty() || p.vertices().is_empty() {
        return Err(LatticeError::NoFacePoset);
    }
    if p.inequalities().len() > 64 {
        return Err(LatticeError::Malformed("more than 64 facets".into()));
    }
    let vertex_sets: Vec<BTreeSet<usize>> = p.vertices().iter().map(|v| p.active_set(v)).collect();

    // Closure under intersection, recording first-seen order.
    let mut order: Vec<BTreeSet<usize>> = Vec::new();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for s in &vertex_sets {
        if seen.insert(s.clone()) {
            order.push(s.clone());
        }
    }
    let mut i = 0;
    while i < order.len() {
        for j in 0..i {
            let meet: BTreeSet<usize> = order[i].intersection(&order[j]).copied().collect();
            if seen.insert(meet.clone()) {
                order.push(meet);
            }
        }
        i += 1;
    }

    let mut faces: Vec<Face> = order
        .into_iter()
        .map(|active| {
            let vertices: Vec<usize> = vertex_sets
                .iter()
                .enumerate()
                .filter(|(_, vs)| active.is_subset(vs))
                .map(|(k, _)| k)
                .collect();
            let pts: Vec<&Vec<_>> = vertices.iter().map(|&k| &p.vertices()[k]).collect();
            let dim = affine_dimension(&pts).expect("every face has a vertex");
            Face {
                id: 0,
                dim,
                active,
                vertices,
            }
        })
        .collect();
    // stable sort keeps enumeration order within a dimension
    faces.sort_by_key(|f| f.dim);
    for (k, f) in faces.iter_mut().enumerate() {
        f.id = k;
    }
    let n = faces.len();
    let mut below = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            below[a][b] = a != b && faces[b].active.is_subset(&faces[a].active);
        }
    }
    let active_masks = faces
        .iter()
        .map(|f| f.active.iter().fold(0u64, |m, &r| m | (1u64 << r)))
        .collect();
    let by_active = faces.iter().map(|f| (f.active.clone(), f.id)).collect();
    let dim = faces.last().map_or(0, |f| f.dim);
    Ok(FacePoset {
        dim,
        faces,
        below,
        active_masks,
        by_active,
    })
}
