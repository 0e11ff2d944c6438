//! Mirror-side combinatorics: the barycentric subdivision `Q_b`, relative
//! simplicial cochains with the Alexander–Whitney cup product, and the dual
//! cellular model with its intersection-and-collapse product.

mod cells;
mod local;
mod pi;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::cech::CupTable;
use crate::chains::{FreeComplex, SparseMatrix};
use crate::lattice::{BoundaryPattern, FaceId, FacePoset};

pub use cells::{cell_complex, cell_intersection_product, cell_to_simp, CellChain, CellCopy};
pub use local::{cup_square_check, local_model_check, trichotomy_check, LocalModelReport};
pub use pi::{pi_intersect_collapse, FullSimplex, OrderedComplex, PiModelCell, PiOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimpError {
    #[error("{0:?} is not a simplex of the complex")]
    MalformedFace(Vec<usize>),
    #[error("expected a cell on the {expected:?} copy")]
    WrongCopy { expected: CellCopy },
}

/// Simplices are strictly nested chains of faces, vertices in increasing
/// face order.
#[derive(Clone, Debug)]
pub struct BarycentricComplex {
    poset: FacePoset,
    simplices: Vec<Vec<Vec<FaceId>>>,
    index: Vec<HashMap<Vec<FaceId>, usize>>,
}

/// Enumerates `Q_b` level by level: a `k`-simplex is a `(k-1)`-simplex with
/// a strictly larger face appended.
pub fn barycentric(fp: &FacePoset) -> BarycentricComplex {
    let mut simplices: Vec<Vec<Vec<FaceId>>> = vec![(0..fp.len()).map(|f| vec![f]).collect()];
    loop {
        let prev = simplices.last().expect("vertex level exists");
        let mut next = Vec::new();
        for s in prev {
            let top = *s.last().expect("simplices are nonempty");
            for f in 0..fp.len() {
                if fp.lt(top, f) {
                    let mut t = s.clone();
                    t.push(f);
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        simplices.push(next);
    }
    let index = simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect()
        })
        .collect();
    BarycentricComplex {
        poset: fp.clone(),
        simplices,
        index,
    }
}

impl BarycentricComplex {
    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, k: usize) -> &[Vec<FaceId>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, s: &[FaceId]) -> bool {
        !s.is_empty()
            && self
                .index
                .get(s.len() - 1)
                .is_some_and(|m| m.contains_key(s))
    }

    /// `∂[v_0..v_k] = sum_i (-1)^i [v_0..^v_i..v_k]` as a matrix from
    /// `k`-simplices to `(k-1)`-simplices.
    pub fn boundary(&self, k: usize) -> SparseMatrix {
        assert!(k >= 1 && k <= self.dim());
        let mut trip = Vec::new();
        for (col, s) in self.simplices[k].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let row = self.index[k - 1][&face];
                trip.push((row, col, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        SparseMatrix::from_triplets(self.simplices[k - 1].len(), self.simplices[k].len(), trip)
    }
}

/// The full subcomplex of `Q_b` spanned by faces lying in some positive facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlusSubcomplex {
    pub members: Vec<bool>,
}

impl PlusSubcomplex {
    pub fn new(fp: &FacePoset, pattern: &BoundaryPattern) -> Self {
        let facets: Vec<FaceId> = pattern
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .filter_map(|(rho, _)| fp.find(&[rho].into_iter().collect()))
            .collect();
        let members = (0..fp.len())
            .map(|f| facets.iter().any(|&g| fp.le(f, g)))
            .collect();
        Self { members }
    }

    pub fn empty(fp: &FacePoset) -> Self {
        Self {
            members: vec![false; fp.len()],
        }
    }

    pub fn contains_vertex(&self, f: FaceId) -> bool {
        self.members[f]
    }

    /// Full subcomplex: a simplex is in `A` iff all of its vertices are.
    pub fn contains(&self, s: &[FaceId]) -> bool {
        s.iter().all(|&f| self.members[f])
    }
}

/// `C^*(Q_b, A)`: cochains vanishing on `A`, with the transpose of `∂`.
pub fn relative_cochain_complex(
    qb: &BarycentricComplex,
    a: &PlusSubcomplex,
) -> FreeComplex<Vec<FaceId>> {
    let basis: Vec<Vec<Vec<FaceId>>> = (0..=qb.dim())
        .map(|k| {
            qb.simplices(k)
                .iter()
                .filter(|s| !a.contains(s))
                .cloned()
                .collect()
        })
        .collect();
    let positions: Vec<HashMap<&Vec<FaceId>, usize>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let d = (0..qb.dim())
        .map(|k| {
            let bd = qb.boundary(k + 1);
            let trip: Vec<(usize, usize, i64)> = bd
                .triplets()
                .filter_map(|(face, cell, v)| {
                    let row = *positions[k + 1].get(&qb.simplices(k + 1)[cell])?;
                    let col = *positions[k].get(&qb.simplices(k)[face])?;
                    Some((row, col, v))
                })
                .collect();
            SparseMatrix::from_triplets(basis[k + 1].len(), basis[k].len(), trip)
        })
        .collect();
    FreeComplex::new(0, basis, d).expect("relative complex has consistent shapes")
}

/// A simplicial cochain of one degree on an ordered complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SimpCochain {
    pub degree: usize,
    pub coeffs: BTreeMap<Vec<usize>, i64>,
}

impl SimpCochain {
    pub fn new(degree: usize, coeffs: BTreeMap<Vec<usize>, i64>) -> Self {
        let mut c = Self { degree, coeffs };
        c.coeffs.retain(|_, v| *v != 0);
        c
    }

    pub fn basis(simplex: &[usize]) -> Self {
        Self::new(simplex.len() - 1, BTreeMap::from([(simplex.to_vec(), 1)]))
    }

    pub fn value(&self, s: &[usize]) -> i64 {
        self.coeffs.get(s).copied().unwrap_or(0)
    }

    /// Constant one on vertices.
    pub fn unit<C: OrderedComplex + ?Sized>(cx: &C) -> Self {
        Self::new(0, cx.simplices(0).into_iter().map(|s| (s, 1)).collect())
    }

    /// Restricts to simplices outside `a`.
    pub fn relative(&self, a: &PlusSubcomplex) -> Self {
        Self::new(
            self.degree,
            self.coeffs
                .iter()
                .filter(|(s, _)| !a.contains(s))
                .map(|(s, &v)| (s.clone(), v))
                .collect(),
        )
    }

    pub fn vanishes_on(&self, a: &PlusSubcomplex) -> bool {
        self.coeffs.keys().all(|s| !a.contains(s))
    }
}

/// `(δφ)(σ) = φ(∂σ)`, evaluated simplex by simplex, kept outside `a`.
pub fn simp_coboundary<C: OrderedComplex + ?Sized>(
    cx: &C,
    a: Option<&PlusSubcomplex>,
    phi: &SimpCochain,
) -> SimpCochain {
    let k = phi.degree + 1;
    let coeffs = cx
        .simplices(k)
        .into_iter()
        .filter(|s| a.is_none_or(|a| !a.contains(s)))
        .map(|s| {
            let v: i64 = (0..s.len())
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * phi.value(&f)
                })
                .sum();
            (s, v)
        })
        .collect();
    SimpCochain::new(k, coeffs)
}

/// `(φ ∪ ψ)[v_0..v_k] = φ[v_0..v_p] · ψ[v_p..v_k]` with `p = deg φ`.
pub fn simp_cup<C: OrderedComplex + ?Sized>(
    cx: &C,
    phi: &SimpCochain,
    psi: &SimpCochain,
) -> SimpCochain {
    let p = phi.degree;
    let k = p + psi.degree;
    let coeffs = cx
        .simplices(k)
        .into_iter()
        .map(|s| {
            let v = phi.value(&s[..=p]) * psi.value(&s[p..]);
            (s, v)
        })
        .collect();
    SimpCochain::new(k, coeffs)
}

/// Structure constants of the relative cup product on basis cochains:
/// `(front, back) -> [(simplex, coefficient)]`, found by splitting every
/// simplex of `Q_b` at every vertex.
pub fn simp_cup_table(
    qb: &BarycentricComplex,
    a12: &PlusSubcomplex,
    a01: &PlusSubcomplex,
) -> CupTable {
    let mut table = CupTable::new();
    for k in 0..=qb.dim() {
        for s in qb.simplices(k) {
            for i in 0..s.len() {
                let front = s[..=i].to_vec();
                let back = s[i..].to_vec();
                if !a12.contains(&front) && !a01.contains(&back) {
                    table.entry((front, back)).or_default().push((s.clone(), 1));
                }
            }
        }
    }
    table
}

impl OrderedComplex for BarycentricComplex {
    fn contains(&self, s: &[usize]) -> bool {
        BarycentricComplex::contains(self, s)
    }

    fn simplices(&self, k: usize) -> Vec<Vec<usize>> {
        BarycentricComplex::simplices(self, k).to_vec()
    }

    fn dim(&self) -> usize {
        BarycentricComplex::dim(self)
    }
}
