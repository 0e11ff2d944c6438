//! Free integer cochain complexes, Smith normal form cohomology, chain maps
//! and mapping cones.

mod complex;
mod matrix;
pub mod snf;

use serde::Serialize;
use thiserror::Error;

pub use complex::{cohomology, verify_complex, CohomologyResult, DegreeCohomology, FreeComplex};
pub use matrix::SparseMatrix;
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainsError {
    #[error("shape mismatch in degree {degree}: {detail}")]
    Shape { degree: i32, detail: String },
    #[error("d∘d is nonzero out of degree {degree}, column {column}")]
    NotSquareZero { degree: i32, column: usize },
    #[error("map does not commute with differentials in degree {degree}, column {column}")]
    NotChainMap { degree: i32, column: usize },
}

/// A degree-preserving map of cochain complexes. `maps[k]` acts on degree
/// `lo + k`, where `lo` is the smaller of the two complexes' lowest degrees.
#[derive(Clone, Debug)]
pub struct ChainMap<A, B> {
    pub source: FreeComplex<A>,
    pub target: FreeComplex<B>,
    lo: i32,
    maps: Vec<SparseMatrix>,
}

impl<A: Clone, B: Clone> ChainMap<A, B> {
    /// `component(k)` must be a `target.rank(k) x source.rank(k)` matrix.
    pub fn new(
        source: FreeComplex<A>,
        target: FreeComplex<B>,
        component: impl Fn(i32) -> SparseMatrix,
    ) -> Result<Self, ChainsError> {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let maps: Vec<SparseMatrix> = (lo..=hi).map(component).collect();
        for (k, m) in (lo..=hi).zip(&maps) {
            let want = (target.rank(k), source.rank(k));
            if m.shape() != want {
                return Err(ChainsError::Shape {
                    degree: k,
                    detail: format!("map component is {:?}, expected {:?}", m.shape(), want),
                });
            }
        }
        Ok(Self {
            source,
            target,
            lo,
            maps,
        })
    }

    pub fn component(&self, degree: i32) -> SparseMatrix {
        let hi = self.lo + self.maps.len() as i32 - 1;
        if degree < self.lo || degree > hi {
            SparseMatrix::zeros(self.target.rank(degree), self.source.rank(degree))
        } else {
            self.maps[(degree - self.lo) as usize].clone()
        }
    }

    /// Checks `f d = d f` in every degree.
    pub fn verify(&self) -> Result<(), ChainsError> {
        let lo = self.lo;
        let hi = self.lo + self.maps.len() as i32 - 1;
        for k in lo - 1..=hi {
            let left = self.component(k + 1).mul(&self.source.d(k));
            let right = self.target.d(k).mul(&self.component(k));
            let diff = SparseMatrix::from_triplets(
                left.rows(),
                left.cols(),
                left.triplets()
                    .chain(right.triplets().map(|(r, c, v)| (r, c, -v))),
            );
            if let Some((_, col, _)) = diff.first_nonzero() {
                return Err(ChainsError::NotChainMap {
                    degree: k,
                    column: col,
                });
            }
        }
        Ok(())
    }

    /// `C^k = A^{k+1} ⊕ B^k` with `d(a, b) = (-d a, f a + d b)`.
    pub fn mapping_cone(&self) -> FreeComplex<ConeLabel<A, B>> {
        let lo = self.source.lo().min(self.target.lo()) - 1;
        let hi = self.source.hi().max(self.target.hi());
        let basis: Vec<Vec<ConeLabel<A, B>>> = (lo..=hi)
            .map(|k| {
                self.source
                    .basis(k + 1)
                    .iter()
                    .cloned()
                    .map(ConeLabel::Source)
                    .chain(self.target.basis(k).iter().cloned().map(ConeLabel::Target))
                    .collect()
            })
            .collect();
        let d = (lo..hi)
            .map(|k| {
                let na = self.source.rank(k + 1);
                let nb = self.target.rank(k);
                let na2 = self.source.rank(k + 2);
                let nb2 = self.target.rank(k + 1);
                let da = self.source.d(k + 1);
                let f = self.component(k + 1);
                let db = self.target.d(k);
                let trip = da
                    .triplets()
                    .map(|(r, c, v)| (r, c, -v))
                    .chain(f.triplets().map(|(r, c, v)| (na2 + r, c, v)))
                    .chain(db.triplets().map(|(r, c, v)| (na2 + r, na + c, v)))
                    .collect::<Vec<_>>();
                SparseMatrix::from_triplets(na2 + nb2, na + nb, trip)
            })
            .collect();
        FreeComplex::new(lo, basis, d).expect("cone shapes are consistent")
    }
}

impl<A: Clone> ChainMap<A, A> {
    pub fn identity(c: FreeComplex<A>) -> Self {
        let cc = c.clone();
        ChainMap::new(c, cc.clone(), |k| SparseMatrix::identity(cc.rank(k)))
            .expect("identity has matching shapes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConeLabel<A, B> {
    Source(A),
    Target(B),
}

/// A chain map is a quasi-isomorphism iff its mapping cone is acyclic.
pub fn cone_acyclic<A: Clone, B: Clone>(f: &ChainMap<A, B>) -> Result<bool, ChainsError> {
    f.verify()?;
    let cone = f.mapping_cone();
    verify_complex(&cone)?;
    Ok(cohomology(&cone).is_zero())
}
