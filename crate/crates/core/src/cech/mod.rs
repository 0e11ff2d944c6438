//! Čech model of the DG category of line bundles: weight-graded morphism
//! complexes on the face cover of the moment polytope, with the insertion
//! differential and concatenation cup product.

mod graded;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chains::{cohomology, CohomologyResult, FreeComplex, SparseMatrix};
use crate::lattice::{
    h_function, BoundaryPattern, FaceId, LatticeError, SupportFunction, ToricModel,
};

pub use graded::{euler_characteristic, graded_hom, ChamberRecord, GradedHom};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CechError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("bundle has {found} coefficients, the fan has {expected} rays")]
    BundleLength { expected: usize, found: usize },
    #[error("weight has dimension {found}, expected {expected}")]
    WeightLength { expected: usize, found: usize },
    #[error("cochains are not composable: the middle bundles differ")]
    NotComposable,
    #[error("chamber {pattern:?} carries cohomology but is unbounded")]
    Inconsistent { pattern: Vec<bool> },
}

/// Cup structure constants: `(front chain, back chain) -> [(product, coefficient)]`.
pub type CupTable = BTreeMap<(Vec<FaceId>, Vec<FaceId>), Vec<(Vec<FaceId>, i64)>>;

/// A strictly nested chain of faces, in increasing order. Degree = length - 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CechGenerator {
    pub chain: Vec<FaceId>,
}

impl CechGenerator {
    pub fn degree(&self) -> usize {
        self.chain.len() - 1
    }
}

/// Flips the sign of front insertions on cochains of one degree. Used only to
/// check that the axiom suites catch a broken differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignFault {
    pub degree: usize,
}

/// An element of `Hom(source, target)_weight`: integer coefficients on
/// admissible chains of a single degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCochain {
    pub source: SupportFunction,
    pub target: SupportFunction,
    pub weight: Vec<i64>,
    pub degree: usize,
    pub coeffs: BTreeMap<Vec<FaceId>, i64>,
}

impl HomCochain {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|&v| v == 0)
    }

    fn prune(mut self) -> Self {
        self.coeffs.retain(|_, v| *v != 0);
        self
    }

    /// `self + k * other`, both in the same Hom space and degree.
    pub fn add_scaled(&self, other: &HomCochain, k: i64) -> HomCochain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (c, v) in &other.coeffs {
            *out.coeffs.entry(c.clone()).or_insert(0) += k * v;
        }
        out.prune()
    }
}

/// The Čech side for one fan: all face chains of `Q`, grouped by degree.
#[derive(Clone, Debug)]
pub struct Cech {
    model: ToricModel,
    chains: Vec<Vec<Vec<FaceId>>>,
    index: Vec<HashMap<Vec<FaceId>, usize>>,
    fault: Option<SignFault>,
    cache: Arc<Mutex<HashMap<u64, CohomologyResult>>>,
}

impl Cech {
    pub fn new(model: ToricModel) -> Self {
        let chains = model.poset.chains();
        let index = chains
            .iter()
            .map(|g| g.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        Self {
            model,
            chains,
            index,
            fault: None,
            cache: Arc::default(),
        }
    }

    pub fn with_fault(mut self, fault: SignFault) -> Self {
        self.fault = Some(fault);
        self.cache = Arc::default();
        self
    }

    pub fn model(&self) -> &ToricModel {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    /// All chains of the given degree, admissible or not.
    pub fn chains(&self, degree: usize) -> &[Vec<FaceId>] {
        self.chains.get(degree).map_or(&[], |v| v.as_slice())
    }

    pub fn check_bundle(&self, l: &SupportFunction) -> Result<(), CechError> {
        if l.len() != self.model.num_rays() {
            return Err(CechError::BundleLength {
                expected: self.model.num_rays(),
                found: l.len(),
            });
        }
        Ok(())
    }

    fn check_weight(&self, u: &[i64]) -> Result<(), CechError> {
        if u.len() != self.dim() {
            return Err(CechError::WeightLength {
                expected: self.dim(),
                found: u.len(),
            });
        }
        Ok(())
    }

    /// `H(L1 - L0, u)`.
    pub fn pattern(
        &self,
        l0: &SupportFunction,
        l1: &SupportFunction,
        u: &[i64],
    ) -> Result<BoundaryPattern, CechError> {
        self.check_bundle(l0)?;
        self.check_bundle(l1)?;
        self.check_weight(u)?;
        Ok(h_function(&self.model.fan, &(l1 - l0), u))
    }

    /// A chain dies when every face lies in the positive boundary. Faces only
    /// grow along a chain, so that is decided by the last one.
    pub fn is_admissible(&self, chain: &[FaceId], positive_mask: u64) -> bool {
        chain
            .iter()
            .any(|&f| self.model.poset.active_mask(f) & positive_mask == 0)
    }

    pub fn generators(&self, positive_mask: u64) -> Vec<Vec<CechGenerator>> {
        self.chains
            .iter()
            .map(|g| {
                g.iter()
                    .filter(|c| self.is_admissible(c, positive_mask))
                    .map(|c| CechGenerator { chain: c.clone() })
                    .collect()
            })
            .collect()
    }

    // Every (position, face) that can be inserted into `chain` keeping it
    // strictly nested; position is the index of the new face.
    fn insertions<'a>(&'a self, chain: &'a [FaceId]) -> impl Iterator<Item = (usize, FaceId)> + 'a {
        let poset = &self.model.poset;
        (0..=chain.len()).flat_map(move |p| {
            (0..poset.len()).filter_map(move |f| {
                let after_prev = p == 0 || poset.lt(chain[p - 1], f);
                let before_next = p == chain.len() || poset.lt(f, chain[p]);
                (after_prev && before_next).then_some((p, f))
            })
        })
    }

    fn insertion_sign(&self, degree: usize, position: usize) -> i64 {
        let base = if position.is_multiple_of(2) { 1 } else { -1 };
        match self.fault {
            Some(SignFault { degree: d }) if d == degree && position == 0 => -base,
            _ => base,
        }
    }

    /// The Čech complex for a fixed positive-facet mask.
    pub fn complex_for_mask(&self, positive_mask: u64) -> FreeComplex<CechGenerator> {
        let basis = self.generators(positive_mask);
        let d = (0..basis.len().saturating_sub(1))
            .map(|k| {
                let target: HashMap<&[FaceId], usize> = basis[k + 1]
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (g.chain.as_slice(), i))
                    .collect();
                let mut trip = Vec::new();
                for (col, g) in basis[k].iter().enumerate() {
                    for (p, f) in self.insertions(&g.chain) {
                        let mut c = g.chain.clone();
                        c.insert(p, f);
                        // killed insertions drop out of the sheaf
                        if let Some(&row) = target.get(c.as_slice()) {
                            trip.push((row, col, self.insertion_sign(k, p)));
                        }
                    }
                }
                SparseMatrix::from_triplets(basis[k + 1].len(), basis[k].len(), trip)
            })
            .collect();
        FreeComplex::new(0, basis, d).expect("Čech differential has consistent shapes")
    }

    /// Cohomology of the complex for a mask, memoized.
    pub fn mask_cohomology(&self, positive_mask: u64) -> CohomologyResult {
        if let Some(r) = self.cache.lock().expect("cache lock").get(&positive_mask) {
            return r.clone();
        }
        let r = cohomology(&self.complex_for_mask(positive_mask));
        self.cache
            .lock()
            .expect("cache lock")
            .insert(positive_mask, r.clone());
        r
    }

    /// `Hom(L0, L1)_u` as a based cochain complex.
    pub fn cech_complex(
        &self,
        l0: &SupportFunction,
        l1: &SupportFunction,
        u: &[i64],
    ) -> Result<FreeComplex<CechGenerator>, CechError> {
        let h = self.pattern(l0, l1, u)?;
        Ok(self.complex_for_mask(h.positive_mask()))
    }

    fn mask(&self, c: &HomCochain) -> u64 {
        h_function(&self.model.fan, &(&c.target - &c.source), &c.weight).positive_mask()
    }

    /// The Čech differential applied to a cochain.
    pub fn differential(&self, c: &HomCochain) -> HomCochain {
        let mask = self.mask(c);
        let mut coeffs: BTreeMap<Vec<FaceId>, i64> = BTreeMap::new();
        for (chain, &v) in &c.coeffs {
            if v == 0 {
                continue;
            }
            for (p, f) in self.insertions(chain) {
                let mut next = chain.clone();
                next.insert(p, f);
                if self.is_admissible(&next, mask) {
                    *coeffs.entry(next).or_insert(0) += self.insertion_sign(c.degree, p) * v;
                }
            }
        }
        HomCochain {
            degree: c.degree + 1,
            coeffs,
            ..c.clone()
        }
        .prune()
    }

    /// Composition `phi ∘ psi` for `phi ∈ Hom(L1, L2)_{u'}` and
    /// `psi ∈ Hom(L0, L1)_u`. On generators: concatenate when the last face of
    /// `phi`'s chain is the first face of `psi`'s chain.
    pub fn cup(&self, phi: &HomCochain, psi: &HomCochain) -> Result<HomCochain, CechError> {
        if phi.source != psi.target {
            return Err(CechError::NotComposable);
        }
        let weight: Vec<i64> = phi
            .weight
            .iter()
            .zip(&psi.weight)
            .map(|(a, b)| a + b)
            .collect();
        let out_mask =
            h_function(&self.model.fan, &(&phi.target - &psi.source), &weight).positive_mask();
        let mut coeffs: BTreeMap<Vec<FaceId>, i64> = BTreeMap::new();
        for (a, &x) in &phi.coeffs {
            for (b, &y) in &psi.coeffs {
                if a.last() != b.first() || x == 0 || y == 0 {
                    continue;
                }
                let mut c = a.clone();
                c.extend_from_slice(&b[1..]);
                if self.is_admissible(&c, out_mask) {
                    *coeffs.entry(c).or_insert(0) += x * y;
                }
            }
        }
        Ok(HomCochain {
            source: psi.source.clone(),
            target: phi.target.clone(),
            weight,
            degree: phi.degree + psi.degree,
            coeffs,
        }
        .prune())
    }

    /// `e_L ∈ Hom(L, L)_0`: one on every single-face chain.
    pub fn unit(&self, l: &SupportFunction) -> HomCochain {
        HomCochain {
            source: l.clone(),
            target: l.clone(),
            weight: vec![0; self.dim()],
            degree: 0,
            coeffs: self.chains(0).iter().map(|c| (c.clone(), 1)).collect(),
        }
    }

    /// A basis vector of `Hom(L0, L1)_u`. `None` if the chain is killed.
    pub fn generator(
        &self,
        l0: &SupportFunction,
        l1: &SupportFunction,
        u: &[i64],
        chain: &[FaceId],
    ) -> Result<Option<HomCochain>, CechError> {
        let mask = self.pattern(l0, l1, u)?.positive_mask();
        if !self
            .index
            .get(chain.len().wrapping_sub(1))
            .is_some_and(|m| m.contains_key(chain))
            || !self.is_admissible(chain, mask)
        {
            return Ok(None);
        }
        Ok(Some(HomCochain {
            source: l0.clone(),
            target: l1.clone(),
            weight: u.to_vec(),
            degree: chain.len() - 1,
            coeffs: BTreeMap::from([(chain.to_vec(), 1)]),
        }))
    }

    /// A random cochain with coefficients in `-range..=range`.
    pub fn random_cochain<R: Rng>(
        &self,
        rng: &mut R,
        l0: &SupportFunction,
        l1: &SupportFunction,
        u: &[i64],
        degree: usize,
        range: i64,
    ) -> Result<HomCochain, CechError> {
        let mask = self.pattern(l0, l1, u)?.positive_mask();
        let coeffs = self
            .chains(degree)
            .iter()
            .filter(|c| self.is_admissible(c, mask))
            .map(|c| (c.clone(), rng.gen_range(-range..=range)))
            .collect();
        Ok(HomCochain {
            source: l0.clone(),
            target: l1.clone(),
            weight: u.to_vec(),
            degree,
            coeffs,
        }
        .prune())
    }

    /// Structure constants of the cup product between the generator bases for
    /// fixed masks: `(phi chain, psi chain) -> product chain`, coefficient one.
    pub fn cup_table(&self, mask12: u64, mask01: u64, mask02: u64) -> CupTable {
        let mut table = BTreeMap::new();
        let all: Vec<&Vec<FaceId>> = self.chains.iter().flatten().collect();
        for a in all.iter().filter(|c| self.is_admissible(c, mask12)) {
            for b in all.iter().filter(|c| self.is_admissible(c, mask01)) {
                if a.last() != b.first() {
                    continue;
                }
                let mut c = (*a).clone();
                c.extend_from_slice(&b[1..]);
                if self.is_admissible(&c, mask02) {
                    table.insert(((*a).clone(), (*b).clone()), vec![(c, 1)]);
                }
            }
        }
        table
    }
}
