use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cech::{Cech, CechError};
use crate::lattice::{BoundaryPattern, FaceId, SupportFunction};
use crate::simp::{
    barycentric, relative_cochain_complex, simp_cup_table, BarycentricComplex, PlusSubcomplex,
};

/// Outcome of a generator-by-generator comparison of the two models.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub checks: usize,
    pub first_discrepancy: Option<String>,
}

impl ModelReport {
    pub fn exact() -> Self {
        Self {
            checks: 0,
            first_discrepancy: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.first_discrepancy.is_none()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.first_discrepancy.is_none() {
            self.first_discrepancy = Some(what());
        }
    }

    pub fn merge(&mut self, other: ModelReport) {
        self.checks += other.checks;
        if self.first_discrepancy.is_none() {
            self.first_discrepancy = other.first_discrepancy;
        }
    }
}

/// Both sides of the equivalence for one fan.
#[derive(Clone, Debug)]
pub struct Models {
    pub cech: Cech,
    pub qb: BarycentricComplex,
}

type Entries = BTreeMap<(Vec<FaceId>, Vec<FaceId>), i64>;

fn labeled_entries(
    basis_k: &[Vec<FaceId>],
    basis_k1: &[Vec<FaceId>],
    m: &crate::chains::SparseMatrix,
) -> Entries {
    m.triplets()
        .map(|(r, c, v)| ((basis_k[c].clone(), basis_k1[r].clone()), v))
        .collect()
}

impl Models {
    pub fn new(cech: Cech) -> Self {
        let qb = barycentric(&cech.model().poset);
        Self { cech, qb }
    }

    fn plus(&self, pattern: &BoundaryPattern) -> PlusSubcomplex {
        PlusSubcomplex::new(self.qb.poset(), pattern)
    }

    /// Kill sets and differentials for one boundary pattern.
    pub fn compare_pattern(&self, pattern: &BoundaryPattern) -> ModelReport {
        let mut rep = ModelReport::exact();
        let mask = pattern.positive_mask();
        let a = self.plus(pattern);
        for k in 0..=self.qb.dim() {
            let simp: BTreeSet<&Vec<FaceId>> = self.qb.simplices(k).iter().collect();
            let cech: BTreeSet<&Vec<FaceId>> = self.cech.chains(k).iter().collect();
            rep.check(simp == cech, || {
                format!("degree {k}: generator sets differ")
            });
            for s in self.qb.simplices(k) {
                let killed_simp = a.contains(s);
                let killed_cech = !self.cech.is_admissible(s, mask);
                rep.check(killed_simp == killed_cech, || {
                    format!("pattern {:?}: kill status of {s:?} differs", pattern.values)
                });
            }
        }
        let c = self.cech.complex_for_mask(mask);
        let r = relative_cochain_complex(&self.qb, &a);
        for k in 0..self.qb.dim() as i32 {
            let cb: Vec<Vec<FaceId>> = c.basis(k).iter().map(|g| g.chain.clone()).collect();
            let cb1: Vec<Vec<FaceId>> = c.basis(k + 1).iter().map(|g| g.chain.clone()).collect();
            let left = labeled_entries(&cb, &cb1, &c.d(k));
            let right = labeled_entries(r.basis(k), r.basis(k + 1), &r.d(k));
            rep.check(left == right, || {
                let bad = left
                    .iter()
                    .find(|(key, v)| right.get(*key) != Some(*v))
                    .map(|(key, _)| key.clone())
                    .or_else(|| right.keys().find(|key| !left.contains_key(*key)).cloned());
                format!(
                    "pattern {:?}: differential out of degree {k} differs at {bad:?}",
                    pattern.values
                )
            });
        }
        rep
    }

    /// Cup structure constants for `Hom(L1,L2) x Hom(L0,L1) -> Hom(L0,L2)`
    /// given the three boundary patterns.
    pub fn compare_cup_patterns(
        &self,
        p12: &BoundaryPattern,
        p01: &BoundaryPattern,
        p02: &BoundaryPattern,
    ) -> ModelReport {
        let mut rep = ModelReport::exact();
        let cech = self.cech.cup_table(
            p12.positive_mask(),
            p01.positive_mask(),
            p02.positive_mask(),
        );
        let simp = simp_cup_table(&self.qb, &self.plus(p12), &self.plus(p01));
        rep.check(cech == simp, || {
            let bad = cech
                .iter()
                .find(|(k, v)| simp.get(*k) != Some(*v))
                .map(|(k, _)| k.clone())
                .or_else(|| simp.keys().find(|k| !cech.contains_key(*k)).cloned());
            format!(
                "cup constants differ for patterns {:?} x {:?} at {bad:?}",
                p12.values, p01.values
            )
        });
        rep
    }

    /// Composition of `Hom(L1, L2)_{u'}` with `Hom(L0, L1)_u`.
    pub fn compare_cups(
        &self,
        l0: &SupportFunction,
        l1: &SupportFunction,
        l2: &SupportFunction,
        u: &[i64],
        u2: &[i64],
    ) -> Result<ModelReport, CechError> {
        let total: Vec<i64> = u.iter().zip(u2).map(|(a, b)| a + b).collect();
        let p01 = self.cech.pattern(l0, l1, u)?;
        let p12 = self.cech.pattern(l1, l2, u2)?;
        let p02 = self.cech.pattern(l0, l2, &total)?;
        Ok(self.compare_cup_patterns(&p12, &p01, &p02))
    }

    /// Kill sets, differentials and cup constants for `Hom(L0, L1)_u`,
    /// composing with the identity morphisms on either side and with the
    /// translate `Hom(L1, 2 L1 - L0)_u`.
    pub fn compare_models(
        &self,
        l0: &SupportFunction,
        l1: &SupportFunction,
        u: &[i64],
    ) -> Result<ModelReport, CechError> {
        let zero = vec![0; u.len()];
        let mut rep = self.compare_pattern(&self.cech.pattern(l0, l1, u)?);
        rep.merge(self.compare_cups(l0, l0, l1, &zero, u)?);
        rep.merge(self.compare_cups(l0, l1, l1, u, &zero)?);
        let l2 = &(l1 + l1) - l0;
        rep.merge(self.compare_cups(l0, l1, &l2, u, u)?);
        Ok(rep)
    }
}
