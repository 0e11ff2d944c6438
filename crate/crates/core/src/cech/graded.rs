use std::collections::BTreeMap;

use serde::Serialize;

use super::{Cech, CechError};
use crate::chains::CohomologyResult;
use crate::lattice::{lattice_points, Inequality, Polytope, SupportFunction};

/// One cell of the arrangement `<u, v_rho> = c_rho` (shifted to integer
/// chambers): facets in `pattern` have `<u, v_rho> >= c_rho + 1`, the rest
/// `<u, v_rho> <= c_rho`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberRecord {
    pub pattern: Vec<bool>,
    pub feasible: bool,
    pub bounded: bool,
    pub cohomology: Option<CohomologyResult>,
    pub lattice_points: usize,
}

/// The weight-graded morphism space `Hom(L0, L1)` with a certificate that
/// every weight outside `pieces` has zero cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedHom {
    pub source: SupportFunction,
    pub target: SupportFunction,
    pub pieces: BTreeMap<Vec<i64>, CohomologyResult>,
    pub certificate: Vec<ChamberRecord>,
}

impl GradedHom {
    /// Total free rank in degree `k` over all weights.
    pub fn total_rank(&self, k: i32) -> usize {
        self.pieces.values().map(|c| c.rank(k)).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.pieces
            .values()
            .map(CohomologyResult::euler_characteristic)
            .sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.pieces
            .values()
            .any(|c| c.groups.iter().any(|g| !g.torsion.is_empty()))
    }
}

/// Enumerates the weights with nonzero cohomology chamber by chamber. Only
/// the sign pattern of `H(L1 - L0, u)` matters, so cohomology is computed
/// once per pattern; a pattern with cohomology must have a bounded chamber.
pub fn graded_hom(
    cech: &Cech,
    l0: &SupportFunction,
    l1: &SupportFunction,
) -> Result<GradedHom, CechError> {
    cech.check_bundle(l0)?;
    cech.check_bundle(l1)?;
    let fan = &cech.model().fan;
    let c = l1 - l0;
    let n = fan.dim();
    let rays = fan.num_rays();
    let mut pieces = BTreeMap::new();
    let mut certificate = Vec::with_capacity(1 << rays);
    for mask in 0u64..(1u64 << rays) {
        let pattern: Vec<bool> = (0..rays).map(|r| mask >> r & 1 == 1).collect();
        let inequalities: Vec<Inequality> = (0..rays)
            .map(|r| {
                let v = fan.ray(r);
                if pattern[r] {
                    Inequality {
                        normal: v.iter().map(|x| -x).collect(),
                        bound: -c.values()[r] - 1,
                    }
                } else {
                    Inequality {
                        normal: v.to_vec(),
                        bound: c.values()[r],
                    }
                }
            })
            .collect();
        let chamber = Polytope::from_inequalities(n, inequalities);
        if chamber.is_empty() {
            certificate.push(ChamberRecord {
                pattern,
                feasible: false,
                bounded: true,
                cohomology: None,
                lattice_points: 0,
            });
            continue;
        }
        let h = cech.mask_cohomology(mask);
        let bounded = chamber.is_bounded();
        let mut count = 0;
        if !h.is_zero() {
            if !bounded {
                return Err(CechError::Inconsistent { pattern });
            }
            let points = lattice_points(&chamber)?;
            count = points.len();
            for u in points {
                pieces.insert(u, h.clone());
            }
        }
        certificate.push(ChamberRecord {
            pattern,
            feasible: true,
            bounded,
            cohomology: Some(h),
            lattice_points: count,
        });
    }
    Ok(GradedHom {
        source: l0.clone(),
        target: l1.clone(),
        pieces,
        certificate,
    })
}

/// `sum_u sum_i (-1)^i rank H^i(Hom(L0, L1)_u)`.
pub fn euler_characteristic(
    cech: &Cech,
    l0: &SupportFunction,
    l1: &SupportFunction,
) -> Result<i64, CechError> {
    Ok(graded_hom(cech, l0, l1)?.euler_characteristic())
}
