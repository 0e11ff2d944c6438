use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cech::{Cech, CechError, HomCochain};
use crate::chains::{cone_acyclic, verify_complex, ChainMap, SparseMatrix};
use crate::lattice::SupportFunction;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomCounts {
    pub passed: usize,
    pub failed: usize,
}

impl AxiomCounts {
    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DgReport {
    pub instances: usize,
    pub d_squared: AxiomCounts,
    pub leibniz: AxiomCounts,
    pub associativity: AxiomCounts,
    pub unit: AxiomCounts,
    pub unit_quasi_iso: AxiomCounts,
    /// Descriptions of the first few failures, with their location.
    pub failures: Vec<String>,
}

impl DgReport {
    pub fn all_pass(&self) -> bool {
        [
            &self.d_squared,
            &self.leibniz,
            &self.associativity,
            &self.unit,
            &self.unit_quasi_iso,
        ]
        .iter()
        .all(|c| c.failed == 0)
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 10 {
            self.failures.push(msg);
        }
    }
}

/// Sampling parameters for [`dg_axioms_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgSuite {
    pub samples: usize,
    pub seed: u64,
    /// Bundle coefficients are drawn from `-coeff_range..=coeff_range`.
    pub coeff_range: i64,
    /// Weights are drawn from `-weight_range..=weight_range`.
    pub weight_range: i64,
    /// Use one random bundle for every object.
    pub degenerate: bool,
}

impl Default for DgSuite {
    fn default() -> Self {
        Self {
            samples: 100,
            seed: 0,
            coeff_range: 3,
            weight_range: 2,
            degenerate: false,
        }
    }
}

fn first_difference(a: &HomCochain, b: &HomCochain) -> Option<Vec<usize>> {
    a.coeffs
        .iter()
        .find(|(k, v)| b.coeffs.get(*k) != Some(*v))
        .map(|(k, _)| k.clone())
        .or_else(|| {
            b.coeffs
                .keys()
                .find(|k| !a.coeffs.contains_key(*k))
                .cloned()
        })
}

/// Left multiplication by `e_{L1}` on `Hom(L0, L1)_u` as a chain map.
fn unit_multiplication(
    cech: &Cech,
    l0: &SupportFunction,
    l1: &SupportFunction,
    u: &[i64],
) -> Result<ChainMap<crate::cech::CechGenerator, crate::cech::CechGenerator>, CechError> {
    let c = cech.cech_complex(l0, l1, u)?;
    let e = cech.unit(l1);
    let columns = |k: i32| -> Result<SparseMatrix, CechError> {
        let basis = c.basis(k);
        let mut trip = Vec::new();
        for (col, g) in basis.iter().enumerate() {
            let x = cech
                .generator(l0, l1, u, &g.chain)?
                .expect("basis chains are admissible");
            let y = cech.cup(&e, &x)?;
            for (chain, v) in &y.coeffs {
                let row = basis
                    .iter()
                    .position(|h| &h.chain == chain)
                    .expect("product stays in the basis");
                trip.push((row, col, *v));
            }
        }
        Ok(SparseMatrix::from_triplets(basis.len(), basis.len(), trip))
    };
    let maps: Vec<SparseMatrix> = c.degrees().map(columns).collect::<Result<_, _>>()?;
    let lo = c.lo();
    Ok(
        ChainMap::new(c.clone(), c, |k| maps[(k - lo) as usize].clone())
            .expect("square components"),
    )
}

/// Randomized check of the strict DG category axioms on the Čech model.
pub fn dg_axioms_check(models: &[Cech], suite: &DgSuite) -> Result<DgReport, CechError> {
    let mut rng = ChaCha8Rng::seed_from_u64(suite.seed);
    let mut rep = DgReport::default();
    for inst in 0..suite.samples {
        let cech = models.choose(&mut rng).expect("at least one model");
        let n = cech.dim();
        let rays = cech.model().num_rays();
        let bundle = |rng: &mut ChaCha8Rng| {
            SupportFunction::new(
                (0..rays)
                    .map(|_| rng.gen_range(-suite.coeff_range..=suite.coeff_range))
                    .collect(),
            )
        };
        let ls: Vec<SupportFunction> = if suite.degenerate {
            vec![bundle(&mut rng); 4]
        } else {
            (0..4).map(|_| bundle(&mut rng)).collect()
        };
        let mut weight = || -> Vec<i64> {
            (0..n)
                .map(|_| rng.gen_range(-suite.weight_range..=suite.weight_range))
                .collect()
        };
        let (u01, u12, u23) = (weight(), weight(), weight());
        let (p, q, r) = (
            rng.gen_range(0..=n),
            rng.gen_range(0..=n),
            rng.gen_range(0..=n),
        );
        let where_ = format!(
            "instance {inst} (rays {rays}, bundles {:?}, weights {:?} {:?} {:?})",
            ls.iter().map(|l| l.values().to_vec()).collect::<Vec<_>>(),
            u01,
            u12,
            u23
        );

        let psi = cech.random_cochain(&mut rng, &ls[0], &ls[1], &u01, q, 5)?;
        let phi = cech.random_cochain(&mut rng, &ls[1], &ls[2], &u12, p, 5)?;
        let chi = cech.random_cochain(&mut rng, &ls[2], &ls[3], &u23, r, 5)?;

        // d^2 = 0 on the complex and on a sample cochain
        let complex = cech.cech_complex(&ls[0], &ls[1], &u01)?;
        let dd = cech.differential(&cech.differential(&psi));
        let ok = verify_complex(&complex).is_ok() && dd.is_zero();
        rep.d_squared.record(ok);
        if !ok {
            let at = verify_complex(&complex)
                .err()
                .map(|e| e.to_string())
                .unwrap_or_else(|| format!("{:?}", dd.coeffs.keys().next()));
            rep.fail(format!("d^2: {where_}: {at}"));
        }

        // d(phi psi) = dphi psi + (-1)^p phi dpsi
        let lhs = cech.differential(&cech.cup(&phi, &psi)?);
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let rhs = cech
            .cup(&cech.differential(&phi), &psi)?
            .add_scaled(&cech.cup(&phi, &cech.differential(&psi))?, sign);
        let ok = lhs.coeffs == rhs.coeffs;
        rep.leibniz.record(ok);
        if !ok {
            rep.fail(format!(
                "leibniz: {where_}: degrees ({p}, {q}), first mismatch at {:?}",
                first_difference(&lhs, &rhs)
            ));
        }

        // (chi phi) psi = chi (phi psi)
        let left = cech.cup(&cech.cup(&chi, &phi)?, &psi)?;
        let right = cech.cup(&chi, &cech.cup(&phi, &psi)?)?;
        let ok = left.coeffs == right.coeffs;
        rep.associativity.record(ok);
        if !ok {
            rep.fail(format!(
                "associativity: {where_}: first mismatch at {:?}",
                first_difference(&left, &right)
            ));
        }

        // strict unit, and e is a cocycle
        let e0 = cech.unit(&ls[0]);
        let e1 = cech.unit(&ls[1]);
        let ok = cech.cup(&e1, &psi)?.coeffs == psi.coeffs
            && cech.cup(&psi, &e0)?.coeffs == psi.coeffs
            && cech.differential(&e1).is_zero();
        rep.unit.record(ok);
        if !ok {
            rep.fail(format!("unit: {where_}"));
        }

        let m = unit_multiplication(cech, &ls[0], &ls[1], &u01)?;
        let ok = cone_acyclic(&m).unwrap_or(false);
        rep.unit_quasi_iso.record(ok);
        if !ok {
            rep.fail(format!(
                "unit multiplication is not a quasi-isomorphism: {where_}"
            ));
        }
        rep.instances += 1;
    }
    Ok(rep)
}
