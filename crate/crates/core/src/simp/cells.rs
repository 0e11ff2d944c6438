use std::collections::BTreeMap;

use serde::Serialize;

use super::pi::{pi_intersect_collapse, OrderedComplex, PiModelCell, PiOutcome};
use super::{SimpCochain, SimpError};
use crate::chains::{FreeComplex, SparseMatrix};

/// Which copy of the dual subdivision a cell belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CellCopy {
    Unshifted,
    Shifted,
}

/// A cellular chain on the dual subdivision. The dual cell `V_s` of a
/// `k`-simplex `s` has dimension `n - k`; `V_s` is oriented so that
/// `cell_to_simp` carries it to the basis cochain of `s` with sign `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellChain {
    pub cell_dim: usize,
    pub copy: CellCopy,
    pub coeffs: BTreeMap<Vec<usize>, i64>,
}

impl CellChain {
    pub fn new(cell_dim: usize, copy: CellCopy, mut coeffs: BTreeMap<Vec<usize>, i64>) -> Self {
        coeffs.retain(|_, v| *v != 0);
        Self {
            cell_dim,
            copy,
            coeffs,
        }
    }

    /// The single dual cell of `simplex` in an `n`-dimensional complex.
    pub fn cell(n: usize, simplex: &[usize], copy: CellCopy) -> Self {
        Self::new(
            n + 1 - simplex.len(),
            copy,
            BTreeMap::from([(simplex.to_vec(), 1)]),
        )
    }
}

/// Cellular chains of the dual subdivision, indexed by codimension so the
/// boundary raises degree: `∂V_a = sum_i (-1)^i V_b` over the simplices `b`
/// obtained by inserting one vertex into `a` at position `i`.
pub fn cell_complex<C: OrderedComplex + ?Sized>(cx: &C) -> FreeComplex<Vec<usize>> {
    let n = cx.dim();
    let basis: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| cx.simplices(k)).collect();
    let vertices: Vec<usize> = cx.simplices(0).into_iter().map(|v| v[0]).collect();
    let d = (0..n)
        .map(|k| {
            let rows: BTreeMap<&Vec<usize>, usize> = basis[k + 1]
                .iter()
                .enumerate()
                .map(|(i, s)| (s, i))
                .collect();
            let mut trip = Vec::new();
            for (col, a) in basis[k].iter().enumerate() {
                for i in 0..=a.len() {
                    for &v in &vertices {
                        let mut b = a.clone();
                        b.insert(i, v);
                        if let Some(&row) = rows.get(&b) {
                            trip.push((row, col, if i % 2 == 0 { 1 } else { -1 }));
                        }
                    }
                }
            }
            SparseMatrix::from_triplets(basis[k + 1].len(), basis[k].len(), trip)
        })
        .collect();
    FreeComplex::new(0, basis, d).expect("cell complex has consistent shapes")
}

/// Relabels `V_s` as the cochain dual to `s`.
pub fn cell_to_simp(n: usize, chain: &CellChain) -> SimpCochain {
    SimpCochain::new(n - chain.cell_dim, chain.coeffs.clone())
}

/// Intersects chains on the unshifted and shifted copies cell by cell. Cells
/// meeting in the expected dimension give the glued cell; collapsed
/// intersections land one dimension lower and contribute nothing in the
/// product's degree.
pub fn cell_intersection_product<C: OrderedComplex + ?Sized>(
    cx: &C,
    a: &CellChain,
    b: &CellChain,
) -> Result<CellChain, SimpError> {
    if a.copy != CellCopy::Unshifted {
        return Err(SimpError::WrongCopy {
            expected: CellCopy::Unshifted,
        });
    }
    if b.copy != CellCopy::Shifted {
        return Err(SimpError::WrongCopy {
            expected: CellCopy::Shifted,
        });
    }
    let n = cx.dim();
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for (s, &x) in &a.coeffs {
        for (t, &y) in &b.coeffs {
            let outcome = pi_intersect_collapse(
                cx,
                &PiModelCell::unshifted(s.clone()),
                &PiModelCell::shifted(t.clone()),
            )?;
            if let PiOutcome::SameDimension(r) = outcome {
                *out.entry(r).or_insert(0) += x * y;
            }
        }
    }
    let cell_dim = (a.cell_dim + b.cell_dim).saturating_sub(n);
    Ok(CellChain::new(cell_dim, CellCopy::Shifted, out))
}
