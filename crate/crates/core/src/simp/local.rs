use serde::Serialize;

use super::cells::{cell_intersection_product, cell_to_simp, CellChain, CellCopy};
use super::pi::{pi_intersect_collapse, FullSimplex, OrderedComplex, PiModelCell, PiOutcome};
use super::{simp_cup, SimpCochain};
use crate::polyhedron::{dimension, LinearConstraint};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LocalModelReport {
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl LocalModelReport {
    pub fn all_pass(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn merge(&mut self, other: LocalModelReport) {
        self.checks += other.checks;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

fn all_simplices<C: OrderedComplex + ?Sized>(cx: &C) -> Vec<Vec<usize>> {
    (0..=cx.dim()).flat_map(|k| cx.simplices(k)).collect()
}

/// Intersecting dual cells and relabeling agrees with the cup product of
/// basis cochains, for every pair of simplices.
pub fn cup_square_check<C: OrderedComplex + ?Sized>(cx: &C) -> LocalModelReport {
    let d = cx.dim();
    let mut rep = LocalModelReport::default();
    let simplices = all_simplices(cx);
    for s in &simplices {
        for t in &simplices {
            let a = CellChain::cell(d, s, CellCopy::Unshifted);
            let b = CellChain::cell(d, t, CellCopy::Shifted);
            let cells = cell_intersection_product(cx, &a, &b).map(|c| cell_to_simp(d, &c));
            let cup = simp_cup(cx, &SimpCochain::basis(s), &SimpCochain::basis(t));
            let ok = match &cells {
                Ok(c) => c.coeffs == cup.coeffs && (c.coeffs.is_empty() || c.degree == cup.degree),
                Err(_) => false,
            };
            rep.record(ok, || {
                format!("dimension {d}: {s:?} x {t:?}: cells give {cells:?}, cup gives {cup:?}")
            });
        }
    }
    rep
}

// Points where max_j (x_j + shift_j), with x_0 = 0, is attained on all of
// `face`: equalities within the face, one inequality per outside vertex.
fn dual_cell(d: usize, face: &[usize], shifted: bool) -> Vec<LinearConstraint> {
    let shift = |j: usize| if shifted { j as i64 } else { 0 };
    // y_i - y_j = x_i - x_j + s_i - s_j
    let diff = |i: usize, j: usize| {
        let mut c = vec![0i64; d];
        if i > 0 {
            c[i - 1] += 1;
        }
        if j > 0 {
            c[j - 1] -= 1;
        }
        (c, shift(j) - shift(i))
    };
    let anchor = face[0];
    let mut out = Vec::new();
    for j in 0..=d {
        if j == anchor {
            continue;
        }
        let (c, rhs) = diff(anchor, j);
        out.push(if face.contains(&j) {
            LinearConstraint::eq(&c, rhs)
        } else {
            LinearConstraint::ge(&c, rhs)
        });
    }
    out
}

/// Classifies every pair of faces of `Δ^d` and checks the outcome against
/// the dual cells themselves, realised as polyhedra in `R^d`.
pub fn trichotomy_check(d: usize) -> LocalModelReport {
    let cx = FullSimplex(d);
    let mut rep = LocalModelReport::default();
    let simplices = all_simplices(&cx);
    for s in &simplices {
        for t in &simplices {
            let outcome = pi_intersect_collapse(
                &cx,
                &PiModelCell::unshifted(s.clone()),
                &PiModelCell::shifted(t.clone()),
            );
            let mut meet = dual_cell(d, s, false);
            meet.extend(dual_cell(d, t, true));
            let dim = dimension(d, &meet);
            // the recession cone of the meet is the unshifted dual cell of the
            // merged face; a collapsing meet has one bounded direction more
            let mut cone = dual_cell(d, s, false);
            cone.extend(dual_cell(d, t, false));
            let cone_dim = dimension(d, &cone);
            let expected = (d + 2).checked_sub(s.len() + t.len());
            let ok = match &outcome {
                Ok(PiOutcome::Empty) => dim.is_none(),
                Ok(PiOutcome::SameDimension(r)) => {
                    dim.is_some()
                        && dim == expected
                        && dim == cone_dim
                        && dim == dimension(d, &dual_cell(d, r, false))
                }
                Ok(PiOutcome::Collapsed(r)) => {
                    dim.is_some()
                        && dim == expected
                        && cone_dim == dimension(d, &dual_cell(d, r, false))
                        && cone_dim.map(|x| x + 1) == dim
                }
                Err(_) => false,
            };
            rep.record(ok, || format!("Δ^{d}: {s:?} against shifted {t:?}: {outcome:?}, cells meet in dimension {dim:?}"));
        }
    }
    rep
}

/// Cup squares for `Δ^k`, `k <= square_max_d`, and trichotomy for
/// `k <= trichotomy_max_d`.
pub fn local_model_check(square_max_d: usize, trichotomy_max_d: usize) -> LocalModelReport {
    let mut rep = LocalModelReport::default();
    for d in 0..=square_max_d {
        rep.merge(cup_square_check(&FullSimplex(d)));
    }
    for d in 0..=trichotomy_max_d {
        rep.merge(trichotomy_check(d));
    }
    rep
}
