use std::collections::BTreeMap;

use proptest::prelude::*;
use toric_mirror::cech::Cech;
use toric_mirror::chains::{cohomology, verify_complex};
use toric_mirror::lattice::{examples, h_function, SupportFunction, ToricModel};
use toric_mirror::simp::{
    barycentric, cell_complex, cell_intersection_product, cell_to_simp, pi_intersect_collapse,
    relative_cochain_complex, simp_coboundary, simp_cup, CellChain, CellCopy, FullSimplex,
    OrderedComplex, PiModelCell, PiOutcome, PlusSubcomplex, SimpCochain, SimpError,
};

fn model(name: &str) -> ToricModel {
    examples::model(examples::by_name(name).unwrap())
}

// The positive boundary made of the facets whose bit is set.
fn plus(m: &ToricModel, mask: u64) -> PlusSubcomplex {
    let c: Vec<i64> = (0..m.num_rays())
        .map(|r| -((mask >> r & 1) as i64))
        .collect();
    PlusSubcomplex::new(
        &m.poset,
        &h_function(&m.fan, &SupportFunction::new(c), &vec![0; m.dim()]),
    )
}

#[test]
fn barycentric_counts() {
    assert_eq!(barycentric(&model("p1").poset).counts(), vec![3, 2]);
    assert_eq!(barycentric(&model("p2").poset).counts(), vec![7, 12, 6]);
    assert_eq!(barycentric(&model("p1xp1").poset).counts(), vec![9, 16, 8]);
}

#[test]
fn barycentric_simplices_are_chains() {
    let m = model("f1");
    let qb = barycentric(&m.poset);
    for k in 0..=qb.dim() {
        for s in qb.simplices(k) {
            assert!(s.windows(2).all(|w| m.poset.lt(w[0], w[1])));
        }
    }
    // a disk
    let h = cohomology(&relative_cochain_complex(
        &qb,
        &PlusSubcomplex::empty(&m.poset),
    ));
    assert_eq!((h.rank(0), h.rank(1), h.rank(2)), (1, 0, 0));
}

#[test]
fn relative_cohomology_examples() {
    let m = model("p1");
    let qb = barycentric(&m.poset);
    let both = cohomology(&relative_cochain_complex(&qb, &plus(&m, 0b11)));
    assert_eq!((both.rank(0), both.rank(1)), (0, 1));
    let one = cohomology(&relative_cochain_complex(&qb, &plus(&m, 0b01)));
    assert!(one.is_zero());

    let m = model("p2");
    let qb = barycentric(&m.poset);
    let rel = relative_cochain_complex(&qb, &plus(&m, 0b111));
    verify_complex(&rel).unwrap();
    let h = cohomology(&rel);
    assert_eq!((h.rank(0), h.rank(1), h.rank(2)), (0, 0, 1));
}

// Both models compute the cohomology of the polytope relative to the
// positive boundary.
#[test]
fn relative_cohomology_matches_cech() {
    for name in ["p1", "p2", "p1xp1", "f1", "blowup"] {
        let m = model(name);
        let qb = barycentric(&m.poset);
        let cech = Cech::new(m.clone());
        for mask in 0..1u64 << m.num_rays() {
            let simp = cohomology(&relative_cochain_complex(&qb, &plus(&m, mask)));
            assert_eq!(simp, cech.mask_cohomology(mask), "{name} mask {mask:b}");
        }
    }
}

#[test]
fn coboundary_matches_the_complex() {
    let m = model("p2");
    let qb = barycentric(&m.poset);
    let a = plus(&m, 0b011);
    let rel = relative_cochain_complex(&qb, &a);
    for k in 0..qb.dim() {
        let d = rel.d(k as i32);
        for (col, s) in rel.basis(k as i32).iter().enumerate() {
            let image = simp_coboundary(&qb, Some(&a), &SimpCochain::basis(s));
            assert!(image.vanishes_on(&a));
            for (row, t) in rel.basis(k as i32 + 1).iter().enumerate() {
                assert_eq!(d.get(row, col), image.value(t), "{s:?} -> {t:?}");
            }
        }
    }
}

#[test]
fn cup_examples() {
    let cx = FullSimplex(2);
    let a = SimpCochain::basis(&[0, 1]);
    assert_eq!(
        simp_cup(&cx, &a, &SimpCochain::basis(&[1, 2])),
        SimpCochain::basis(&[0, 1, 2])
    );
    assert_eq!(
        simp_cup(&cx, &a, &SimpCochain::basis(&[0, 2])),
        SimpCochain::new(2, BTreeMap::new())
    );
    let e = SimpCochain::unit(&cx);
    assert_eq!(simp_cup(&cx, &e, &a), a);
    assert_eq!(simp_cup(&cx, &a, &e), a);
    assert_eq!(
        simp_coboundary(&cx, None, &e),
        SimpCochain::new(1, BTreeMap::new())
    );
}

#[test]
fn pi_examples() {
    let cx = FullSimplex(2);
    let pi = |s: &[usize], t: &[usize]| {
        pi_intersect_collapse(
            &cx,
            &PiModelCell::unshifted(s.to_vec()),
            &PiModelCell::shifted(t.to_vec()),
        )
        .unwrap()
    };
    assert_eq!(
        pi(&[0, 1], &[1, 2]),
        PiOutcome::SameDimension(vec![0, 1, 2])
    );
    assert_eq!(pi(&[1], &[1]), PiOutcome::SameDimension(vec![1]));
    assert_eq!(pi(&[0], &[1]), PiOutcome::Collapsed(vec![0, 1]));
    assert_eq!(pi(&[0, 1], &[2]), PiOutcome::Collapsed(vec![0, 1, 2]));
    assert_eq!(pi(&[1], &[0]), PiOutcome::Empty);
    assert_eq!(pi(&[0, 1], &[0, 2]), PiOutcome::Empty);

    let err = pi_intersect_collapse(
        &cx,
        &PiModelCell::shifted(vec![0]),
        &PiModelCell::shifted(vec![1]),
    )
    .unwrap_err();
    assert_eq!(
        err,
        SimpError::WrongCopy {
            expected: CellCopy::Unshifted
        }
    );
    let err = pi_intersect_collapse(
        &cx,
        &PiModelCell::unshifted(vec![1, 0]),
        &PiModelCell::shifted(vec![1]),
    )
    .unwrap_err();
    assert_eq!(err, SimpError::MalformedFace(vec![1, 0]));
}

#[test]
fn cell_product_rejects_wrong_copies() {
    let cx = FullSimplex(1);
    let a = CellChain::cell(1, &[0], CellCopy::Shifted);
    let b = CellChain::cell(1, &[1], CellCopy::Shifted);
    assert!(cell_intersection_product(&cx, &a, &b).is_err());
}

// Dual cells of the subdivision of Q_b carry the simplicial coboundary.
#[test]
fn cell_boundary_is_the_coboundary() {
    for name in ["p1", "p2"] {
        let qb = barycentric(&model(name).poset);
        let cells = cell_complex(&qb);
        let simp = relative_cochain_complex(&qb, &PlusSubcomplex::empty(qb.poset()));
        verify_complex(&cells).unwrap();
        for k in 0..qb.dim() as i32 {
            assert_eq!(cells.basis(k), simp.basis(k));
            assert_eq!(
                cells.d(k).to_dense(),
                simp.d(k).to_dense(),
                "{name} degree {k}"
            );
        }
        for k in 0..=qb.dim() {
            for s in qb.simplices(k) {
                let c = CellChain::cell(qb.dim(), s, CellCopy::Unshifted);
                assert_eq!(c.cell_dim, qb.dim() - k);
                assert_eq!(cell_to_simp(qb.dim(), &c), SimpCochain::basis(s));
            }
        }
    }
}

// Is there an integer point x (with x_0 = 0) where max_j (x_j + shift_j) is
// attained on all of `face`, for both cells at once?
fn cells_meet(d: usize, s: &[usize], t: &[usize]) -> bool {
    let r = (d * d + 1) as i64;
    let mut x = vec![-r; d];
    let on = |x: &[i64], face: &[usize], shift: bool| {
        let value = |j: usize| if j == 0 { 0 } else { x[j - 1] } + if shift { j as i64 } else { 0 };
        let max = (0..=d).map(value).max().unwrap();
        face.iter().all(|&j| value(j) == max)
    };
    loop {
        if on(&x, s, false) && on(&x, t, true) {
            return true;
        }
        let Some(k) = (0..d).find(|&k| x[k] < r) else {
            return false;
        };
        x[k] += 1;
        for y in &mut x[..k] {
            *y = -r;
        }
    }
}

#[test]
fn emptiness_matches_a_point_search() {
    for d in 0..=3 {
        let cx = FullSimplex(d);
        let all: Vec<Vec<usize>> = (0..=d).flat_map(|k| cx.simplices(k)).collect();
        for s in &all {
            for t in &all {
                let out = pi_intersect_collapse(
                    &cx,
                    &PiModelCell::unshifted(s.clone()),
                    &PiModelCell::shifted(t.clone()),
                )
                .unwrap();
                assert_eq!(
                    out != PiOutcome::Empty,
                    cells_meet(d, s, t),
                    "Δ^{d}: {s:?} {t:?}"
                );
            }
        }
    }
}

fn cochain(cx: &FullSimplex, degree: usize, values: &[i64]) -> SimpCochain {
    SimpCochain::new(
        degree,
        cx.simplices(degree)
            .into_iter()
            .zip(values.iter().copied())
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn leibniz_and_associativity(d in 1usize..5, p in 0usize..3, q in 0usize..3, r in 0usize..2,
                                 a in prop::collection::vec(-3i64..=3, 10), b in prop::collection::vec(-3i64..=3, 10),
                                 c in prop::collection::vec(-3i64..=3, 10)) {
        let cx = FullSimplex(d);
        let (p, q, r) = (p.min(d), q.min(d), r.min(d));
        let (phi, psi, chi) = (cochain(&cx, p, &a), cochain(&cx, q, &b), cochain(&cx, r, &c));
        let lhs = simp_coboundary(&cx, None, &simp_cup(&cx, &phi, &psi));
        let x = simp_cup(&cx, &simp_coboundary(&cx, None, &phi), &psi);
        let y = simp_cup(&cx, &phi, &simp_coboundary(&cx, None, &psi));
        let sign = if p % 2 == 0 { 1 } else { -1 };
        for s in cx.simplices(p + q + 1) {
            prop_assert_eq!(lhs.value(&s), x.value(&s) + sign * y.value(&s));
        }
        prop_assert_eq!(
            simp_cup(&cx, &simp_cup(&cx, &phi, &psi), &chi),
            simp_cup(&cx, &phi, &simp_cup(&cx, &psi, &chi))
        );
        let dd = simp_coboundary(&cx, None, &simp_coboundary(&cx, None, &phi));
        prop_assert!(dd.coeffs.is_empty());
    }
}
