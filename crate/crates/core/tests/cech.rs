use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_mirror::cech::{euler_characteristic, graded_hom, Cech, CechError, HomCochain};
use toric_mirror::chains::{cohomology, verify_complex};
use toric_mirror::lattice::examples;
use toric_mirror::lattice::SupportFunction;

fn cech(name: &str) -> Cech {
    Cech::new(examples::model(examples::by_name(name).unwrap()))
}

fn sf(v: &[i64]) -> SupportFunction {
    SupportFunction::new(v.to_vec())
}

// Sum of all admissible single-face chains.
fn all_faces(c: &Cech, l0: &SupportFunction, l1: &SupportFunction, u: &[i64]) -> HomCochain {
    let mut out = c
        .random_cochain(&mut ChaCha8Rng::seed_from_u64(0), l0, l1, u, 0, 0)
        .unwrap();
    for chain in c.chains(0) {
        if let Some(g) = c.generator(l0, l1, u, chain).unwrap() {
            out = out.add_scaled(&g, 1);
        }
    }
    out
}

#[test]
fn p1_minus_two() {
    let c = cech("p1");
    let cx = c.cech_complex(&sf(&[0, 0]), &sf(&[-1, -1]), &[0]).unwrap();
    verify_complex(&cx).unwrap();
    let h = cohomology(&cx);
    assert_eq!((h.rank(0), h.rank(1)), (0, 1));
    assert!(h.torsion(1).is_empty());
}

#[test]
fn empty_boundary_gives_h0() {
    for name in ["p1", "p2", "p1xp1", "f1", "p3"] {
        let c = cech(name);
        let h = c.mask_cohomology(0);
        assert_eq!(h.rank(0), 1, "{name}");
        assert_eq!(
            (1..=c.dim() as i32).map(|k| h.rank(k)).sum::<usize>(),
            0,
            "{name}"
        );
    }
}

#[test]
fn p2_minus_three() {
    let c = cech("p2");
    let h = cohomology(
        &c.cech_complex(&sf(&[0, 0, 0]), &sf(&[-1, -1, -1]), &[0, 0])
            .unwrap(),
    );
    assert_eq!((h.rank(0), h.rank(1), h.rank(2)), (0, 0, 1));
}

#[test]
fn bad_inputs() {
    let c = cech("p2");
    assert_eq!(
        c.cech_complex(&sf(&[0, 0]), &sf(&[0, 0, 0]), &[0, 0])
            .unwrap_err(),
        CechError::BundleLength {
            expected: 3,
            found: 2
        }
    );
    assert_eq!(
        c.pattern(&sf(&[0, 0, 0]), &sf(&[0, 0, 0]), &[0])
            .unwrap_err(),
        CechError::WeightLength {
            expected: 2,
            found: 1
        }
    );
    let a = c.unit(&sf(&[0, 0, 0]));
    let b = c.unit(&sf(&[1, 0, 0]));
    assert_eq!(c.cup(&a, &b).unwrap_err(), CechError::NotComposable);
}

#[test]
fn unit_is_idempotent() {
    for name in ["p1", "p2", "f1"] {
        let c = cech(name);
        let l = c.model().trivial_bundle();
        let e = c.unit(&l);
        assert_eq!(c.cup(&e, &e).unwrap(), e, "{name}");
        assert!(c.differential(&e).is_zero());
    }
}

#[test]
fn sections_compose() {
    let c = cech("p1");
    let (o, o1, o2) = (sf(&[0, 0]), sf(&[1, 0]), sf(&[2, 0]));
    for u in [0, 1] {
        for w in [0, 1] {
            let psi = all_faces(&c, &o, &o1, &[u]);
            let phi = all_faces(&c, &o1, &o2, &[w]);
            assert!(c.differential(&psi).is_zero());
            let prod = c.cup(&phi, &psi).unwrap();
            assert!(c.differential(&prod).is_zero());
            assert_eq!(prod.coeffs, all_faces(&c, &o, &o2, &[u + w]).coeffs);
        }
    }
}

#[test]
fn mismatched_faces_multiply_to_zero() {
    let c = cech("p1");
    let l = sf(&[0, 0]);
    let v = c.chains(0).to_vec();
    let a = c.generator(&l, &l, &[0], &v[0]).unwrap().unwrap();
    let b = c.generator(&l, &l, &[0], &v[1]).unwrap().unwrap();
    assert!(c.cup(&a, &b).unwrap().is_zero());
    assert_eq!(c.cup(&a, &a).unwrap(), a);
}

#[test]
fn killed_chain_has_no_generator() {
    let c = cech("p1");
    let o = sf(&[0, 0]);
    // u = 5 is past the facet <u, 1> <= 0, so that vertex is in the positive boundary
    let h = c.pattern(&o, &o, &[5]).unwrap();
    let dead = c
        .chains(0)
        .iter()
        .find(|ch| !c.is_admissible(ch, h.positive_mask()))
        .unwrap()
        .clone();
    assert!(c.generator(&o, &o, &[5], &dead).unwrap().is_none());
    assert!(c.generator(&o, &o, &[0], &[99]).unwrap().is_none());
}

#[test]
fn graded_hom_examples() {
    let c = cech("p1");
    let g = graded_hom(&c, &sf(&[0, 0]), &sf(&[1, 1])).unwrap();
    assert_eq!(
        g.pieces.keys().cloned().collect::<Vec<_>>(),
        vec![vec![-1], vec![0], vec![1]]
    );
    assert!(g.pieces.values().all(|h| h.rank(0) == 1 && h.rank(1) == 0));
    assert!(!g.has_torsion());

    let c = cech("p2");
    let g = graded_hom(&c, &sf(&[0, 0, 0]), &sf(&[-1, -1, -1])).unwrap();
    assert_eq!(
        g.pieces.keys().cloned().collect::<Vec<_>>(),
        vec![vec![0, 0]]
    );
    assert_eq!(g.pieces[&vec![0, 0]].rank(2), 1);
    assert_eq!(g.certificate.len(), 8);

    for l in [[0, 0, 0], [2, -1, 3]] {
        let g = graded_hom(&c, &sf(&l), &sf(&l)).unwrap();
        assert_eq!(
            g.pieces.keys().cloned().collect::<Vec<_>>(),
            vec![vec![0, 0]]
        );
        assert_eq!(g.total_rank(0), 1);
    }
}

#[test]
fn euler_characteristic_examples() {
    let p1 = cech("p1");
    let p2 = cech("p2");
    assert_eq!(
        euler_characteristic(&p1, &sf(&[0, 0]), &sf(&[1, 1])).unwrap(),
        3
    );
    assert_eq!(
        euler_characteristic(&p1, &sf(&[0, 0]), &sf(&[-1, -1])).unwrap(),
        -1
    );
    assert_eq!(
        euler_characteristic(&p2, &sf(&[0, 0, 0]), &sf(&[-1, -1, -1])).unwrap(),
        1
    );
    assert_eq!(
        euler_characteristic(&p2, &sf(&[0, 0, 0]), &sf(&[1, 1, 1])).unwrap(),
        10
    );
}

fn named() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["p1", "p2", "p1xp1", "f1"])
}

fn bundle(c: &Cech, raw: &[i64]) -> SupportFunction {
    sf(&raw[..c.model().num_rays()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // H^i(L0, L1)_u and H^{n-i}(L1, L0 + K)_{-u} have the same rank.
    #[test]
    fn serre_duality(name in named(), a in prop::collection::vec(-2i64..=2, 4), b in prop::collection::vec(-2i64..=2, 4)) {
        let c = cech(name);
        let n = c.dim() as i32;
        let l0 = bundle(&c, &a);
        let l1 = bundle(&c, &b);
        let dual = sf(&l0.values().iter().map(|x| x - 1).collect::<Vec<_>>());
        let g = graded_hom(&c, &l0, &l1).unwrap();
        let h = graded_hom(&c, &l1, &dual).unwrap();
        prop_assert_eq!(g.pieces.len(), h.pieces.len());
        for (u, x) in &g.pieces {
            let minus: Vec<i64> = u.iter().map(|v| -v).collect();
            let y = &h.pieces[&minus];
            for i in 0..=n {
                prop_assert_eq!(x.rank(i), y.rank(n - i));
            }
        }
    }

    #[test]
    fn dg_identities(name in named(), seed in any::<u64>(),
                     ls in prop::collection::vec(-2i64..=2, 16), us in prop::collection::vec(-2i64..=2, 6),
                     p in 0usize..3, q in 0usize..3, r in 0usize..3) {
        let c = cech(name);
        let k = c.model().num_rays();
        let n = c.dim();
        let l: Vec<SupportFunction> = (0..4).map(|i| bundle(&c, &ls[4 * i..4 * i + 4])).collect();
        let u: Vec<&[i64]> = (0..3).map(|i| &us[2 * i..2 * i + n]).collect();
        let (p, q, r) = (p.min(n), q.min(n), r.min(n));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = c.random_cochain(&mut rng, &l[0], &l[1], u[0], q, 4).unwrap();
        let phi = c.random_cochain(&mut rng, &l[1], &l[2], u[1], p, 4).unwrap();
        let chi = c.random_cochain(&mut rng, &l[2], &l[3], u[2], r, 4).unwrap();
        prop_assert_eq!(k, l[0].len());

        prop_assert!(c.differential(&c.differential(&psi)).is_zero());

        let lhs = c.differential(&c.cup(&phi, &psi).unwrap());
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let rhs = c.cup(&c.differential(&phi), &psi).unwrap()
            .add_scaled(&c.cup(&phi, &c.differential(&psi)).unwrap(), sign);
        prop_assert_eq!(lhs.coeffs, rhs.coeffs);

        let left = c.cup(&c.cup(&chi, &phi).unwrap(), &psi).unwrap();
        let right = c.cup(&chi, &c.cup(&phi, &psi).unwrap()).unwrap();
        prop_assert_eq!(left.coeffs, right.coeffs);

        prop_assert_eq!(c.cup(&c.unit(&l[1]), &psi).unwrap().coeffs, psi.coeffs.clone());
        prop_assert_eq!(c.cup(&psi, &c.unit(&l[0])).unwrap().coeffs, psi.coeffs);
    }
}
