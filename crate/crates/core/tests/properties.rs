use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use homsurf::actions::d1::classify_d1_subgroup;
use homsurf::actions::{family_action, FamilyId, GroupAction, Quadric};
use homsurf::bbeta::{
    centralizer_act, example_quotients, gd_act, gd_multiply, CentralizerGroup, GdElement, GdGroup,
};
use homsurf::bundles::{biholo_apply, biholo_inverse, normalizes_deck_map, random_biholomorphism, SCData};
use homsurf::divisor::{equivalent_mod_rescaling, quasiperiod_group, weight, Divisor, QuasiperiodGroup};
use homsurf::exppoly::{apply_operator, basis_of, contains, monic_polynomial, ExpPoly};
use homsurf::linalg::Mat2;
use homsurf::points::{AffinePoint, Proj2Point};
use homsurf::projective::{conic_action, quadric_double_cover, sym_power_rep};
use homsurf::scalar::two_pi_i;
use homsurf::tolerance::rel_err;
use homsurf::uaff::{commutator, product_cover, D2Label, UAffElement};
use homsurf::verify::suite_rng;
use homsurf::C64;

fn cx(r: f64) -> impl Strategy<Value = C64> {
    (-r..r, -r..r).prop_map(|(a, b)| C64::new(a, b))
}

fn divisor(max_deg: u32) -> impl Strategy<Value = Divisor> {
    prop::collection::vec((cx(1.0), 1u32..=3), 1..=4).prop_filter_map("degree cap", move |pts| {
        let d = Divisor::new(pts).ok()?;
        (d.degree() <= max_deg).then_some(d)
    })
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn commensurable() -> impl Strategy<Value = Divisor> {
    (cx(0.5), prop::collection::btree_set(1i64..=6, 1..=3)).prop_map(|(l, ks)| {
        let mut pts = vec![l];
        pts.extend(ks.iter().map(|&k| l + two_pi_i() * k as f64));
        Divisor::simple(&pts).unwrap()
    })
}

fn mat2(r: f64) -> impl Strategy<Value = Mat2> {
    (cx(r), cx(r), cx(r), cx(r)).prop_map(|(a, b, c, d)| Mat2::new(a + 2.0, b, c, d + 2.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn annihilator_kills_the_span(d in divisor(8), seed: u64) {
        let mut rng = seeded(seed);
        let op = monic_polynomial(&d).unwrap();
        let f = basis_of(&d).unwrap().iter().fold(ExpPoly::zero(), |acc, b| &acc + &(b * homsurf::linalg::random_c(&mut rng, 1.0)));
        prop_assert!(apply_operator(&op, &f).is_zero());
    }

    #[test]
    fn translations_compose(d in divisor(6), s in cx(1.0), t in cx(1.0), z in cx(1.0), seed: u64) {
        let f = ExpPoly::random_in(&d, &mut seeded(seed));
        prop_assert!(f.translate(s).translate(t).approx_eq(&f.translate(s + t), 1e-9));
        prop_assert!(rel_err(f.translate(t).evaluate(z), f.evaluate(z - t)) <= 1e-9);
    }

    #[test]
    fn operator_is_linear(d in divisor(4), e in divisor(4), a in cx(2.0), seed: u64) {
        let mut rng = seeded(seed);
        let op = monic_polynomial(&d).unwrap();
        let f = ExpPoly::random_in(&e, &mut rng);
        let g = ExpPoly::random_in(&e, &mut rng);
        let lhs = apply_operator(&op, &(&(&f * a) + &g));
        let rhs = &(&apply_operator(&op, &f) * a) + &apply_operator(&op, &g);
        prop_assert!(lhs.approx_eq(&rhs, 1e-9));
    }

    #[test]
    fn quasiperiods_under_translation_and_rescaling(d in commensurable(), a in cx(1.0), mu in cx(1.0)) {
        let mu = mu + C64::new(1.5, 0.0);
        let q = quasiperiod_group(&d).unwrap();
        let QuasiperiodGroup::RankOne { generator } = q else { unreachable!() };
        let QuasiperiodGroup::RankOne { generator: g1 } = quasiperiod_group(&d.shifted(a).unwrap()).unwrap() else {
            return Err(TestCaseError::fail("shifted group is not rank one"));
        };
        prop_assert!(rel_err(g1, generator) <= 1e-9);
        let QuasiperiodGroup::RankOne { generator: g2 } = quasiperiod_group(&d.scaled(mu).unwrap()).unwrap() else {
            return Err(TestCaseError::fail("rescaled group is not rank one"));
        };
        // generators are only defined up to sign
        let want = generator / mu;
        prop_assert!(rel_err(g2, want).min(rel_err(g2, -want)) <= 1e-8);
    }

    #[test]
    fn weight_is_multiplicative(d in commensurable(), m in -3i32..=3, k in -3i32..=3) {
        let (w1, w2) = (C64::new(m as f64, 0.0), C64::new(k as f64, 0.0));
        let lhs = weight(&d, w1 + w2).unwrap();
        prop_assert!(rel_err(lhs, weight(&d, w1).unwrap() * weight(&d, w2).unwrap()) <= 1e-9);
    }

    #[test]
    fn rescaling_equivalence(d in divisor(5), a in cx(1.0), b in cx(1.0)) {
        let (a, b) = (a + 1.5, b - 1.5);
        let e = d.scaled(a).unwrap();
        let f = e.scaled(b).unwrap();
        prop_assert!(equivalent_mod_rescaling(&d, &d).is_some());
        let mu = equivalent_mod_rescaling(&d, &e).expect("d ~ e");
        let nu = equivalent_mod_rescaling(&e, &d).expect("e ~ d");
        prop_assert!(d.scaled(mu).unwrap().approx_eq(&e, 1e-8));
        prop_assert!(e.scaled(nu).unwrap().approx_eq(&d, 1e-8));
        let rho = equivalent_mod_rescaling(&d, &f).expect("d ~ f");
        prop_assert!(d.scaled(rho).unwrap().approx_eq(&f, 1e-8));
    }

    #[test]
    fn d1_classification_is_basis_free(a in mat2(1.0), which in 0usize..5, perm: bool) {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        let tau = C64::new(0.2, 1.3);
        let gens: Vec<[C64; 2]> = match which {
            0 => vec![[o, z]],
            1 => vec![[o, z], [z, o]],
            2 => vec![[o, z], [tau, z]],
            3 => vec![[o, z], [tau, z], [z, o]],
            _ => vec![[o, z], [tau, C64::new(2f64.sqrt(), 0.0)], [z, o]],
        };
        let base = classify_d1_subgroup(&gens).unwrap().label;
        let mut moved: Vec<[C64; 2]> = gens
            .iter()
            .map(|v| [a[(0, 0)] * v[0] + a[(0, 1)] * v[1], a[(1, 0)] * v[0] + a[(1, 1)] * v[1]])
            .collect();
        if perm {
            moved.reverse();
        }
        prop_assert_eq!(classify_d1_subgroup(&moved).unwrap().label, base);
    }

    #[test]
    fn gd_products_stay_in_v_d(d in divisor(5), seed: u64) {
        let mut rng = seeded(seed);
        let g = GdElement::new(homsurf::linalg::random_c(&mut rng, 1.0), ExpPoly::random_in(&d, &mut rng));
        let h = GdElement::new(homsurf::linalg::random_c(&mut rng, 1.0), ExpPoly::random_in(&d, &mut rng));
        prop_assume!(d.degree() >= 2);
        prop_assert!(contains(&d, &gd_multiply(&g, &h).f).unwrap());
        prop_assert!(GdGroup::new(d.clone()).unwrap().contains(&gd_multiply(&g, &h).f));
    }

    #[test]
    fn centralizer_commutes_with_gd(d in commensurable(), seed: u64) {
        prop_assume!(d.degree() >= 2);
        let mut rng = seeded(seed);
        let cg = CentralizerGroup::new(d.clone()).unwrap();
        let gd = GdGroup::new(d).unwrap();
        for _ in 0..10 {
            let k = cg.random_element(&mut rng);
            let g = gd.random_element(&mut rng);
            let x = AffinePoint::random(&mut rng, 0.5);
            let lhs = centralizer_act(&cg, &k, &gd_act(&g, &x)).unwrap();
            let rhs = gd_act(&g, &centralizer_act(&cg, &k, &x).unwrap());
            prop_assert!(lhs.distance(&rhs) <= 1e-8, "{:?} vs {:?}", lhs, rhs);
        }
    }

    #[test]
    fn sym_power_is_multiplicative(g in mat2(1.0), h in mat2(1.0), n in 0usize..5) {
        let lhs = sym_power_rep(&(g * h), n);
        let rhs = sym_power_rep(&g, n) * sym_power_rep(&h, n);
        let scale = lhs.iter().map(|x| x.norm()).fold(1.0, f64::max);
        prop_assert!((lhs - rhs).iter().all(|x| x.norm() <= 1e-9 * scale));
        let id = sym_power_rep(&Mat2::identity(), n);
        let is_id = id.iter().enumerate().all(|(i, x)| (x - if i % (n + 2) == 0 { 1.0 } else { 0.0 }).norm() < 1e-12);
        prop_assert!(is_id);
    }

    #[test]
    fn quadric_cover_intertwines_conic_action(seed: u64) {
        let mut rng = seeded(seed);
        let g = Quadric.random_element(&mut rng);
        let q = Quadric.random_point(&mut rng);
        let [a, b, cc] = quadric_double_cover(&q).coords();
        prop_assert!((b * b - 4.0 * a * cc).norm() > 0.0);
        let lhs = quadric_double_cover(&Quadric.act(&g, &q).unwrap());
        let rhs: Proj2Point = quadric_double_cover(&q).transform(&conic_action(&g.g).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-9);
    }

    #[test]
    fn sc_compositions_normalize(seed: u64, which in 0usize..3) {
        let mut rng = seeded(seed);
        let cc = [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0)][which];
        let d = SCData::new([C64::new(1.0, 0.0), C64::new(0.0, 1.0)], cc).unwrap();
        let p = random_biholomorphism(&d, &mut rng, 3);
        let q = random_biholomorphism(&d, &mut rng, 3);
        let fwd = |x: &AffinePoint| biholo_apply(&q, &biholo_apply(&p, x).ok()?).ok();
        let inv = |y: &AffinePoint| biholo_inverse(&p, &biholo_inverse(&q, y).ok()?).ok();
        prop_assert!(normalizes_deck_map(&d, &fwd, &inv));
    }
}

#[test]
fn every_family_acts_faithfully() {
    for f in FamilyId::all() {
        let r = family_action(&f).unwrap().faithfulness(&mut suite_rng(5, f.label()), 50, 20);
        assert!(r.passed, "{f}: {:?}", r.first_failure);
    }
}

#[test]
fn commutators_match_row_shading() {
    let tau = C64::new(0.1, 1.3);
    let labels = [
        D2Label::D2_1,
        D2Label::D2_2 { tau },
        D2Label::D2_3 { k: 1 },
        D2Label::D2_4 { k: 2, b: C64::new(0.3, 0.1) },
        D2Label::D2_5 { k: 1, b: C64::new(0.2, 0.2), tau },
        D2Label::D2_6 { a: C64::new(0.4, 0.7) },
        D2Label::D2_7 { k: 0 },
        D2Label::D2_8 { k: 1, tau },
        D2Label::D2_9 { k: 0 },
        D2Label::D2_10 { k: 0 },
        D2Label::D2_11 { k: 1 },
        D2Label::D2_12 { k: 0 },
        D2Label::D2_13 { k: 2 },
        D2Label::D2_14 { lattice: vec![C64::new(0.5, 0.3), C64::new(-0.2, 0.9)] },
    ];
    for l in labels {
        let gens = l.generators();
        let nontrivial = gens
            .iter()
            .flat_map(|g| gens.iter().map(move |h| commutator(g, h)))
            .any(|k| k.distance(&UAffElement::identity()) > 1e-9);
        assert_eq!(nontrivial, !l.is_abelian(), "{}", l.name());
    }
}

#[test]
fn product_covers_are_pi_invariant() {
    let mut rng = seeded(21);
    let tau = C64::new(0.1, 1.3);
    let labels = [
        D2Label::D2_1,
        D2Label::D2_2 { tau },
        D2Label::D2_3 { k: 1 },
        D2Label::D2_4 { k: 2, b: C64::new(0.3, 0.1) },
        D2Label::D2_6 { a: C64::new(0.4, 0.7) },
    ];
    for l in labels {
        for _ in 0..100 {
            let x = UAffElement::new(homsurf::linalg::random_c(&mut rng, 1.0), homsurf::linalg::random_c(&mut rng, 1.0));
            let y = product_cover(&l, &x).unwrap();
            for p in l.generators() {
                // π acts on the right of the group manifold
                let moved = product_cover(&l, &x.mul(&p)).unwrap();
                assert!(y.distance(&moved) < 1e-9, "{} at {x:?}", l.name());
            }
        }
    }
}

#[test]
fn quotient_covers_are_local_diffeomorphisms() {
    let mut rng = seeded(22);
    for q in example_quotients() {
        for _ in 0..100 {
            let x = AffinePoint::random(&mut rng, 0.5);
            assert!(q.jacobian_minor(&x) > 1e-6, "{}", q.label().name());
        }
    }
}
