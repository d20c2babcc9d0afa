//! Seeded verification suites, one per family.

use std::hash::Hasher;

use fnv::FnvHasher;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::actions::{family_action, CheckResult, FAITHFULNESS, FamilyId, GroupAction, Quadric};
use crate::bbeta::{
    centralizer_act, example_quotients, gd_act, rgd_act, rgd_quotients, CentralizerGroup, GdElement, RgdGroup,
};
use crate::divisor::Divisor;
use crate::error::Result;
use crate::exppoly::ExpPoly;
use crate::linalg::{c, random_c};
use crate::points::{AffinePoint, QuadricPoint};
use crate::projective::{on_act_in_chart, OnGroup, quadric_double_cover, quadric_embed, quadric_preimages, BundlePoint};
use crate::scalar::two_pi_i;
use crate::tolerance::{eps, rel_err, rel_err_slice};
use crate::uaff::{aut_apply, commutator, uaff_matrix, uaff_multiply, UAffAutomorphism, UAffElement, UAffGroup};

/// Matrix oracle and commutator identity tolerance.
pub const UAFF_TOL: f64 = 1e-10;
/// Chart-overlap tolerance for O(n).
pub const CHART_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub checks: Vec<CheckResult>,
    pub samples: usize,
    /// Largest residual; faithfulness records an inverse displacement and is left out.
    pub max_error: f64,
    pub passed: bool,
}

impl VerificationReport {
    fn new(family: &FamilyId, samples: usize, checks: Vec<CheckResult>) -> Self {
        let max_error = checks.iter().filter(|c| c.check != FAITHFULNESS).map(|c| c.max_error).fold(0.0, f64::max);
        let passed = checks.iter().all(|c| c.passed);
        VerificationReport { family: family.label().into(), checks, samples, max_error, passed }
    }
}

/// The suite RNG for `(seed, label)`.
pub fn suite_rng(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h = FnvHasher::default();
    h.write_u64(seed);
    h.write(label.as_bytes());
    ChaCha8Rng::seed_from_u64(h.finish())
}

/// Run the suite of `family` with `samples` samples per check.
pub fn verify_family(family: &FamilyId, samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = suite_rng(seed, family.label());
    let tol = eps();
    let action = family_action(family)?;
    let mut checks = vec![
        action.group_axioms(&mut rng, samples, tol),
        action.action_axioms(&mut rng, samples, tol),
        action.faithfulness(&mut rng, samples, 20),
    ];
    use FamilyId::*;
    match family {
        D2 => {
            checks.push(uaff_matrix_oracle(&mut rng, samples));
            checks.push(uaff_automorphisms(&mut rng, samples));
            checks.push(uaff_commutator(&mut rng, samples));
        }
        C9 => {
            checks.push(quadric_identity(&mut rng, samples, tol));
            checks.push(quadric_double_cover_check(&mut rng, samples, tol));
        }
        BDelta3 { n } | BDelta4 { n } => {
            checks.push(chart_consistency(&OnGroup { n: *n, special: matches!(family, BDelta3 { .. }) }, &mut rng, samples));
        }
        BBeta1 { .. } => checks.push(bbeta1_covers(&mut rng, samples, tol)),
        BBeta2 { .. } => checks.push(bbeta2_cover(&mut rng, samples, tol)),
        _ => {}
    }
    Ok(VerificationReport::new(family, samples, checks))
}

/// Every family with default parameters, in table order.
pub fn verify_all(samples: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    FamilyId::all().iter().map(|f| verify_family(f, samples, seed)).collect()
}

pub fn uaff_matrix_oracle(rng: &mut dyn RngCore, samples: usize) -> CheckResult {
    let mut out = CheckResult::new("uAff matrix oracle", UAFF_TOL);
    let grp = UAffGroup;
    for _ in 0..samples {
        let (g, h) = (grp.random_element(rng), grp.random_element(rng));
        let prod = uaff_matrix(&uaff_multiply(&g, &h));
        let oracle = uaff_matrix(&g) * uaff_matrix(&h);
        let err = rel_err_slice(prod.as_slice(), oracle.as_slice());
        out.record(err, || format!("g={g:?} h={h:?}"));
    }
    out
}

fn random_automorphism(rng: &mut dyn RngCore) -> UAffAutomorphism {
    let beta = random_c(rng, 1.0) + c(1.5, 0.0);
    UAffAutomorphism::new(random_c(rng, 1.0), beta).expect("beta is nonzero")
}

/// `(γ, β)` maps are homomorphisms; `samples` maps at `samples` pairs each, capped at 100 pairs.
pub fn uaff_automorphisms(rng: &mut dyn RngCore, samples: usize) -> CheckResult {
    let mut out = CheckResult::new("uAff automorphisms", UAFF_TOL);
    let grp = UAffGroup;
    for _ in 0..samples {
        let phi = random_automorphism(rng);
        for _ in 0..samples.min(100) {
            let (g, h) = (grp.random_element(rng), grp.random_element(rng));
            let lhs = aut_apply(&phi, &g.mul(&h));
            let rhs = aut_apply(&phi, &g).mul(&aut_apply(&phi, &h));
            out.record(lhs.distance(&rhs), || format!("phi={phi:?} g={g:?} h={h:?}"));
        }
    }
    out
}

/// `[(a, b), (0, 1)] = (0, e^a − 1)`.
pub fn uaff_commutator(rng: &mut dyn RngCore, samples: usize) -> CheckResult {
    let mut out = CheckResult::new("commutator identity", UAFF_TOL);
    for _ in 0..samples {
        let g = UAffElement::new(random_c(rng, 1.0), random_c(rng, 1.0));
        let got = commutator(&g, &UAffElement::new(c(0.0, 0.0), c(1.0, 0.0)));
        let want = UAffElement::new(c(0.0, 0.0), g.a.exp() - 1.0);
        out.record(got.distance(&want), || format!("g={g:?}"));
    }
    out
}

pub fn quadric_identity(rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult {
    let mut out = CheckResult::new("quadric identity y² − 4xz = 1", tol);
    for _ in 0..samples {
        let q = Quadric.random_point(rng);
        let [x, y, z] = quadric_embed(&q);
        out.record(rel_err(y * y - 4.0 * x * z, c(1.0, 0.0)), || format!("{q:?}"));
    }
    out
}

/// Swap invariance and exactly two preimages, found by solving the quadratic.
pub fn quadric_double_cover_check(rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult {
    let mut out = CheckResult::new("double cover 2-to-1", tol);
    for _ in 0..samples {
        let q: QuadricPoint = Quadric.random_point(rng);
        let p = quadric_double_cover(&q);
        let swap = p.distance(&quadric_double_cover(&q.swapped()));
        let r = quadric_preimages(&p).map(|[a, b]| {
            let image = p.distance(&quadric_double_cover(&a)).max(p.distance(&quadric_double_cover(&b)));
            let hits = q.distance(&a).min(q.distance(&b));
            // the two preimages are distinct ordered pairs
            let distinct = if a.distance(&b) > 1e-6 { 0.0 } else { f64::INFINITY };
            swap.max(image).max(hits).max(distinct)
        });
        out.record_result(r, &format!("{q:?}"));
    }
    out
}

/// Acting in chart 0 agrees with acting in chart 1 and transitioning, on the overlap.
pub fn chart_consistency(grp: &OnGroup, rng: &mut dyn RngCore, samples: usize) -> CheckResult {
    let mut out = CheckResult::new("O(n) chart consistency", CHART_TOL);
    let n = grp.n;
    let mut attempts = 0;
    while out.samples < samples && attempts < 20 * samples {
        attempts += 1;
        let e = grp.random_element(rng);
        let r: f64 = rng.gen_range(0.5..2.0);
        let z = crate::C64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
        let x = BundlePoint::chart0(z, random_c(rng, 1.0));
        let (Ok(a), Ok(b)) = (on_act_in_chart(&e, &x, 0), on_act_in_chart(&e, &x, 1)) else {
            continue;
        };
        let Ok(b0) = b.in_chart(n, 0) else { continue };
        let err = rel_err(a.z, b0.z).max(rel_err(a.w, b0.w));
        out.record(err, || format!("e={e:?} x={x:?}"));
    }
    if out.samples < samples {
        out.fail(format!("only {} overlap samples found", out.samples));
    }
    out
}

/// Invariance under `π` and `G_D`-equivariance of the example quotient covers.
pub fn bbeta1_covers(rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult {
    let mut out = CheckResult::new("Bβ1 quotient covers", tol);
    for q in example_quotients() {
        let grp = CentralizerGroup::new(q.divisor().clone()).expect("example divisor");
        let name = q.label().name();
        for _ in 0..samples {
            let x = AffinePoint::random(rng, 0.5);
            let y = q.cover(&x);
            for p in q.pi_generators() {
                let r = centralizer_act(&grp, &p, &x).map(|px| y.distance(&q.cover(&px)));
                out.record_result(r, &format!("{name} invariance at {x:?}"));
            }
            let g = GdElement::new(random_c(rng, 0.5), ExpPoly::random_in(q.divisor(), rng));
            let lhs = q.cover(&gd_act(&g, &x));
            let r = q.act(&g, &y).map(|rhs| lhs.distance(&rhs));
            out.record_result(r, &format!("{name} equivariance at {x:?}"));
        }
    }
    out
}

/// The rG_D quotient for `D = [0] + [2πi] + [6πi]`, `n = 2`.
pub fn bbeta2_cover(rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult {
    let mut out = CheckResult::new("Bβ2′ quotient cover", tol);
    let d = Divisor::simple(&[c(0.0, 0.0), two_pi_i(), two_pi_i() * 3.0]).expect("valid divisor");
    let q = rgd_quotients(&d, 2).expect("Q_D is nontrivial");
    let grp = RgdGroup::new(d).expect("degree 3");
    for _ in 0..samples {
        let x = AffinePoint::random(rng, 1.0);
        let g = grp.random_element(rng);
        let lhs = q.cover(&rgd_act(&g, &x));
        let r = q.act(&g, &q.cover(&x)).map(|rhs| lhs.distance(&rhs));
        out.record_result(r, &format!("equivariance at {x:?}"));
        let px = rgd_act(&q.pi_generator(), &x);
        out.record(q.cover(&px).distance(&q.cover(&x)), || format!("invariance at {x:?}"));
    }
    out
}
