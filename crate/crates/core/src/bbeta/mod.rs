//! The groups `G_D = C ⋉ V_D` (Bβ1) and `rG_D = C × C^× × V_D` (Bβ2) acting on C²,
//! the maps between them, the centralizer `Q_D ⋊ C`, and the quotients.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::actions::GroupAction;
use crate::divisor::{quasiperiod_group, weight_in, Divisor, QuasiperiodGroup};
use crate::error::{Error, Result};
use crate::exppoly::{self, monic_polynomial, DiffOperator, ExpPoly};
use crate::linalg::{random_c, random_unitish};
use crate::points::AffinePoint;
use crate::scalar::cx;
use crate::tolerance::{eps, rel_err};
use crate::C64;

mod quotients;

pub use quotients::*;

fn check_degree(d: &Divisor) -> Result<()> {
    if d.degree() < 2 {
        return Err(Error::ConstraintViolation("deg D >= 2".into()));
    }
    Ok(())
}

fn poly_distance(f: &ExpPoly, g: &ExpPoly) -> f64 {
    (f - g).max_abs() / f.max_abs().max(g.max_abs()).max(1.0)
}

/// `(t, f)` with `f ∈ V_D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GdElement {
    #[serde(with = "cx")]
    pub t: C64,
    pub f: ExpPoly,
}

impl GdElement {
    pub fn new(t: C64, f: ExpPoly) -> Self {
        GdElement { t, f }
    }
}

/// Bβ1: `G_D` acting by `(z, w) ↦ (z + t, w + f(z + t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GdGroup {
    divisor: Divisor,
    op: DiffOperator,
}

impl GdGroup {
    pub fn new(divisor: Divisor) -> Result<Self> {
        check_degree(&divisor)?;
        let op = monic_polynomial(&divisor)?;
        Ok(GdGroup { divisor, op })
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    /// Whether `f ∈ V_D`.
    pub fn contains(&self, f: &ExpPoly) -> bool {
        in_space(&self.op, f)
    }

    /// An element, checking `f ∈ V_D`.
    pub fn element(&self, t: C64, f: ExpPoly) -> Result<GdElement> {
        if !self.contains(&f) {
            return Err(Error::NotInSpace);
        }
        Ok(GdElement { t, f })
    }
}

fn in_space(op: &DiffOperator, f: &ExpPoly) -> bool {
    let r = exppoly::apply_operator(op, f);
    r.max_abs() <= 1e-9 * f.max_abs().max(1.0)
}

pub fn gd_multiply(g: &GdElement, h: &GdElement) -> GdElement {
    GdElement {
        t: g.t + h.t,
        f: &g.f + &h.f.translate(g.t),
    }
}

pub fn gd_inverse(g: &GdElement) -> GdElement {
    GdElement { t: -g.t, f: -&g.f.translate(-g.t) }
}

pub fn gd_act(g: &GdElement, x: &AffinePoint) -> AffinePoint {
    let z = x.z + g.t;
    AffinePoint::new(z, x.w + g.f.evaluate(z))
}

impl GroupAction for GdGroup {
    type Element = GdElement;
    type Point = AffinePoint;

    fn identity(&self) -> GdElement {
        GdElement::new(C64::new(0.0, 0.0), ExpPoly::zero())
    }
    fn multiply(&self, g: &GdElement, h: &GdElement) -> Result<GdElement> {
        if !self.contains(&g.f) || !self.contains(&h.f) {
            return Err(Error::DivisorMismatch);
        }
        Ok(gd_multiply(g, h))
    }
    fn inverse(&self, g: &GdElement) -> Result<GdElement> {
        Ok(gd_inverse(g))
    }
    fn act(&self, g: &GdElement, x: &AffinePoint) -> Result<AffinePoint> {
        Ok(gd_act(g, x))
    }
    fn element_distance(&self, g: &GdElement, h: &GdElement) -> f64 {
        rel_err(g.t, h.t).max(poly_distance(&g.f, &h.f))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> GdElement {
        GdElement::new(random_c(rng, 1.0), ExpPoly::random_in(&self.divisor, rng))
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// `(t, λ, f)` with `λ ≠ 0`, `f ∈ V_D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RgdElement {
    #[serde(with = "cx")]
    pub t: C64,
    #[serde(with = "cx")]
    pub lambda: C64,
    pub f: ExpPoly,
}

/// Bβ2: `rG_D` acting by `(z, w) ↦ (z + t, λ w + f(z + t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct RgdGroup {
    divisor: Divisor,
    op: DiffOperator,
}

impl RgdGroup {
    pub fn new(divisor: Divisor) -> Result<Self> {
        check_degree(&divisor)?;
        let op = monic_polynomial(&divisor)?;
        Ok(RgdGroup { divisor, op })
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn contains(&self, f: &ExpPoly) -> bool {
        in_space(&self.op, f)
    }

    pub fn element(&self, t: C64, lambda: C64, f: ExpPoly) -> Result<RgdElement> {
        if lambda.norm() == 0.0 {
            return Err(Error::ConstraintViolation("lambda != 0".into()));
        }
        if !self.contains(&f) {
            return Err(Error::NotInSpace);
        }
        Ok(RgdElement { t, lambda, f })
    }
}

pub fn rgd_multiply(g: &RgdElement, h: &RgdElement) -> RgdElement {
    RgdElement {
        t: g.t + h.t,
        lambda: g.lambda * h.lambda,
        f: &g.f + &(&h.f.translate(g.t) * g.lambda),
    }
}

pub fn rgd_inverse(g: &RgdElement) -> RgdElement {
    RgdElement {
        t: -g.t,
        lambda: 1.0 / g.lambda,
        f: &g.f.translate(-g.t) * (-1.0 / g.lambda),
    }
}

pub fn rgd_act(g: &RgdElement, x: &AffinePoint) -> AffinePoint {
    let z = x.z + g.t;
    AffinePoint::new(z, g.lambda * x.w + g.f.evaluate(z))
}

impl GroupAction for RgdGroup {
    type Element = RgdElement;
    type Point = AffinePoint;

    fn identity(&self) -> RgdElement {
        RgdElement { t: C64::new(0.0, 0.0), lambda: C64::new(1.0, 0.0), f: ExpPoly::zero() }
    }
    fn multiply(&self, g: &RgdElement, h: &RgdElement) -> Result<RgdElement> {
        if !self.contains(&g.f) || !self.contains(&h.f) {
            return Err(Error::DivisorMismatch);
        }
        if g.lambda.norm() == 0.0 || h.lambda.norm() == 0.0 {
            return Err(Error::ConstraintViolation("lambda != 0".into()));
        }
        Ok(rgd_multiply(g, h))
    }
    fn inverse(&self, g: &RgdElement) -> Result<RgdElement> {
        if g.lambda.norm() == 0.0 {
            return Err(Error::ConstraintViolation("lambda != 0".into()));
        }
        Ok(rgd_inverse(g))
    }
    fn act(&self, g: &RgdElement, x: &AffinePoint) -> Result<AffinePoint> {
        Ok(rgd_act(g, x))
    }
    fn element_distance(&self, g: &RgdElement, h: &RgdElement) -> f64 {
        rel_err(g.t, h.t)
            .max(rel_err(g.lambda, h.lambda))
            .max(poly_distance(&g.f, &h.f))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> RgdElement {
        RgdElement {
            t: random_c(rng, 1.0),
            lambda: random_unitish(rng, 0.5, 2.0),
            f: ExpPoly::random_in(&self.divisor, rng),
        }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// `(ϖ, s)`, acting by `(z, w) ↦ (z + ϖ, γ_ϖ w + s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralizerElement {
    #[serde(with = "cx")]
    pub varpi: C64,
    #[serde(with = "cx")]
    pub s: C64,
}

impl CentralizerElement {
    pub fn new(varpi: C64, s: C64) -> Self {
        CentralizerElement { varpi, s }
    }
}

/// `Q_D ⋊ C`, the biholomorphisms of C² commuting with `G_D`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralizerGroup {
    divisor: Divisor,
    q: QuasiperiodGroup,
}

impl CentralizerGroup {
    pub fn new(divisor: Divisor) -> Result<Self> {
        check_degree(&divisor)?;
        let q = quasiperiod_group(&divisor)?;
        Ok(CentralizerGroup { divisor, q })
    }

    pub fn quasiperiods(&self) -> QuasiperiodGroup {
        self.q
    }

    pub fn weight(&self, varpi: C64) -> Result<C64> {
        weight_in(&self.divisor, &self.q, varpi)
    }
}

pub fn centralizer_multiply(
    c: &CentralizerGroup,
    g: &CentralizerElement,
    h: &CentralizerElement,
) -> Result<CentralizerElement> {
    let gamma = c.weight(g.varpi)?;
    c.weight(h.varpi)?;
    Ok(CentralizerElement::new(g.varpi + h.varpi, g.s + gamma * h.s))
}

pub fn centralizer_act(c: &CentralizerGroup, g: &CentralizerElement, x: &AffinePoint) -> Result<AffinePoint> {
    let gamma = c.weight(g.varpi)?;
    Ok(AffinePoint::new(x.z + g.varpi, gamma * x.w + g.s))
}

impl GroupAction for CentralizerGroup {
    type Element = CentralizerElement;
    type Point = AffinePoint;

    fn identity(&self) -> CentralizerElement {
        CentralizerElement::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }
    fn multiply(&self, g: &CentralizerElement, h: &CentralizerElement) -> Result<CentralizerElement> {
        centralizer_multiply(self, g, h)
    }
    fn inverse(&self, g: &CentralizerElement) -> Result<CentralizerElement> {
        let gamma = self.weight(g.varpi)?;
        Ok(CentralizerElement::new(-g.varpi, -g.s / gamma))
    }
    fn act(&self, g: &CentralizerElement, x: &AffinePoint) -> Result<AffinePoint> {
        centralizer_act(self, g, x)
    }
    fn element_distance(&self, g: &CentralizerElement, h: &CentralizerElement) -> f64 {
        rel_err(g.varpi, h.varpi).max(rel_err(g.s, h.s))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> CentralizerElement {
        use rand::Rng;
        let varpi = match self.q {
            QuasiperiodGroup::RankOne { generator } => generator * rng.gen_range(-3i32..=3) as f64,
            QuasiperiodGroup::AllOfC => random_c(rng, 1.0),
            QuasiperiodGroup::Trivial => C64::new(0.0, 0.0),
        };
        CentralizerElement::new(varpi, random_c(rng, 1.0))
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// The three families of equivariant maps `(δ, h)` out of `G_D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GdMorphism {
    /// `δ = g`, `h = Ad(g)`.
    Inner { g: GdElement },
    /// Onto `G_{μD}`: `δ(z, w) = (z/μ, ν w)`, `h(t, f) = (t/μ, ν f(μ z))`.
    Rescale {
        #[serde(with = "cx")]
        mu: C64,
        #[serde(with = "cx")]
        nu: C64,
    },
    /// `δ(z, w) = (z, w + f0(z))`, `h(t, f) = (t, f + f0 - f0(z - t))`, `f0 ∈ V_{D+[0]}`.
    Shear { f0: ExpPoly },
}

impl GdMorphism {
    /// Check the parameters against the source divisor and return the target divisor.
    pub fn target(&self, d: &Divisor) -> Result<Divisor> {
        match self {
            GdMorphism::Inner { g } => {
                if !in_space(&monic_polynomial(d)?, &g.f) {
                    return Err(Error::NotInSpace);
                }
                Ok(d.clone())
            }
            GdMorphism::Rescale { mu, nu } => {
                if mu.norm() == 0.0 || nu.norm() == 0.0 {
                    return Err(Error::ConstraintViolation("mu, nu != 0".into()));
                }
                d.scaled(*mu)
            }
            GdMorphism::Shear { f0 } => {
                let d0 = d.plus(&Divisor::simple(&[C64::new(0.0, 0.0)])?)?;
                if !in_space(&monic_polynomial(&d0)?, f0) {
                    return Err(Error::NotInSpace);
                }
                Ok(d.clone())
            }
        }
    }

    pub fn delta(&self, x: &AffinePoint) -> AffinePoint {
        match self {
            GdMorphism::Inner { g } => gd_act(g, x),
            GdMorphism::Rescale { mu, nu } => AffinePoint::new(x.z / mu, nu * x.w),
            GdMorphism::Shear { f0 } => AffinePoint::new(x.z, x.w + f0.evaluate(x.z)),
        }
    }

    pub fn h(&self, e: &GdElement) -> GdElement {
        match self {
            GdMorphism::Inner { g } => gd_multiply(&gd_multiply(g, e), &gd_inverse(g)),
            GdMorphism::Rescale { mu, nu } => GdElement::new(e.t / mu, &e.f.rescale_arg(*mu) * *nu),
            GdMorphism::Shear { f0 } => GdElement::new(e.t, &(&e.f + f0) - &f0.translate(e.t)),
        }
    }
}

/// The three families of equivariant maps out of `rG_D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RgdMorphism {
    Inner { g: RgdElement },
    /// Onto `rG_{μD}`: `δ(z, w) = (z/μ, ν w)`, `h(t, λ, f) = (t/μ, λ, ν f(μ z))`.
    Rescale {
        #[serde(with = "cx")]
        mu: C64,
        #[serde(with = "cx")]
        nu: C64,
    },
    /// Onto `rG_{D+a}`: `δ(z, w) = (z, e^{az} w)`, `h(t, λ, f) = (t, e^{at} λ, e^{az} f)`.
    Twist {
        #[serde(with = "cx")]
        a: C64,
    },
}

impl RgdMorphism {
    pub fn target(&self, d: &Divisor) -> Result<Divisor> {
        match self {
            RgdMorphism::Inner { g } => {
                if !in_space(&monic_polynomial(d)?, &g.f) {
                    return Err(Error::NotInSpace);
                }
                Ok(d.clone())
            }
            RgdMorphism::Rescale { mu, nu } => {
                if mu.norm() == 0.0 || nu.norm() == 0.0 {
                    return Err(Error::ConstraintViolation("mu, nu != 0".into()));
                }
                d.scaled(*mu)
            }
            RgdMorphism::Twist { a } => d.shifted(*a),
        }
    }

    pub fn delta(&self, x: &AffinePoint) -> AffinePoint {
        match self {
            RgdMorphism::Inner { g } => rgd_act(g, x),
            RgdMorphism::Rescale { mu, nu } => AffinePoint::new(x.z / mu, nu * x.w),
            RgdMorphism::Twist { a } => AffinePoint::new(x.z, (a * x.z).exp() * x.w),
        }
    }

    pub fn h(&self, e: &RgdElement) -> RgdElement {
        match self {
            RgdMorphism::Inner { g } => rgd_multiply(&rgd_multiply(g, e), &rgd_inverse(g)),
            RgdMorphism::Rescale { mu, nu } => RgdElement {
                t: e.t / mu,
                lambda: e.lambda,
                f: &e.f.rescale_arg(*mu) * *nu,
            },
            RgdMorphism::Twist { a } => RgdElement {
                t: e.t,
                lambda: (a * e.t).exp() * e.lambda,
                f: e.f.mul_exp(*a),
            },
        }
    }
}

/// Tolerance used when testing membership of quasiperiods and lattices.
pub(crate) fn tol() -> f64 {
    eps().max(1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exppoly::Polynomial;
    use crate::scalar::two_pi_i;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn double_zero() -> Divisor {
        Divisor::new(vec![(c(0.0, 0.0), 2)]).unwrap()
    }

    fn z_poly() -> ExpPoly {
        ExpPoly::from_terms([(c(0.0, 0.0), Polynomial::new(vec![c(0.0, 0.0), c(1.0, 0.0)]))])
    }

    #[test]
    fn gd_examples() {
        let g = GdElement::new(c(1.0, 0.0), z_poly());
        let gg = gd_multiply(&g, &g);
        assert!((gg.t - 2.0).norm() < 1e-12);
        assert!((gg.f.evaluate(c(3.0, 0.0)) - 5.0).norm() < 1e-12);
        let x = gd_act(&g, &AffinePoint::new(c(0.0, 0.0), c(0.0, 0.0)));
        assert!((x.z - 1.0).norm() < 1e-12 && (x.w - 1.0).norm() < 1e-12);
        let grp = GdGroup::new(double_zero()).unwrap();
        let e = gd_multiply(&g, &gd_inverse(&g));
        assert!(grp.element_distance(&e, &grp.identity()) < 1e-12);
    }

    #[test]
    fn rgd_example() {
        let g = RgdElement { t: c(1.0, 0.0), lambda: c(2.0, 0.0), f: z_poly() };
        let x = rgd_act(&g, &AffinePoint::new(c(0.0, 0.0), c(5.0, 0.0)));
        assert!((x.z - 1.0).norm() < 1e-12 && (x.w - 11.0).norm() < 1e-12);
    }

    #[test]
    fn centralizer_weights() {
        let d = Divisor::simple(&[c(0.0, std::f64::consts::PI), c(0.0, 3.0 * std::f64::consts::PI)]).unwrap();
        let grp = CentralizerGroup::new(d).unwrap();
        let g = CentralizerElement::new(c(1.0, 0.0), c(1.0, 0.0));
        let gg = grp.multiply(&g, &g).unwrap();
        assert!((gg.varpi - 2.0).norm() < 1e-12 && gg.s.norm() < 1e-12);
        let bad = CentralizerElement::new(c(0.5, 0.0), c(0.0, 0.0));
        assert_eq!(grp.multiply(&bad, &g), Err(Error::NotAQuasiperiod));
    }

    #[test]
    fn rescale_targets_mu_d() {
        let d = Divisor::simple(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let m = GdMorphism::Rescale { mu: c(2.0, 0.0), nu: c(1.0, 0.0) };
        let e = m.target(&d).unwrap();
        assert!(e.approx_eq(&Divisor::simple(&[c(2.0, 0.0), c(4.0, 0.0)]).unwrap(), 1e-12));
        let y = m.delta(&AffinePoint::new(c(4.0, 0.0), c(1.0, 0.0)));
        assert!((y.z - 2.0).norm() < 1e-12);
    }

    #[test]
    fn twist_targets_shifted_divisor() {
        let m = RgdMorphism::Twist { a: c(1.0, 0.0) };
        let e = m.target(&double_zero()).unwrap();
        assert_eq!(e.mult_at(c(1.0, 0.0)), 2);
        let y = m.delta(&AffinePoint::new(c(1.0, 0.0), c(1.0, 0.0)));
        assert!((y.w - std::f64::consts::E).norm() < 1e-12);
    }

    #[test]
    fn shear_rejects_outside_v_d_plus_zero() {
        let d = Divisor::simple(&[c(0.0, 0.0), two_pi_i()]).unwrap();
        let ok = GdMorphism::Shear { f0: z_poly() };
        assert!(ok.target(&d).is_ok());
        let z2 = ExpPoly::from_terms([(c(0.0, 0.0), Polynomial::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]))]);
        assert_eq!(GdMorphism::Shear { f0: z2 }.target(&d), Err(Error::NotInSpace));
    }

    #[test]
    fn morphisms_are_equivariant() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let d = Divisor::new(vec![(c(0.5, 0.2), 2), (c(-1.0, 0.3), 1)]).unwrap();
        let src = GdGroup::new(d.clone()).unwrap();
        let d0 = d.plus(&Divisor::simple(&[c(0.0, 0.0)]).unwrap()).unwrap();
        let gd_maps = [
            GdMorphism::Inner { g: src.random_element(&mut rng) },
            GdMorphism::Rescale { mu: c(0.7, 0.4), nu: c(-1.2, 0.5) },
            GdMorphism::Shear { f0: ExpPoly::random_in(&d0, &mut rng) },
        ];
        for m in &gd_maps {
            let e = m.target(&d).unwrap();
            let dst = GdGroup::new(e).unwrap();
            for _ in 0..50 {
                let g = src.random_element(&mut rng);
                let x = AffinePoint::random(&mut rng, 1.0);
                let hg = m.h(&g);
                assert!(dst.contains(&hg.f));
                let lhs = m.delta(&gd_act(&g, &x));
                let rhs = gd_act(&hg, &m.delta(&x));
                assert!(lhs.distance(&rhs) < 1e-9, "{m:?}");
            }
        }
        let rsrc = RgdGroup::new(d.clone()).unwrap();
        let rgd_maps = [
            RgdMorphism::Inner { g: rsrc.random_element(&mut rng) },
            RgdMorphism::Rescale { mu: c(0.7, 0.4), nu: c(-1.2, 0.5) },
            RgdMorphism::Twist { a: c(0.3, -0.8) },
        ];
        for m in &rgd_maps {
            let dst = RgdGroup::new(m.target(&d).unwrap()).unwrap();
            for _ in 0..50 {
                let g = rsrc.random_element(&mut rng);
                let x = AffinePoint::random(&mut rng, 1.0);
                let hg = m.h(&g);
                assert!(dst.contains(&hg.f));
                let lhs = m.delta(&rgd_act(&g, &x));
                let rhs = rgd_act(&hg, &m.delta(&x));
                assert!(lhs.distance(&rhs) < 1e-9, "{m:?}");
            }
        }
    }

    #[test]
    fn centralizer_commutes_with_gd() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let d = Divisor::simple(&[c(0.3, 0.1), c(0.3, 0.1) + two_pi_i() * 2.0, c(0.3, 0.1) + two_pi_i() * 3.0]).unwrap();
        let g = GdGroup::new(d.clone()).unwrap();
        let cg = CentralizerGroup::new(d).unwrap();
        for _ in 0..100 {
            let a = g.random_element(&mut rng);
            let b = cg.random_element(&mut rng);
            let x = AffinePoint::random(&mut rng, 1.0);
            let lhs = centralizer_act(&cg, &b, &gd_act(&a, &x)).unwrap();
            let rhs = gd_act(&a, &centralizer_act(&cg, &b, &x).unwrap());
            assert!(lhs.distance(&rhs) < 1e-9);
        }
    }
}
