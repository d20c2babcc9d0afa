//! The families whose groups are classical: projective, affine and product groups.

use nalgebra::Vector2;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::GroupAction;
use crate::error::{Error, Result};
use crate::linalg::{self, c, entries2, entries3, random_c, Mat2, Mat3};
use crate::points::{AffinePoint, LinePoint, PairPoint, Proj2Point, ProjPoint, QuadricPoint};
use crate::scalar::cx;
use crate::tolerance::rel_err;
use crate::C64;

fn inv2(m: &Mat2) -> Result<Mat2> {
    m.try_inverse().ok_or_else(|| Error::Invalid("singular matrix".into()))
}

fn pdist2(a: &Mat2, b: &Mat2) -> f64 {
    linalg::projective_distance(&entries2(a), &entries2(b))
}

/// A1: `PSL₃` on P².
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePlane;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pgl3Element {
    #[serde(with = "linalg::mat3")]
    pub m: Mat3,
}

impl GroupAction for ProjectivePlane {
    type Element = Pgl3Element;
    type Point = Proj2Point;

    fn identity(&self) -> Pgl3Element {
        Pgl3Element { m: Mat3::identity() }
    }
    fn multiply(&self, g: &Pgl3Element, h: &Pgl3Element) -> Result<Pgl3Element> {
        Ok(Pgl3Element { m: g.m * h.m })
    }
    fn inverse(&self, g: &Pgl3Element) -> Result<Pgl3Element> {
        g.m.try_inverse()
            .map(|m| Pgl3Element { m })
            .ok_or_else(|| Error::Invalid("singular matrix".into()))
    }
    fn act(&self, g: &Pgl3Element, x: &Proj2Point) -> Result<Proj2Point> {
        x.transform(&g.m)
    }
    fn element_distance(&self, g: &Pgl3Element, h: &Pgl3Element) -> f64 {
        linalg::projective_distance(&entries3(&g.m), &entries3(&h.m))
    }
    fn point_distance(&self, x: &Proj2Point, y: &Proj2Point) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> Pgl3Element {
        Pgl3Element { m: linalg::random_gl3(rng) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> Proj2Point {
        Proj2Point::random(rng)
    }
}

/// A2 (`GL₂ ⋉ C²`) and A3 (`SL₂ ⋉ C²`) on C².
#[derive(Debug, Clone, PartialEq)]
pub struct AffinePlane {
    pub special: bool,
}

/// `x ↦ m x + v`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineElement {
    #[serde(with = "linalg::mat2")]
    pub m: Mat2,
    #[serde(with = "crate::scalar::cx_vec")]
    pub v: Vec<C64>,
}

impl AffineElement {
    fn vec(&self) -> Result<Vector2<C64>> {
        match self.v.as_slice() {
            [a, b] => Ok(Vector2::new(*a, *b)),
            _ => Err(Error::Invalid("translation part needs two entries".into())),
        }
    }
}

impl GroupAction for AffinePlane {
    type Element = AffineElement;
    type Point = AffinePoint;

    fn identity(&self) -> AffineElement {
        AffineElement { m: Mat2::identity(), v: vec![c(0.0, 0.0); 2] }
    }
    fn multiply(&self, g: &AffineElement, h: &AffineElement) -> Result<AffineElement> {
        let v = g.m * h.vec()? + g.vec()?;
        Ok(AffineElement { m: g.m * h.m, v: vec![v[0], v[1]] })
    }
    fn inverse(&self, g: &AffineElement) -> Result<AffineElement> {
        let mi = inv2(&g.m)?;
        let v = -(mi * g.vec()?);
        Ok(AffineElement { m: mi, v: vec![v[0], v[1]] })
    }
    fn act(&self, g: &AffineElement, x: &AffinePoint) -> Result<AffinePoint> {
        if self.special && rel_err(g.m.determinant(), c(1.0, 0.0)) > 1e-8 {
            return Err(Error::ConstraintViolation("determinant must be 1".into()));
        }
        let y = g.m * Vector2::new(x.z, x.w) + g.vec()?;
        Ok(AffinePoint::new(y[0], y[1]))
    }
    fn element_distance(&self, g: &AffineElement, h: &AffineElement) -> f64 {
        linalg::mat_distance(&entries2(&g.m), &entries2(&h.m)).max(linalg::mat_distance(&g.v, &h.v))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> AffineElement {
        let m = if self.special { linalg::random_sl2(rng) } else { linalg::random_gl2(rng) };
        AffineElement { m, v: vec![random_c(rng, 1.0), random_c(rng, 1.0)] }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// C2: `C × Aff(C)` acting by `(z, w) ↦ (z + t, a w + b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationTimesAffine;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct C2Element {
    #[serde(with = "cx")]
    pub t: C64,
    #[serde(with = "cx")]
    pub a: C64,
    #[serde(with = "cx")]
    pub b: C64,
}

impl GroupAction for TranslationTimesAffine {
    type Element = C2Element;
    type Point = AffinePoint;

    fn identity(&self) -> C2Element {
        C2Element { t: c(0.0, 0.0), a: c(1.0, 0.0), b: c(0.0, 0.0) }
    }
    fn multiply(&self, g: &C2Element, h: &C2Element) -> Result<C2Element> {
        Ok(C2Element { t: g.t + h.t, a: g.a * h.a, b: g.a * h.b + g.b })
    }
    fn inverse(&self, g: &C2Element) -> Result<C2Element> {
        if g.a.norm() == 0.0 {
            return Err(Error::Invalid("a must be nonzero".into()));
        }
        Ok(C2Element { t: -g.t, a: 1.0 / g.a, b: -g.b / g.a })
    }
    fn act(&self, g: &C2Element, x: &AffinePoint) -> Result<AffinePoint> {
        Ok(AffinePoint::new(x.z + g.t, g.a * x.w + g.b))
    }
    fn element_distance(&self, g: &C2Element, h: &C2Element) -> f64 {
        rel_err(g.t, h.t).max(rel_err(g.a, h.a)).max(rel_err(g.b, h.b))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> C2Element {
        C2Element { t: random_c(rng, 1.0), a: linalg::random_unitish(rng, 0.5, 2.0), b: random_c(rng, 1.0) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// C3: `Aff(C) × Aff(C)` acting factorwise.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSquared;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct C3Element {
    #[serde(with = "cx")]
    pub a1: C64,
    #[serde(with = "cx")]
    pub b1: C64,
    #[serde(with = "cx")]
    pub a2: C64,
    #[serde(with = "cx")]
    pub b2: C64,
}

impl GroupAction for AffineSquared {
    type Element = C3Element;
    type Point = AffinePoint;

    fn identity(&self) -> C3Element {
        C3Element { a1: c(1.0, 0.0), b1: c(0.0, 0.0), a2: c(1.0, 0.0), b2: c(0.0, 0.0) }
    }
    fn multiply(&self, g: &C3Element, h: &C3Element) -> Result<C3Element> {
        Ok(C3Element {
            a1: g.a1 * h.a1,
            b1: g.a1 * h.b1 + g.b1,
            a2: g.a2 * h.a2,
            b2: g.a2 * h.b2 + g.b2,
        })
    }
    fn inverse(&self, g: &C3Element) -> Result<C3Element> {
        if g.a1.norm() == 0.0 || g.a2.norm() == 0.0 {
            return Err(Error::Invalid("scalings must be nonzero".into()));
        }
        Ok(C3Element { a1: 1.0 / g.a1, b1: -g.b1 / g.a1, a2: 1.0 / g.a2, b2: -g.b2 / g.a2 })
    }
    fn act(&self, g: &C3Element, x: &AffinePoint) -> Result<AffinePoint> {
        Ok(AffinePoint::new(g.a1 * x.z + g.b1, g.a2 * x.w + g.b2))
    }
    fn element_distance(&self, g: &C3Element, h: &C3Element) -> f64 {
        [rel_err(g.a1, h.a1), rel_err(g.b1, h.b1), rel_err(g.a2, h.a2), rel_err(g.b2, h.b2)]
            .into_iter()
            .fold(0.0, f64::max)
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> C3Element {
        C3Element {
            a1: linalg::random_unitish(rng, 0.5, 2.0),
            b1: random_c(rng, 1.0),
            a2: linalg::random_unitish(rng, 0.5, 2.0),
            b2: random_c(rng, 1.0),
        }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// C5 (`PSL₂ × C`, translations on the second factor) and C6
/// (`PSL₂ × Aff(C)`) on P¹ × C.
#[derive(Debug, Clone, PartialEq)]
pub struct LineTimesPlane {
    pub affine: bool,
}

/// `(x, w) ↦ (g x, a w + b)`; for C5 `a = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineTimesPlaneElement {
    #[serde(with = "linalg::mat2")]
    pub g: Mat2,
    #[serde(with = "cx", default = "one")]
    pub a: C64,
    #[serde(with = "cx")]
    pub b: C64,
}

fn one() -> C64 {
    c(1.0, 0.0)
}

impl GroupAction for LineTimesPlane {
    type Element = LineTimesPlaneElement;
    type Point = LinePoint;

    fn identity(&self) -> LineTimesPlaneElement {
        LineTimesPlaneElement { g: Mat2::identity(), a: one(), b: c(0.0, 0.0) }
    }
    fn multiply(&self, g: &LineTimesPlaneElement, h: &LineTimesPlaneElement) -> Result<LineTimesPlaneElement> {
        Ok(LineTimesPlaneElement { g: g.g * h.g, a: g.a * h.a, b: g.a * h.b + g.b })
    }
    fn inverse(&self, g: &LineTimesPlaneElement) -> Result<LineTimesPlaneElement> {
        if g.a.norm() == 0.0 {
            return Err(Error::Invalid("a must be nonzero".into()));
        }
        Ok(LineTimesPlaneElement { g: inv2(&g.g)?, a: 1.0 / g.a, b: -g.b / g.a })
    }
    fn act(&self, g: &LineTimesPlaneElement, x: &LinePoint) -> Result<LinePoint> {
        if !self.affine && rel_err(g.a, one()) > 1e-12 {
            return Err(Error::ConstraintViolation("C5 acts by translations on C".into()));
        }
        Ok(LinePoint { p: x.p.mobius(&g.g)?, w: g.a * x.w + g.b })
    }
    fn element_distance(&self, g: &LineTimesPlaneElement, h: &LineTimesPlaneElement) -> f64 {
        pdist2(&g.g, &h.g).max(rel_err(g.a, h.a)).max(rel_err(g.b, h.b))
    }
    fn point_distance(&self, x: &LinePoint, y: &LinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> LineTimesPlaneElement {
        let a = if self.affine { linalg::random_unitish(rng, 0.5, 2.0) } else { one() };
        LineTimesPlaneElement { g: linalg::random_gl2(rng), a, b: random_c(rng, 1.0) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> LinePoint {
        LinePoint { p: ProjPoint::random(rng), w: random_c(rng, 1.0) }
    }
}

/// C7: `PSL₂ × PSL₂` on P¹ × P¹.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSquared;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineSquaredElement {
    #[serde(with = "linalg::mat2")]
    pub g: Mat2,
    #[serde(with = "linalg::mat2")]
    pub h: Mat2,
}

impl GroupAction for LineSquared {
    type Element = LineSquaredElement;
    type Point = PairPoint;

    fn identity(&self) -> LineSquaredElement {
        LineSquaredElement { g: Mat2::identity(), h: Mat2::identity() }
    }
    fn multiply(&self, a: &LineSquaredElement, b: &LineSquaredElement) -> Result<LineSquaredElement> {
        Ok(LineSquaredElement { g: a.g * b.g, h: a.h * b.h })
    }
    fn inverse(&self, a: &LineSquaredElement) -> Result<LineSquaredElement> {
        Ok(LineSquaredElement { g: inv2(&a.g)?, h: inv2(&a.h)? })
    }
    fn act(&self, a: &LineSquaredElement, x: &PairPoint) -> Result<PairPoint> {
        Ok(PairPoint { p: x.p.mobius(&a.g)?, q: x.q.mobius(&a.h)? })
    }
    fn element_distance(&self, a: &LineSquaredElement, b: &LineSquaredElement) -> f64 {
        pdist2(&a.g, &b.g).max(pdist2(&a.h, &b.h))
    }
    fn point_distance(&self, x: &PairPoint, y: &PairPoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> LineSquaredElement {
        LineSquaredElement { g: linalg::random_gl2(rng), h: linalg::random_gl2(rng) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> PairPoint {
        PairPoint { p: ProjPoint::random(rng), q: ProjPoint::random(rng) }
    }
}

/// C8: `C ⋉ C²` acting by `(z, w) ↦ (e^t z + v₁, e^{α t} w + v₂)`, `α ≠ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTranslations {
    pub alpha: C64,
}

impl WeightedTranslations {
    pub fn new(alpha: C64) -> Result<Self> {
        if rel_err(alpha, one()) <= 1e-12 {
            return Err(Error::ConstraintViolation("α must differ from 1".into()));
        }
        Ok(WeightedTranslations { alpha })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct C8Element {
    #[serde(with = "cx")]
    pub t: C64,
    #[serde(with = "cx")]
    pub v1: C64,
    #[serde(with = "cx")]
    pub v2: C64,
}

impl GroupAction for WeightedTranslations {
    type Element = C8Element;
    type Point = AffinePoint;

    fn identity(&self) -> C8Element {
        C8Element { t: c(0.0, 0.0), v1: c(0.0, 0.0), v2: c(0.0, 0.0) }
    }
    fn multiply(&self, g: &C8Element, h: &C8Element) -> Result<C8Element> {
        Ok(C8Element {
            t: g.t + h.t,
            v1: g.t.exp() * h.v1 + g.v1,
            v2: (self.alpha * g.t).exp() * h.v2 + g.v2,
        })
    }
    fn inverse(&self, g: &C8Element) -> Result<C8Element> {
        Ok(C8Element {
            t: -g.t,
            v1: -(-g.t).exp() * g.v1,
            v2: -(-self.alpha * g.t).exp() * g.v2,
        })
    }
    fn act(&self, g: &C8Element, x: &AffinePoint) -> Result<AffinePoint> {
        Ok(AffinePoint::new(g.t.exp() * x.z + g.v1, (self.alpha * g.t).exp() * x.w + g.v2))
    }
    fn element_distance(&self, g: &C8Element, h: &C8Element) -> f64 {
        rel_err(g.t, h.t).max(rel_err(g.v1, h.v1)).max(rel_err(g.v2, h.v2))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> C8Element {
        C8Element { t: random_c(rng, 0.7), v1: random_c(rng, 1.0), v2: random_c(rng, 1.0) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// C9: `PSL₂` acting diagonally on `P¹ × P¹ ∖ Δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadric;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pgl2Element {
    #[serde(with = "linalg::mat2")]
    pub g: Mat2,
}

impl GroupAction for Quadric {
    type Element = Pgl2Element;
    type Point = QuadricPoint;

    fn identity(&self) -> Pgl2Element {
        Pgl2Element { g: Mat2::identity() }
    }
    fn multiply(&self, a: &Pgl2Element, b: &Pgl2Element) -> Result<Pgl2Element> {
        Ok(Pgl2Element { g: a.g * b.g })
    }
    fn inverse(&self, a: &Pgl2Element) -> Result<Pgl2Element> {
        Ok(Pgl2Element { g: inv2(&a.g)? })
    }
    fn act(&self, a: &Pgl2Element, x: &QuadricPoint) -> Result<QuadricPoint> {
        QuadricPoint::new(x.alpha().mobius(&a.g)?, x.beta().mobius(&a.g)?)
    }
    fn element_distance(&self, a: &Pgl2Element, b: &Pgl2Element) -> f64 {
        pdist2(&a.g, &b.g)
    }
    fn point_distance(&self, x: &QuadricPoint, y: &QuadricPoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> Pgl2Element {
        Pgl2Element { g: linalg::random_sl2(rng) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> QuadricPoint {
        QuadricPoint::random(rng)
    }
}

/// D1: C² acting on itself by translation.
#[derive(Debug, Clone, PartialEq)]
pub struct Translations;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationElement {
    #[serde(with = "cx")]
    pub v1: C64,
    #[serde(with = "cx")]
    pub v2: C64,
}

impl GroupAction for Translations {
    type Element = TranslationElement;
    type Point = AffinePoint;

    fn identity(&self) -> TranslationElement {
        TranslationElement { v1: c(0.0, 0.0), v2: c(0.0, 0.0) }
    }
    fn multiply(&self, g: &TranslationElement, h: &TranslationElement) -> Result<TranslationElement> {
        Ok(TranslationElement { v1: g.v1 + h.v1, v2: g.v2 + h.v2 })
    }
    fn inverse(&self, g: &TranslationElement) -> Result<TranslationElement> {
        Ok(TranslationElement { v1: -g.v1, v2: -g.v2 })
    }
    fn act(&self, g: &TranslationElement, x: &AffinePoint) -> Result<AffinePoint> {
        Ok(AffinePoint::new(x.z + g.v1, x.w + g.v2))
    }
    fn element_distance(&self, g: &TranslationElement, h: &TranslationElement) -> f64 {
        rel_err(g.v1, h.v1).max(rel_err(g.v2, h.v2))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> TranslationElement {
        TranslationElement { v1: random_c(rng, 1.0), v2: random_c(rng, 1.0) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// D3: `C^× ⋉ C²` acting by `(z, w) ↦ (e^s z + v₁, e^s w + v₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingsAndTranslations;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct D3Element {
    #[serde(with = "cx")]
    pub s: C64,
    #[serde(with = "cx")]
    pub v1: C64,
    #[serde(with = "cx")]
    pub v2: C64,
}

impl GroupAction for ScalingsAndTranslations {
    type Element = D3Element;
    type Point = AffinePoint;

    fn identity(&self) -> D3Element {
        D3Element { s: c(0.0, 0.0), v1: c(0.0, 0.0), v2: c(0.0, 0.0) }
    }
    fn multiply(&self, g: &D3Element, h: &D3Element) -> Result<D3Element> {
        let k = g.s.exp();
        Ok(D3Element { s: g.s + h.s, v1: k * h.v1 + g.v1, v2: k * h.v2 + g.v2 })
    }
    fn inverse(&self, g: &D3Element) -> Result<D3Element> {
        let k = (-g.s).exp();
        Ok(D3Element { s: -g.s, v1: -k * g.v1, v2: -k * g.v2 })
    }
    fn act(&self, g: &D3Element, x: &AffinePoint) -> Result<AffinePoint> {
        let k = g.s.exp();
        Ok(AffinePoint::new(k * x.z + g.v1, k * x.w + g.v2))
    }
    fn element_distance(&self, g: &D3Element, h: &D3Element) -> f64 {
        // the group is C^×, so s only matters through e^s
        rel_err(g.s.exp(), h.s.exp()).max(rel_err(g.v1, h.v1)).max(rel_err(g.v2, h.v2))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> D3Element {
        D3Element { s: random_c(rng, 0.7), v1: random_c(rng, 1.0), v2: random_c(rng, 1.0) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

