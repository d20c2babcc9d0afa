//! Points of the model surfaces.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{random_c, Mat2, Mat3};
use crate::scalar::{cx, Cx};
use crate::tolerance::rel_err;
use crate::C64;

/// Point of C².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffinePoint {
    #[serde(with = "cx")]
    pub z: C64,
    #[serde(with = "cx")]
    pub w: C64,
}

impl AffinePoint {
    pub fn new(z: C64, w: C64) -> Self {
        AffinePoint { z, w }
    }

    pub fn distance(&self, other: &AffinePoint) -> f64 {
        rel_err(self.z, other.z).max(rel_err(self.w, other.w))
    }

    pub fn random(rng: &mut dyn RngCore, r: f64) -> Self {
        AffinePoint::new(random_c(rng, r), random_c(rng, r))
    }
}

/// Point `[Z1 : Z2]` of P¹, scaled so the larger coordinate is 1.
/// The affine coordinate is `z = Z1/Z2`; infinity is `[1 : 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProjWire", into = "ProjWire")]
pub struct ProjPoint {
    z1: C64,
    z2: C64,
}

#[derive(Serialize, Deserialize)]
struct ProjWire {
    z1: Cx,
    z2: Cx,
}

impl TryFrom<ProjWire> for ProjPoint {
    type Error = Error;
    fn try_from(w: ProjWire) -> Result<Self> {
        ProjPoint::new(w.z1.into(), w.z2.into())
    }
}

impl From<ProjPoint> for ProjWire {
    fn from(p: ProjPoint) -> Self {
        ProjWire { z1: p.z1.into(), z2: p.z2.into() }
    }
}

impl ProjPoint {
    pub fn new(z1: C64, z2: C64) -> Result<Self> {
        if z1.norm() == 0.0 && z2.norm() == 0.0 || !(z1.norm().is_finite() && z2.norm().is_finite()) {
            return Err(Error::OutsideDomain("[0 : 0] is not a point of P^1".into()));
        }
        Ok(if z2.norm() >= z1.norm() {
            ProjPoint { z1: z1 / z2, z2: C64::new(1.0, 0.0) }
        } else {
            ProjPoint { z1: C64::new(1.0, 0.0), z2: z2 / z1 }
        })
    }

    pub fn affine(z: C64) -> Self {
        ProjPoint::new(z, C64::new(1.0, 0.0)).expect("finite affine point")
    }

    pub fn infinity() -> Self {
        ProjPoint { z1: C64::new(1.0, 0.0), z2: C64::new(0.0, 0.0) }
    }

    pub fn coords(&self) -> [C64; 2] {
        [self.z1, self.z2]
    }

    /// `Z1/Z2`, or `None` at infinity.
    pub fn affine_coord(&self) -> Option<C64> {
        (self.z2.norm() > 0.0).then(|| self.z1 / self.z2)
    }

    /// Chordal distance.
    pub fn distance(&self, other: &ProjPoint) -> f64 {
        let num = (self.z1 * other.z2 - self.z2 * other.z1).norm();
        let na = (self.z1.norm_sqr() + self.z2.norm_sqr()).sqrt();
        let nb = (other.z1.norm_sqr() + other.z2.norm_sqr()).sqrt();
        num / (na * nb)
    }

    /// Möbius action of an invertible 2×2 matrix.
    pub fn mobius(&self, g: &Mat2) -> Result<Self> {
        ProjPoint::new(
            g[(0, 0)] * self.z1 + g[(0, 1)] * self.z2,
            g[(1, 0)] * self.z1 + g[(1, 1)] * self.z2,
        )
    }

    pub fn random(rng: &mut dyn RngCore) -> Self {
        loop {
            if let Ok(p) = ProjPoint::new(random_c(rng, 1.0), random_c(rng, 1.0)) {
                return p;
            }
        }
    }
}

/// Point of P², scaled so the largest coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Proj2Wire", into = "Proj2Wire")]
pub struct Proj2Point {
    x: [C64; 3],
}

#[derive(Serialize, Deserialize)]
struct Proj2Wire {
    x: [Cx; 3],
}

impl TryFrom<Proj2Wire> for Proj2Point {
    type Error = Error;
    fn try_from(w: Proj2Wire) -> Result<Self> {
        Proj2Point::new(w.x.map(C64::from))
    }
}

impl From<Proj2Point> for Proj2Wire {
    fn from(p: Proj2Point) -> Self {
        Proj2Wire { x: p.x.map(Cx::from) }
    }
}

impl Proj2Point {
    pub fn new(x: [C64; 3]) -> Result<Self> {
        let k = (0..3)
            .max_by(|&i, &j| x[i].norm().total_cmp(&x[j].norm()))
            .unwrap();
        if x[k].norm() == 0.0 || !x[k].norm().is_finite() {
            return Err(Error::OutsideDomain("[0 : 0 : 0] is not a point of P^2".into()));
        }
        Ok(Proj2Point { x: x.map(|v| v / x[k]) })
    }

    pub fn coords(&self) -> [C64; 3] {
        self.x
    }

    pub fn distance(&self, other: &Proj2Point) -> f64 {
        crate::linalg::projective_distance(&self.x, &other.x)
    }

    pub fn transform(&self, m: &Mat3) -> Result<Self> {
        let v = m * nalgebra::Vector3::from(self.x);
        Proj2Point::new([v[0], v[1], v[2]])
    }

    pub fn random(rng: &mut dyn RngCore) -> Self {
        loop {
            if let Ok(p) = Proj2Point::new([random_c(rng, 1.0), random_c(rng, 1.0), random_c(rng, 1.0)]) {
                return p;
            }
        }
    }
}

/// Point of P¹ × C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinePoint {
    pub p: ProjPoint,
    #[serde(with = "cx")]
    pub w: C64,
}

impl LinePoint {
    pub fn distance(&self, other: &LinePoint) -> f64 {
        self.p.distance(&other.p).max(rel_err(self.w, other.w))
    }
}

/// Point of P¹ × P¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairPoint {
    pub p: ProjPoint,
    pub q: ProjPoint,
}

impl PairPoint {
    pub fn distance(&self, other: &PairPoint) -> f64 {
        self.p.distance(&other.p).max(self.q.distance(&other.q))
    }
}

/// Ordered pair of distinct points of P¹, i.e. a point of `P¹ × P¹ ∖ Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PairPoint", into = "PairPoint")]
pub struct QuadricPoint {
    alpha: ProjPoint,
    beta: ProjPoint,
}

impl TryFrom<PairPoint> for QuadricPoint {
    type Error = Error;
    fn try_from(p: PairPoint) -> Result<Self> {
        QuadricPoint::new(p.p, p.q)
    }
}

impl From<QuadricPoint> for PairPoint {
    fn from(q: QuadricPoint) -> Self {
        PairPoint { p: q.alpha, q: q.beta }
    }
}

impl QuadricPoint {
    pub fn new(alpha: ProjPoint, beta: ProjPoint) -> Result<Self> {
        if alpha.distance(&beta) <= 1e-12 {
            return Err(Error::OutsideDomain("points on the diagonal are excluded".into()));
        }
        Ok(QuadricPoint { alpha, beta })
    }

    pub fn alpha(&self) -> ProjPoint {
        self.alpha
    }

    pub fn beta(&self) -> ProjPoint {
        self.beta
    }

    pub fn swapped(&self) -> Self {
        QuadricPoint { alpha: self.beta, beta: self.alpha }
    }

    pub fn distance(&self, other: &QuadricPoint) -> f64 {
        self.alpha.distance(&other.alpha).max(self.beta.distance(&other.beta))
    }

    pub fn random(rng: &mut dyn RngCore) -> Self {
        loop {
            if let Ok(q) = QuadricPoint::new(ProjPoint::random(rng), ProjPoint::random(rng)) {
                if q.alpha.distance(&q.beta) > 0.05 {
                    return q;
                }
            }
        }
    }
}
