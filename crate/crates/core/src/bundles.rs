//! The elliptic curve bundles `S_c = C² / π` over `C^×` and their biholomorphisms.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ComplexLattice;
use crate::laurent::Laurent;
use crate::points::AffinePoint;
use crate::rational;
use crate::scalar::{cx, cx_vec, two_pi_i};
use crate::tolerance::{rel_err, ROOT_OF_UNITY_BOUND};
use crate::C64;

const MEMBER_TOL: f64 = 1e-7;
const SAMPLES: usize = 50;

/// `Λ` and `c` with `c Λ = Λ`; `π` is generated by `(z + 1, c w)` and the `Λ`-translations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SCWire", into = "SCWire")]
pub struct SCData {
    lattice: ComplexLattice,
    c: C64,
}

#[derive(Serialize, Deserialize)]
struct SCWire {
    #[serde(with = "cx_vec")]
    lattice: Vec<C64>,
    #[serde(with = "cx")]
    c: C64,
}

impl TryFrom<SCWire> for SCData {
    type Error = Error;
    fn try_from(w: SCWire) -> Result<Self> {
        if w.lattice.len() != 2 {
            return Err(Error::Invalid("lattice needs two generators".into()));
        }
        SCData::new([w.lattice[0], w.lattice[1]], w.c)
    }
}

impl From<SCData> for SCWire {
    fn from(d: SCData) -> Self {
        SCWire { lattice: d.lattice.basis().to_vec(), c: d.c }
    }
}

/// Which row of the biholomorphism table applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum SCCase {
    One,
    MinusOne,
    /// `c = e^{2πi p/q} ≠ ±1`.
    Root { p: i64, q: i64 },
}

impl SCData {
    pub fn new(basis: [C64; 2], c: C64) -> Result<Self> {
        let lattice = ComplexLattice::from_basis(basis.to_vec())?;
        if c.norm() == 0.0 || !lattice.preserved_by(c, MEMBER_TOL) {
            return Err(Error::ConstraintViolation("c Λ = Λ".into()));
        }
        Ok(SCData { lattice, c })
    }

    pub fn lattice(&self) -> &ComplexLattice {
        &self.lattice
    }

    pub fn c(&self) -> C64 {
        self.c
    }

    pub fn case(&self) -> SCCase {
        if rel_err(self.c, C64::new(1.0, 0.0)) <= MEMBER_TOL {
            return SCCase::One;
        }
        if rel_err(self.c, C64::new(-1.0, 0.0)) <= MEMBER_TOL {
            return SCCase::MinusOne;
        }
        let x = self.c.ln() / two_pi_i();
        let r = rational::reconstruct(x.re, ROOT_OF_UNITY_BOUND)
            .expect("c Λ = Λ forces a root of unity");
        SCCase::Root { p: r.num, q: r.den }
    }
}

/// The deck transformation `(z, w) ↦ (z + k, c^k w + λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeckElement {
    pub k: i64,
    #[serde(with = "cx")]
    pub lambda: C64,
}

impl DeckElement {
    pub fn apply(&self, d: &SCData, x: &AffinePoint) -> AffinePoint {
        AffinePoint::new(x.z + self.k as f64, d.c.powi(self.k as i32) * x.w + self.lambda)
    }
}

/// `(z + 1, c w)`, `(z, w + ω_1)`, `(z, w + ω_2)`.
pub fn deck_generators(d: &SCData) -> Vec<DeckElement> {
    let mut out = vec![DeckElement { k: 1, lambda: C64::new(0.0, 0.0) }];
    out.extend(d.lattice.basis().iter().map(|&l| DeckElement { k: 0, lambda: l }));
    out
}

/// A row of the biholomorphism table; `f` is a Laurent polynomial in `e^{2πiz}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SCBiholomorphism {
    #[serde(flatten)]
    pub case: SCCase,
    /// `+1` or `-1`.
    pub sign: i8,
    #[serde(with = "cx")]
    pub z0: C64,
    #[serde(with = "cx")]
    pub b: C64,
    #[serde(with = "cx")]
    pub lambda0: C64,
    pub f: Laurent,
}

impl SCBiholomorphism {
    fn a(&self, z: C64) -> Result<C64> {
        let e = (two_pi_i() * z).exp();
        let f = self.f.eval(e);
        Ok(match self.case {
            SCCase::One => f,
            SCCase::MinusOne => self.lambda0 / 2.0 + (C64::new(0.0, PI) * z).exp() * f,
            SCCase::Root { p, q } => {
                let c = (two_pi_i() * (p as f64 / q as f64)).exp();
                self.lambda0 / (1.0 - c) + (two_pi_i() * z * (p as f64 / q as f64)).exp() * f
            }
        })
    }

    fn check(&self) -> Result<()> {
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::Invalid("sign must be ±1".into()));
        }
        if matches!(self.case, SCCase::Root { .. }) && self.sign != 1 {
            return Err(Error::FamilyMismatch("c ≠ ±1 allows only the + sign".into()));
        }
        if self.b.norm() == 0.0 {
            return Err(Error::ConstraintViolation("b ≠ 0".into()));
        }
        Ok(())
    }
}

/// `(±z + z_0, b w + a(z))` with `a` from the row of the table.
pub fn biholo_apply(phi: &SCBiholomorphism, x: &AffinePoint) -> Result<AffinePoint> {
    phi.check()?;
    Ok(AffinePoint::new(phi.sign as f64 * x.z + phi.z0, phi.b * x.w + phi.a(x.z)?))
}

pub fn biholo_inverse(phi: &SCBiholomorphism, y: &AffinePoint) -> Result<AffinePoint> {
    phi.check()?;
    let z = (y.z - phi.z0) * phi.sign as f64;
    Ok(AffinePoint::new(z, (y.w - phi.a(z)?) / phi.b))
}

/// The deck element `h` with `φ ∘ g = h ∘ φ` at every sample point, if there is one.
fn conjugate(
    d: &SCData,
    phi: &dyn Fn(&AffinePoint) -> Option<AffinePoint>,
    g: &DeckElement,
    pts: &[AffinePoint],
) -> Option<DeckElement> {
    let mut found: Option<DeckElement> = None;
    for x in pts {
        let y0 = phi(x)?;
        let y1 = phi(&g.apply(d, x))?;
        let kf = (y1.z - y0.z).re;
        if (y1.z - y0.z).im.abs() > MEMBER_TOL {
            return None;
        }
        let k = rational::near_integer(kf, MEMBER_TOL)?;
        let lambda = y1.w - d.c.powi(k as i32) * y0.w;
        // cancellation error grows with |w|
        let scale = 1f64.max(y0.w.norm()).max(y1.w.norm());
        if !d.lattice.contains(lambda, MEMBER_TOL * scale) {
            return None;
        }
        match found {
            None => found = Some(DeckElement { k, lambda }),
            Some(h) if h.k == k && (h.lambda - lambda).norm() <= MEMBER_TOL * scale => {}
            Some(_) => return None,
        }
    }
    found
}

fn sample_points() -> Vec<AffinePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c);
    (0..SAMPLES)
        .map(|_| {
            AffinePoint::new(
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.1..0.1)),
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
        })
        .collect()
}

/// Whether `φ π φ^{-1} = π`, for a map given with its inverse.
pub fn normalizes_deck_map(
    d: &SCData,
    forward: &dyn Fn(&AffinePoint) -> Option<AffinePoint>,
    inverse: &dyn Fn(&AffinePoint) -> Option<AffinePoint>,
) -> bool {
    let pts = sample_points();
    deck_generators(d).iter().all(|g| {
        conjugate(d, forward, g, &pts).is_some() && conjugate(d, inverse, g, &pts).is_some()
    })
}

/// Whether `φ` descends to `S_c`: it and its inverse conjugate each deck generator into `π`.
pub fn normalizes_deck(phi: &SCBiholomorphism, d: &SCData) -> bool {
    if phi.case != d.case() {
        return false;
    }
    normalizes_deck_map(
        d,
        &|x| biholo_apply(phi, x).ok(),
        &|y| biholo_inverse(phi, y).ok(),
    )
}

/// A random member of the family for `d`, with `f` of degree at most `max_deg`.
pub fn random_biholomorphism(d: &SCData, rng: &mut dyn rand::RngCore, max_deg: i64) -> SCBiholomorphism {
    let case = d.case();
    let units: Vec<C64> = (0..12)
        .map(|j| C64::from_polar(1.0, PI * j as f64 / 6.0))
        .filter(|u| d.lattice.preserved_by(*u, MEMBER_TOL))
        .collect();
    let b = units[rng.gen_range(0..units.len())];
    let basis = d.lattice.basis();
    let lambda0 = basis[0] * rng.gen_range(-3i32..=3) as f64 + basis[1] * rng.gen_range(-3i32..=3) as f64;
    let sign = match case {
        SCCase::Root { .. } => 1,
        _ => {
            if rng.gen_bool(0.5) {
                1
            } else {
                -1
            }
        }
    };
    SCBiholomorphism {
        case,
        sign,
        z0: C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.05..0.05)),
        b,
        lambda0: if case == SCCase::One { C64::new(0.0, 0.0) } else { lambda0 },
        f: Laurent::random(rng, max_deg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn square(cc: C64) -> SCData {
        SCData::new([c(1.0, 0.0), c(0.0, 1.0)], cc).unwrap()
    }

    fn phi(case: SCCase, sign: i8, b: C64, lambda0: C64) -> SCBiholomorphism {
        SCBiholomorphism { case, sign, z0: c(0.0, 0.0), b, lambda0, f: Laurent::default() }
    }

    #[test]
    fn deck_examples() {
        let d = square(c(-1.0, 0.0));
        let g = deck_generators(&d)[0];
        let x = AffinePoint::new(c(0.2, 0.1), c(1.0, 2.0));
        let y = g.apply(&d, &g.apply(&d, &x));
        assert!(y.distance(&AffinePoint::new(x.z + 2.0, x.w)) < 1e-15);
        assert!(SCData::new([c(1.0, 0.0), c(0.3, 1.0)], c(0.0, 1.0)).is_err());
        assert_eq!(square(c(0.0, 1.0)).case(), SCCase::Root { p: 1, q: 4 });
    }

    #[test]
    fn table_examples() {
        let d = square(c(-1.0, 0.0));
        let x = AffinePoint::new(c(0.2, 0.1), c(1.0, 2.0));
        let flip = phi(SCCase::MinusOne, 1, c(-1.0, 0.0), c(0.0, 0.0));
        assert!(biholo_apply(&flip, &x).unwrap().distance(&AffinePoint::new(x.z, -x.w)) < 1e-15);
        assert!(normalizes_deck(&flip, &d));
        let third = phi(SCCase::MinusOne, 1, c(1.0, 0.0), c(2.0 / 3.0, 0.0));
        assert!(!normalizes_deck(&third, &d));
        assert!(normalizes_deck(&phi(SCCase::One, 1, c(1.0, 0.0), c(0.0, 0.0)), &square(c(1.0, 0.0))));
    }

    #[test]
    fn random_members_normalize_and_corruptions_fail() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for cc in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)] {
            let d = square(cc);
            for _ in 0..20 {
                let p = random_biholomorphism(&d, &mut rng, 8);
                assert!(normalizes_deck(&p, &d), "{p:?}");
                let mut bad = p.clone();
                bad.b = c(1.3, 0.0);
                assert!(!normalizes_deck(&bad, &d));
            }
        }
    }

    #[test]
    fn compositions_normalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let d = square(c(0.0, -1.0));
        let p = random_biholomorphism(&d, &mut rng, 4);
        let q = random_biholomorphism(&d, &mut rng, 4);
        let fwd = |x: &AffinePoint| biholo_apply(&q, &biholo_apply(&p, x).ok()?).ok();
        let inv = |y: &AffinePoint| biholo_inverse(&p, &biholo_inverse(&q, y).ok()?).ok();
        assert!(normalizes_deck_map(&d, &fwd, &inv));
    }
}
