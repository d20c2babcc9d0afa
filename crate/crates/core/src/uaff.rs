//! The universal cover of the affine group of the line, its automorphisms,
//! and its discrete subgroups (the D2 quotients).

use std::f64::consts::PI;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::actions::GroupAction;
use crate::cover::CoverPoint;
use crate::error::{Error, Result};
use crate::lattice::ComplexLattice;
use crate::linalg::{random_c, Mat3};
use crate::rational;
use crate::scalar::{canonical_sign, cx, cx_vec, two_pi_i};
use crate::tolerance::{rel_err, DENOMINATOR_BOUND};
use crate::C64;

const TOL: f64 = 1e-8;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `(a, b)`, acting on C by `z ↦ e^a z + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UAffElement {
    #[serde(with = "cx")]
    pub a: C64,
    #[serde(with = "cx")]
    pub b: C64,
}

impl UAffElement {
    pub fn new(a: C64, b: C64) -> Self {
        UAffElement { a, b }
    }

    pub fn identity() -> Self {
        UAffElement::new(c(0.0, 0.0), c(0.0, 0.0))
    }

    pub fn mul(&self, h: &UAffElement) -> UAffElement {
        UAffElement::new(self.a + h.a, self.b + self.a.exp() * h.b)
    }

    pub fn inv(&self) -> UAffElement {
        UAffElement::new(-self.a, -(-self.a).exp() * self.b)
    }

    /// `gⁿ = (n a, b (e^{n a} - 1)/(e^a - 1))`.
    pub fn pow(&self, n: i64) -> UAffElement {
        let na = self.a * n as f64;
        let ea = self.a.exp();
        let b = if (ea - 1.0).norm() < 1e-12 {
            self.b * n as f64
        } else {
            self.b * (na.exp() - 1.0) / (ea - 1.0)
        };
        UAffElement::new(na, b)
    }

    pub fn distance(&self, other: &UAffElement) -> f64 {
        rel_err(self.a, other.a).max(rel_err(self.b, other.b))
    }
}

pub fn uaff_multiply(g: &UAffElement, h: &UAffElement) -> UAffElement {
    g.mul(h)
}

/// `[[e^a, 0, b], [0, 1, a], [0, 0, 1]]`
pub fn uaff_matrix(g: &UAffElement) -> Mat3 {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    Mat3::new(g.a.exp(), z, g.b, z, o, g.a, z, z, o)
}

pub fn commutator(g: &UAffElement, h: &UAffElement) -> UAffElement {
    g.mul(h).mul(&g.inv()).mul(&h.inv())
}

/// `(a, b) ↦ (a, γ (1 - e^a) + β b)`, `β ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UAffAutomorphism {
    #[serde(with = "cx")]
    pub gamma: C64,
    #[serde(with = "cx")]
    pub beta: C64,
}

impl UAffAutomorphism {
    pub fn new(gamma: C64, beta: C64) -> Result<Self> {
        if beta.norm() == 0.0 {
            return Err(Error::ConstraintViolation("beta != 0".into()));
        }
        Ok(UAffAutomorphism { gamma, beta })
    }

    pub fn identity() -> Self {
        UAffAutomorphism { gamma: c(0.0, 0.0), beta: c(1.0, 0.0) }
    }

    /// `self ∘ first`
    pub fn after(&self, first: &UAffAutomorphism) -> UAffAutomorphism {
        UAffAutomorphism {
            gamma: self.gamma + self.beta * first.gamma,
            beta: self.beta * first.beta,
        }
    }

    pub fn inverse(&self) -> UAffAutomorphism {
        UAffAutomorphism { gamma: -self.gamma / self.beta, beta: 1.0 / self.beta }
    }
}

pub fn aut_apply(phi: &UAffAutomorphism, g: &UAffElement) -> UAffElement {
    UAffElement::new(g.a, phi.gamma * (1.0 - g.a.exp()) + phi.beta * g.b)
}

/// The normal forms of discrete subgroups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "label")]
pub enum D2Label {
    D2,
    D2_1,
    D2_2 {
        #[serde(with = "cx")]
        tau: C64,
    },
    D2_3 { k: i64 },
    D2_4 {
        k: i64,
        #[serde(with = "cx")]
        b: C64,
    },
    D2_5 {
        k: i64,
        #[serde(with = "cx")]
        b: C64,
        #[serde(with = "cx")]
        tau: C64,
    },
    D2_6 {
        #[serde(with = "cx")]
        a: C64,
    },
    D2_7 { k: i64 },
    D2_8 {
        k: i64,
        #[serde(with = "cx")]
        tau: C64,
    },
    D2_9 { k: i64 },
    D2_10 { k: i64 },
    D2_11 { k: i64 },
    D2_12 { k: i64 },
    D2_13 { k: i64 },
    D2_14 {
        #[serde(with = "cx_vec")]
        lattice: Vec<C64>,
    },
}

fn omega() -> C64 {
    C64::from_polar(1.0, PI / 3.0)
}

impl D2Label {
    pub fn name(&self) -> &'static str {
        use D2Label::*;
        match self {
            D2 => "D2",
            D2_1 => "D2_1",
            D2_2 { .. } => "D2_2",
            D2_3 { .. } => "D2_3",
            D2_4 { .. } => "D2_4",
            D2_5 { .. } => "D2_5",
            D2_6 { .. } => "D2_6",
            D2_7 { .. } => "D2_7",
            D2_8 { .. } => "D2_8",
            D2_9 { .. } => "D2_9",
            D2_10 { .. } => "D2_10",
            D2_11 { .. } => "D2_11",
            D2_12 { .. } => "D2_12",
            D2_13 { .. } => "D2_13",
            D2_14 { .. } => "D2_14",
        }
    }

    /// Whether the table marks the row as nonabelian.
    pub fn is_abelian(&self) -> bool {
        use D2Label::*;
        !matches!(
            self,
            D2_7 { .. } | D2_8 { .. } | D2_9 { .. } | D2_10 { .. } | D2_11 { .. } | D2_12 { .. } | D2_13 { .. }
        )
    }

    /// The generators listed in the table.
    pub fn generators(&self) -> Vec<UAffElement> {
        use D2Label::*;
        let e = UAffElement::new;
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let tpi = two_pi_i();
        let frac = |k: i64, num: f64, den: f64| tpi * (k as f64 + num / den);
        match self {
            D2 => vec![],
            D2_1 => vec![e(z, one)],
            D2_2 { tau } => vec![e(z, one), e(z, *tau)],
            D2_3 { k } => vec![e(tpi * *k as f64, one)],
            D2_4 { k, b } => vec![e(tpi * *k as f64, *b), e(z, one)],
            D2_5 { k, b, tau } => vec![e(tpi * *k as f64, *b), e(z, one), e(z, *tau)],
            D2_6 { a } => vec![e(*a, z)],
            D2_7 { k } => vec![e(frac(*k, 1.0, 2.0), z), e(z, one)],
            D2_8 { k, tau } => vec![e(frac(*k, 1.0, 2.0), z), e(z, one), e(z, *tau)],
            D2_9 { k } => vec![e(tpi * 0.5 * (*k as f64 + 0.5), z), e(z, one), e(z, c(0.0, 1.0))],
            D2_10 { k } => vec![e(frac(*k, 1.0, 6.0), z), e(z, one), e(z, omega())],
            D2_11 { k } => vec![e(frac(*k, 2.0, 6.0), z), e(z, one), e(z, omega())],
            D2_12 { k } => vec![e(frac(*k, 4.0, 6.0), z), e(z, one), e(z, omega())],
            D2_13 { k } => vec![e(frac(*k, 5.0, 6.0), z), e(z, one), e(z, omega())],
            D2_14 { lattice } => lattice.iter().map(|a| e(*a, z)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct D2Classification {
    #[serde(flatten)]
    pub label: D2Label,
    /// `φ` with `φ(π)` the group generated by [`D2Label::generators`].
    pub normalizer: UAffAutomorphism,
    pub generators: Vec<UAffElement>,
}

fn untabulated(msg: &str) -> Error {
    Error::NotTabulated(msg.into())
}

/// Units `u` with `u Λ = Λ` for `Λ = Z[1, τ]`, `τ` reduced.
pub(crate) fn lattice_units(tau: C64) -> Vec<C64> {
    if (tau - c(0.0, 1.0)).norm() < TOL {
        vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
    } else if (tau - omega()).norm() < TOL {
        (0..6).map(|j| C64::from_polar(1.0, PI * j as f64 / 3.0)).collect()
    } else {
        vec![c(1.0, 0.0), c(-1.0, 0.0)]
    }
}

/// Lexicographic order on `(re, im)` with tolerance.
pub(crate) fn lex_less(x: C64, y: C64) -> bool {
    if (x.re - y.re).abs() > TOL {
        x.re < y.re
    } else {
        x.im < y.im - TOL
    }
}

/// Smallest representative of `u b + Λ` over the units `u`.
pub(crate) fn canonical_mod(b: C64, l: &ComplexLattice, units: &[C64]) -> (C64, C64) {
    let mut best = (l.reduce(b), c(1.0, 0.0));
    for &u in units {
        let r = l.reduce(u * b);
        // snap values within tolerance of the parallelogram edge
        let r = if l.contains(r, TOL) { c(0.0, 0.0) } else { r };
        if lex_less(r, best.0) {
            best = (r, u);
        }
    }
    if l.contains(best.0, TOL) {
        best.0 = c(0.0, 0.0);
    }
    best
}

/// Ordered product `Π h_i^{c_i}`.
fn word(h: &[UAffElement], cs: &[i64]) -> UAffElement {
    h.iter()
        .zip(cs)
        .fold(UAffElement::identity(), |acc, (g, &k)| acc.mul(&g.pow(k)))
}

/// `π̄` basis with lifts, and `π_0` as a lattice, for the group generated by `gens`.
struct Structure {
    abar: Vec<C64>,
    lifts: Vec<UAffElement>,
    pi0: ComplexLattice,
}

fn structure(gens: &[UAffElement], max_den: u64) -> Result<Structure> {
    let avs: Vec<Vec<f64>> = gens.iter().map(|g| vec![g.a.re, g.a.im]).collect();
    let basis = crate::lattice::discrete_basis(&avs, max_den)
        .map_err(|_| untabulated("the a-components are not discrete"))?;
    let abar: Vec<C64> = basis.vectors.iter().map(|v| c(v[0], v[1])).collect();
    let lifts: Vec<UAffElement> = basis.combos.iter().map(|cs| word(gens, cs)).collect();
    let abar_l = ComplexLattice::from_basis(abar.clone())?;

    let mut rel: Vec<C64> = Vec::new();
    for g in gens {
        let cs = abar_l.coords(g.a).ok_or_else(|| untabulated("a-component outside the lattice"))?;
        let ks: Vec<i64> = cs.iter().map(|x| x.round() as i64).collect();
        let r = g.mul(&word(&lifts, &ks).inv());
        if r.a.norm() > TOL * g.a.norm().max(1.0) {
            return Err(untabulated("relator with nonzero a-component"));
        }
        rel.push(r.b);
    }
    for i in 0..lifts.len() {
        for j in i + 1..lifts.len() {
            rel.push(commutator(&lifts[i], &lifts[j]).b);
        }
    }
    let scale = rel.iter().map(|b| b.norm()).fold(0.0, f64::max);
    rel.retain(|b| b.norm() > 1e-10 * scale.max(1.0));
    let mut pi0 = ComplexLattice::generated_by(&rel, max_den).map_err(|_| untabulated("π_0 is not discrete"))?;
    for _ in 0..16 {
        let mut more = pi0.basis().to_vec();
        for h in &lifts {
            let u = h.a.exp();
            for b in pi0.basis() {
                more.push(u * b);
                more.push(b / u);
            }
        }
        let next = ComplexLattice::generated_by(&more, max_den).map_err(|_| untabulated("π_0 is not discrete"))?;
        if next.same_as(&pi0, 1e-9) {
            return Ok(Structure { abar, lifts, pi0 });
        }
        pi0 = next;
    }
    Err(untabulated("π_0 closure did not stabilise"))
}

/// Classify with the default denominator bound.
pub fn classify_subgroup(gens: &[UAffElement]) -> Result<D2Classification> {
    classify_subgroup_with_bound(gens, DENOMINATOR_BOUND)
}

pub fn classify_subgroup_with_bound(gens: &[UAffElement], max_den: u64) -> Result<D2Classification> {
    let s = structure(gens, max_den)?;
    let (label, phi) = normal_form(&s)?;
    Ok(D2Classification { generators: label.generators(), label, normalizer: phi })
}

/// Integer `j` with `a = (πi/2)·j`, if any.
fn quarter_turns(a: C64) -> Option<i64> {
    let x = a / c(0.0, PI / 2.0);
    if x.im.abs() > TOL * x.norm().max(1.0) {
        return None;
    }
    rational::near_integer(x.re, TOL)
}

fn normal_form(s: &Structure) -> Result<(D2Label, UAffAutomorphism)> {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let scale = |beta: C64| UAffAutomorphism { gamma: zero, beta };
    match (s.abar.len(), s.pi0.rank()) {
        (0, 0) => Ok((D2Label::D2, UAffAutomorphism::identity())),
        (0, 1) => Ok((D2Label::D2_1, scale(1.0 / s.pi0.basis()[0]))),
        (0, 2) => {
            let (beta, tau) = s.pi0.normal_form().ok_or(Error::NotDiscrete)?;
            Ok((D2Label::D2_2 { tau }, scale(beta)))
        }
        (1, r0) => {
            let mut h = s.lifts[0];
            if canonical_sign(h.a, TOL) != h.a {
                h = h.inv();
            }
            let ea = h.a.exp();
            let (beta, tau, l) = match r0 {
                0 => (one, zero, ComplexLattice::trivial()),
                1 => (1.0 / s.pi0.basis()[0], zero, ComplexLattice::from_basis(vec![one])?),
                _ => {
                    let (beta, tau) = s.pi0.normal_form().ok_or(Error::NotDiscrete)?;
                    (beta, tau, ComplexLattice::from_basis(vec![one, tau])?)
                }
            };
            let b = beta * h.b;
            let trivial_twist = (ea - 1.0).norm() < TOL;
            if trivial_twist {
                let k = quarter_turns(h.a)
                    .filter(|j| j % 4 == 0)
                    .map(|j| j / 4)
                    .ok_or_else(|| untabulated("e^a = 1 off 2πiZ"))?;
                return match r0 {
                    0 if b.norm() < TOL => Ok((D2Label::D2_6 { a: h.a }, scale(beta))),
                    0 => Ok((D2Label::D2_3 { k }, scale(1.0 / h.b))),
                    1 => {
                        let (b, u) = canonical_mod(b, &l, &[one, -one]);
                        Ok((D2Label::D2_4 { k, b }, scale(beta * u)))
                    }
                    _ => {
                        let (b, u) = canonical_mod(b, &l, &lattice_units(tau));
                        Ok((D2Label::D2_5 { k, b, tau }, scale(beta * u)))
                    }
                };
            }
            // kill b: γ (1 - e^a) + b = 0
            let phi = UAffAutomorphism { gamma: -b / (1.0 - ea), beta };
            if r0 == 0 {
                return Ok((D2Label::D2_6 { a: h.a }, phi));
            }
            if !l.preserved_by(ea, 1e-7) {
                return Err(untabulated("e^a does not preserve π_0"));
            }
            let j = quarter_turns(h.a);
            let sixth = {
                let x = h.a / c(0.0, PI / 3.0);
                (x.im.abs() < TOL).then(|| rational::near_integer(x.re, TOL)).flatten()
            };
            let label = match (r0, j, sixth) {
                (1, Some(j), _) | (2, Some(j), _) if j.rem_euclid(4) == 2 => {
                    let k = (j - 2) / 4;
                    if r0 == 1 {
                        D2Label::D2_7 { k }
                    } else {
                        D2Label::D2_8 { k, tau }
                    }
                }
                (2, Some(j), _) if j % 2 != 0 => D2Label::D2_9 { k: (j - 1) / 2 },
                (2, _, Some(m)) => {
                    let k = m.div_euclid(6);
                    match m.rem_euclid(6) {
                        1 => D2Label::D2_10 { k },
                        2 => D2Label::D2_11 { k },
                        4 => D2Label::D2_12 { k },
                        5 => D2Label::D2_13 { k },
                        _ => return Err(untabulated("unexpected rotation")),
                    }
                }
                _ => return Err(untabulated("e^a is not a unit of π_0")),
            };
            Ok((label, phi))
        }
        (2, 0) => {
            let (g1, g2) = (s.lifts[0], s.lifts[1]);
            let (e1, e2) = (1.0 - g1.a.exp(), 1.0 - g2.a.exp());
            let gamma = if e1.norm() >= e2.norm() { -g1.b / e1 } else { -g2.b / e2 };
            let phi = UAffAutomorphism { gamma, beta: one };
            for g in [g1, g2] {
                if aut_apply(&phi, &g).b.norm() > 1e-7 * g.b.norm().max(1.0) {
                    return Err(untabulated("b-components cannot be removed"));
                }
            }
            Ok((D2Label::D2_14 { lattice: s.abar.clone() }, phi))
        }
        _ => Err(untabulated("rank of π̄ and π_0 not in the table")),
    }
}

/// Generator of `π ∩ Z(G)`, the identity when the intersection is trivial.
pub fn center_intersection(label: &D2Label) -> UAffElement {
    use D2Label::*;
    let tpi = two_pi_i();
    let central = |m: i64| UAffElement::new(tpi * m.abs() as f64, c(0.0, 0.0));
    let ident = UAffElement::identity();
    match label {
        D2 | D2_1 | D2_2 { .. } | D2_3 { .. } => ident,
        D2_4 { k, b } => {
            if b.im.abs() > TOL {
                return ident;
            }
            match rational::reconstruct(b.re, DENOMINATOR_BOUND) {
                Some(q) => central(k * q.den),
                None => ident,
            }
        }
        D2_5 { k, b, tau } => {
            let l = ComplexLattice::from_basis(vec![c(1.0, 0.0), *tau]).expect("lattice");
            let cs = l.coords(*b).unwrap_or_default();
            let qs: Option<Vec<rational::Ratio>> =
                cs.iter().map(|x| rational::reconstruct(*x, DENOMINATOR_BOUND)).collect();
            match qs {
                Some(qs) => central(k * rational::lcm_all(qs.iter().map(|q| q.den)) as i64),
                None => ident,
            }
        }
        D2_6 { a } => {
            let x = a / tpi;
            if x.im.abs() > TOL {
                return ident;
            }
            match rational::reconstruct(x.re, DENOMINATOR_BOUND) {
                Some(q) => central(q.num),
                None => ident,
            }
        }
        D2_7 { k } | D2_8 { k, .. } => central(2 * k + 1),
        D2_9 { k } => central(2 * k + 1),
        D2_10 { k } => central(6 * k + 1),
        D2_11 { k } => central(3 * k + 1),
        D2_12 { k } => central(3 * k + 2),
        D2_13 { k } => central(6 * k + 5),
        D2_14 { lattice } => {
            let l = ComplexLattice::from_basis(lattice.clone()).expect("lattice");
            let cs = l.coords(tpi).unwrap_or_default();
            let qs: Option<Vec<rational::Ratio>> =
                cs.iter().map(|x| rational::reconstruct(*x, DENOMINATOR_BOUND)).collect();
            match qs {
                Some(qs) if !qs.is_empty() => central(rational::lcm_all(qs.iter().map(|q| q.den)) as i64),
                _ => ident,
            }
        }
    }
}

/// The product structure on `X / π` for the abelian rows.
pub fn product_cover(label: &D2Label, x: &UAffElement) -> Result<CoverPoint> {
    use D2Label::*;
    let (a, b) = (x.a, x.b);
    let tpi = two_pi_i();
    let ema = (-a).exp();
    let one = c(1.0, 0.0);
    Ok(match label {
        D2 => CoverPoint::plain(vec![a, b]),
        D2_1 => CoverPoint::plain(vec![a, (tpi * ema * b).exp()]),
        D2_2 { tau } => {
            CoverPoint::periodic(vec![a, ema * b], 1, &ComplexLattice::from_basis(vec![one, *tau])?)
        }
        D2_6 { a: a1 } => CoverPoint::plain(vec![(tpi * a / a1).exp(), b]),
        D2_3 { k } => {
            let k = *k as f64;
            CoverPoint::plain(vec![(a / k).exp(), ema * b - a / (tpi * k)])
        }
        D2_4 { k, b: b1 } => {
            let k = *k as f64;
            CoverPoint::plain(vec![(a / k).exp(), (tpi * ema * b - a * b1 / k).exp()])
        }
        D2_5 { k, b: b1, tau } => {
            let k = *k as f64;
            CoverPoint::periodic(
                vec![(a / k).exp(), ema * b - a * b1 / (tpi * k)],
                1,
                &ComplexLattice::from_basis(vec![one, *tau])?,
            )
        }
        D2_14 { lattice } => CoverPoint::periodic(vec![a, b], 0, &ComplexLattice::from_basis(lattice.clone())?),
        _ => return Err(Error::BundleNontrivial),
    })
}

/// D2: uAff(C) acting on itself by left multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct UAffGroup;

impl GroupAction for UAffGroup {
    type Element = UAffElement;
    type Point = UAffElement;

    fn identity(&self) -> UAffElement {
        UAffElement::identity()
    }
    fn multiply(&self, g: &UAffElement, h: &UAffElement) -> Result<UAffElement> {
        Ok(g.mul(h))
    }
    fn inverse(&self, g: &UAffElement) -> Result<UAffElement> {
        Ok(g.inv())
    }
    fn act(&self, g: &UAffElement, x: &UAffElement) -> Result<UAffElement> {
        Ok(g.mul(x))
    }
    fn element_distance(&self, g: &UAffElement, h: &UAffElement) -> f64 {
        g.distance(h)
    }
    fn point_distance(&self, x: &UAffElement, y: &UAffElement) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> UAffElement {
        UAffElement::new(random_c(rng, 1.0), random_c(rng, 1.0))
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> UAffElement {
        self.random_element(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: C64, b: C64) -> UAffElement {
        UAffElement::new(a, b)
    }

    fn close(g: UAffElement, h: UAffElement) -> bool {
        g.distance(&h) < 1e-12
    }

    #[test]
    fn products() {
        let ipi = c(0.0, PI);
        assert!(close(e(ipi, c(0.0, 0.0)).mul(&e(c(0.0, 0.0), c(1.0, 0.0))), e(ipi, c(-1.0, 0.0))));
        let l2 = c(2f64.ln(), 0.0);
        assert!(close(e(l2, c(1.0, 0.0)).mul(&e(c(0.0, 0.0), c(3.0, 0.0))), e(l2, c(7.0, 0.0))));
        assert!(close(commutator(&e(ipi, c(0.0, 0.0)), &e(c(0.0, 0.0), c(1.0, 0.0))), e(c(0.0, 0.0), c(-2.0, 0.0))));
    }

    #[test]
    fn automorphism_example() {
        let phi = UAffAutomorphism::new(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(close(aut_apply(&phi, &e(c(0.0, PI), c(0.0, 0.0))), e(c(0.0, PI), c(2.0, 0.0))));
    }

    #[test]
    fn power_formula() {
        let g = e(c(0.3, 0.7), c(-1.0, 0.2));
        let mut acc = UAffElement::identity();
        for _ in 0..5 {
            acc = acc.mul(&g);
        }
        assert!(g.pow(5).distance(&acc) < 1e-12);
        assert!(g.pow(-2).distance(&g.inv().mul(&g.inv())) < 1e-12);
    }

    #[test]
    fn table_examples() {
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let r = classify_subgroup(&[e(z, one)]).unwrap();
        assert_eq!(r.label, D2Label::D2_1);
        let r = classify_subgroup(&[e(two_pi_i(), one)]).unwrap();
        assert_eq!(r.label, D2Label::D2_3 { k: 1 });
        let r = classify_subgroup(&[e(c(0.0, PI), z), e(z, one)]).unwrap();
        assert_eq!(r.label, D2Label::D2_7 { k: 0 });
        let r = classify_subgroup(&[e(z, one), e(z, c(0.0, 1.0))]).unwrap();
        assert_eq!(r.label.name(), "D2_2");
        if let D2Label::D2_2 { tau } = r.label {
            assert!((tau - c(0.0, 1.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn center_examples() {
        let tpi = two_pi_i();
        assert_eq!(center_intersection(&D2Label::D2_1), UAffElement::identity());
        let g = center_intersection(&D2Label::D2_4 { k: 1, b: c(0.5, 0.0) });
        assert!((g.a - tpi * 2.0).norm() < 1e-12);
        let g = center_intersection(&D2Label::D2_7 { k: 0 });
        assert!((g.a - tpi).norm() < 1e-12);
        // powers of the rotation generator: (k + 2/6)·3, (k + 4/6)·3, (k + 5/6)·6
        for (label, want) in [
            (D2Label::D2_11 { k: 1 }, 4.0),
            (D2Label::D2_12 { k: 1 }, 5.0),
            (D2Label::D2_13 { k: 1 }, 11.0),
        ] {
            let g = center_intersection(&label);
            assert!((g.a - tpi * want).norm() < 1e-9 && g.b.norm() < 1e-9, "{}: {g:?}", label.name());
        }
    }

    #[test]
    fn nonabelian_rows_refuse_product_cover() {
        assert_eq!(
            product_cover(&D2Label::D2_7 { k: 0 }, &UAffElement::identity()),
            Err(Error::BundleNontrivial)
        );
    }
}
