//! Effective divisors on C and their quasiperiods.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational;
use crate::scalar::{canonical_sign, two_pi_i};
use crate::tolerance::{close, eps, DENOMINATOR_BOUND, MAX_DIVISOR_DEGREE, RATIONAL_RESIDUAL};
use crate::C64;

/// Finite multiset of points of C, stored as distinct points with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DivisorWire", into = "DivisorWire")]
pub struct Divisor {
    points: Vec<(C64, u32)>,
}

impl Divisor {
    pub fn empty() -> Self {
        Divisor { points: vec![] }
    }

    /// Points closer than the process tolerance are merged.
    pub fn new(points: Vec<(C64, u32)>) -> Result<Self> {
        let tol = eps();
        let mut out: Vec<(C64, u32)> = Vec::new();
        for (l, n) in points {
            if n == 0 {
                return Err(Error::Invalid("multiplicity must be at least 1".into()));
            }
            if !(l.re.is_finite() && l.im.is_finite()) {
                return Err(Error::Invalid("divisor point is not finite".into()));
            }
            match out.iter_mut().find(|(m, _)| close(*m, l, tol)) {
                Some((_, k)) => *k += n,
                None => out.push((l, n)),
            }
        }
        let deg: u32 = out.iter().map(|p| p.1).sum();
        if deg > MAX_DIVISOR_DEGREE {
            return Err(Error::DegreeTooLarge(deg, MAX_DIVISOR_DEGREE));
        }
        out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        Ok(Divisor { points: out })
    }

    /// Sum of simple points.
    pub fn simple(points: &[C64]) -> Result<Self> {
        Divisor::new(points.iter().map(|&l| (l, 1)).collect())
    }

    pub fn points(&self) -> &[(C64, u32)] {
        &self.points
    }

    pub fn degree(&self) -> u32 {
        self.points.iter().map(|p| p.1).sum()
    }

    /// Multiplicity at `z` (0 if absent).
    pub fn mult_at(&self, z: C64) -> u32 {
        self.points
            .iter()
            .find(|(l, _)| close(*l, z, eps()))
            .map_or(0, |p| p.1)
    }

    pub fn plus(&self, other: &Divisor) -> Result<Self> {
        Divisor::new(self.points.iter().chain(&other.points).copied().collect())
    }

    /// `Σ n [μ λ]`
    pub fn scaled(&self, mu: C64) -> Result<Self> {
        Divisor::new(self.points.iter().map(|&(l, n)| (mu * l, n)).collect())
    }

    /// `Σ n [λ + a]`
    pub fn shifted(&self, a: C64) -> Result<Self> {
        Divisor::new(self.points.iter().map(|&(l, n)| (l + a, n)).collect())
    }

    pub fn centroid(&self) -> C64 {
        let d = self.degree().max(1) as f64;
        self.points.iter().map(|&(l, n)| l * n as f64).sum::<C64>() / d
    }

    /// Multiset equality with relative tolerance `tol`.
    pub fn approx_eq(&self, other: &Divisor, tol: f64) -> bool {
        if self.points.len() != other.points.len() {
            return false;
        }
        let mut used = vec![false; other.points.len()];
        self.points.iter().all(|&(l, n)| {
            let hit = other
                .points
                .iter()
                .enumerate()
                .find(|(j, (m, k))| !used[*j] && *k == n && close(l, *m, tol));
            match hit {
                Some((j, _)) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
struct PointWire {
    re: f64,
    #[serde(default)]
    im: f64,
    #[serde(default = "one")]
    mult: u32,
}

fn one() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
struct DivisorWire {
    points: Vec<PointWire>,
}

impl TryFrom<DivisorWire> for Divisor {
    type Error = Error;
    fn try_from(w: DivisorWire) -> Result<Self> {
        Divisor::new(
            w.points
                .into_iter()
                .map(|p| (C64::new(p.re, p.im), p.mult))
                .collect(),
        )
    }
}

impl From<Divisor> for DivisorWire {
    fn from(d: Divisor) -> Self {
        DivisorWire {
            points: d
                .points
                .into_iter()
                .map(|(l, n)| PointWire { re: l.re, im: l.im, mult: n })
                .collect(),
        }
    }
}

/// The group `Q_D` of quasiperiods.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum QuasiperiodGroup {
    Trivial,
    AllOfC,
    /// `Z ϖ0`, with `ϖ0` normalised to `re > 0` or `re = 0, im > 0`.
    RankOne {
        #[serde(with = "crate::scalar::cx")]
        generator: C64,
    },
}

impl QuasiperiodGroup {
    /// Whether `ϖ` lies in the group.
    pub fn contains(&self, w: C64) -> bool {
        match *self {
            QuasiperiodGroup::AllOfC => true,
            QuasiperiodGroup::Trivial => w.norm() <= eps(),
            QuasiperiodGroup::RankOne { generator } => {
                let k = w / generator;
                k.im.abs() <= RATIONAL_RESIDUAL * k.norm().max(1.0)
                    && rational::near_integer(k.re, RATIONAL_RESIDUAL).is_some()
            }
        }
    }
}

/// `Q_D` with the default denominator bound.
pub fn quasiperiod_group(d: &Divisor) -> Result<QuasiperiodGroup> {
    quasiperiod_group_with_bound(d, DENOMINATOR_BOUND)
}

/// `Q_D`: all of C in degree one, trivial as soon as a point is repeated,
/// otherwise generated by `2πi/δ` when the point differences span `Z δ`.
pub fn quasiperiod_group_with_bound(d: &Divisor, max_den: u64) -> Result<QuasiperiodGroup> {
    match d.degree() {
        0 => return Err(Error::DegenerateDivisor),
        1 => return Ok(QuasiperiodGroup::AllOfC),
        _ => {}
    }
    if d.points.iter().any(|p| p.1 >= 2) {
        return Ok(QuasiperiodGroup::Trivial);
    }
    let l1 = d.points[0].0;
    let diffs: Vec<C64> = d.points[1..].iter().map(|p| p.0 - l1).collect();
    let d2 = diffs[0];
    let mut ratios = Vec::with_capacity(diffs.len());
    for da in &diffs {
        let r = da / d2;
        if r.im.abs() > RATIONAL_RESIDUAL * r.norm().max(1.0) {
            return Ok(QuasiperiodGroup::Trivial);
        }
        match rational::reconstruct(r.re, max_den) {
            Some(q) => ratios.push(q),
            None => return Ok(QuasiperiodGroup::Trivial),
        }
    }
    let l = rational::lcm_all(ratios.iter().map(|q| q.den));
    let g = ratios
        .iter()
        .fold(0i128, |acc, q| acc.gcd(&(q.num as i128 * (l / q.den as i128))));
    let delta = d2 * (g as f64 / l as f64);
    Ok(QuasiperiodGroup::RankOne {
        generator: canonical_sign(two_pi_i() / delta, eps()),
    })
}

/// The weight `γ_ϖ = e^{λ_1 ϖ}` with `f(z + ϖ) = γ_ϖ f(z)` on `V_D`.
pub fn weight(d: &Divisor, w: C64) -> Result<C64> {
    weight_in(d, &quasiperiod_group(d)?, w)
}

/// As [`weight`], with `Q_D` already known.
pub fn weight_in(d: &Divisor, q: &QuasiperiodGroup, w: C64) -> Result<C64> {
    if !q.contains(w) {
        return Err(Error::NotAQuasiperiod);
    }
    let l1 = d.points.first().ok_or(Error::DegenerateDivisor)?.0;
    Ok((l1 * w).exp())
}

/// Some `μ` with `E = μ D`, preferring the candidate closest to 1.
pub fn equivalent_mod_rescaling(d: &Divisor, e: &Divisor) -> Option<C64> {
    let tol = eps().max(1e-9);
    if d.degree() != e.degree() || d.points.len() != e.points.len() {
        return None;
    }
    let small = |z: C64, dv: &Divisor| z.norm() <= tol * dv.points.iter().map(|p| p.0.norm()).fold(1.0, f64::max);
    let anchor = d.points.iter().find(|p| !small(p.0, d));
    let Some(&(a, n)) = anchor else {
        return d.approx_eq(e, tol).then_some(C64::new(1.0, 0.0));
    };
    let mut candidates: Vec<C64> = e
        .points
        .iter()
        .filter(|p| p.1 == n && !small(p.0, e))
        .map(|p| p.0 / a)
        .collect();
    candidates.sort_by(|x, y| (x - 1.0).norm().total_cmp(&(y - 1.0).norm()));
    candidates
        .into_iter()
        .find(|mu| d.scaled(*mu).is_ok_and(|s| s.approx_eq(e, tol)))
}

/// Some `(μ, a)` with `E = μ D + a`.
pub fn equivalent_mod_affine(d: &Divisor, e: &Divisor) -> Option<(C64, C64)> {
    let (cd, ce) = (d.centroid(), e.centroid());
    let d0 = d.shifted(-cd).ok()?;
    let e0 = e.shifted(-ce).ok()?;
    let mu = equivalent_mod_rescaling(&d0, &e0)?;
    Some((mu, ce - mu * cd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn degree_one_is_all_of_c() {
        let d = Divisor::simple(&[c(3.0, 1.0)]).unwrap();
        assert_eq!(quasiperiod_group(&d).unwrap(), QuasiperiodGroup::AllOfC);
    }

    #[test]
    fn repeated_point_is_trivial() {
        let d = Divisor::new(vec![(c(0.0, 0.0), 2), (c(1.0, 0.0), 1)]).unwrap();
        assert_eq!(quasiperiod_group(&d).unwrap(), QuasiperiodGroup::Trivial);
    }

    #[test]
    fn non_real_ratio_is_trivial() {
        let d = Divisor::simple(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(quasiperiod_group(&d).unwrap(), QuasiperiodGroup::Trivial);
    }

    #[test]
    fn three_commensurable_points() {
        // differences 2πi·2 and 2πi·3 generate 2πi Z
        let d = Divisor::simple(&[c(0.5, 0.0), c(0.5, 4.0 * PI), c(0.5, 6.0 * PI)]).unwrap();
        match quasiperiod_group(&d).unwrap() {
            QuasiperiodGroup::RankOne { generator } => assert!((generator - 1.0).norm() < 1e-9),
            q => panic!("{q:?}"),
        }
    }

    #[test]
    fn merging_close_points() {
        let d = Divisor::new(vec![(c(1.0, 0.0), 1), (c(1.0 + 1e-13, 0.0), 2)]).unwrap();
        assert_eq!(d.points().len(), 1);
        assert_eq!(d.degree(), 3);
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            Divisor::new(vec![(c(0.0, 0.0), 33)]),
            Err(Error::DegreeTooLarge(33, 32))
        ));
    }
}
