//! Exponential polynomials `Σ e^{λ z} P_λ(z)` and constant-coefficient
//! differential operators acting on them symbolically.

use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::scalar::Cx;
use crate::tolerance::{close, eps, ZERO_CUTOFF};
use crate::C64;

/// Polynomial with coefficients indexed by degree; trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() <= ZERO_CUTOFF) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn constant(c: C64) -> Self {
        Polynomial::new(vec![c])
    }

    /// `z^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); k + 1];
        coeffs[k] = C64::new(1.0, 0.0);
        Polynomial { coeffs }
    }

    /// `∏ (z - λ)^n`
    pub fn from_roots(roots: &[(C64, u32)]) -> Self {
        let mut p = vec![C64::new(1.0, 0.0)];
        for &(r, n) in roots {
            for _ in 0..n {
                let mut q = vec![C64::new(0.0, 0.0); p.len() + 1];
                for (k, c) in p.iter().enumerate() {
                    q[k + 1] += c;
                    q[k] -= c * r;
                }
                p = q;
            }
        }
        Polynomial { coeffs: p }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Coefficients of `p(z + t)`.
    pub fn taylor_shift(&self, t: C64) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = c[j + 1];
                c[j] += t * next;
            }
        }
        Polynomial::new(c)
    }

    /// Coefficients of `p(μ z)`.
    pub fn rescale_arg(&self, mu: C64) -> Self {
        let mut pow = C64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * pow);
            pow *= mu;
        }
        Polynomial::new(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = C64::new(0.0, 0.0);
        Polynomial::new(
            (0..n)
                .map(|k| {
                    f(
                        *self.coeffs.get(k).unwrap_or(&z),
                        *other.coeffs.get(k).unwrap_or(&z),
                    )
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Finite sum `Σ e^{λ z} P_λ(z)` with distinct frequencies sorted by `(re, im)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "ExpPolyWire", into = "ExpPolyWire")]
pub struct ExpPoly {
    terms: Vec<(C64, Polynomial)>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly { terms: vec![] }
    }

    pub fn constant(c: C64) -> Self {
        ExpPoly::from_terms(vec![(C64::new(0.0, 0.0), Polynomial::constant(c))])
    }

    /// `e^{λ z} z^k`
    pub fn monomial(lambda: C64, k: usize) -> Self {
        ExpPoly::from_terms(vec![(lambda, Polynomial::monomial(k))])
    }

    /// Merge frequencies equal within the process tolerance and drop zero terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (C64, Polynomial)>) -> Self {
        let tol = eps();
        let mut out: Vec<(C64, Polynomial)> = Vec::new();
        for (l, p) in terms {
            match out.iter_mut().find(|(m, _)| close(*m, l, tol)) {
                Some((_, q)) => *q = q.add(&p),
                None => out.push((l, p)),
            }
        }
        out.retain(|(_, p)| !p.is_zero());
        out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        ExpPoly { terms: out }
    }

    pub fn terms(&self) -> &[(C64, Polynomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, z: C64) -> C64 {
        self.terms.iter().map(|(l, p)| (l * z).exp() * p.eval(z)).sum()
    }

    /// `z ↦ f(z - t)`
    pub fn translate(&self, t: C64) -> Self {
        ExpPoly::from_terms(
            self.terms
                .iter()
                .map(|(l, p)| (*l, p.taylor_shift(-t).scale((-l * t).exp()))),
        )
    }

    /// `z ↦ f(μ z)`
    pub fn rescale_arg(&self, mu: C64) -> Self {
        ExpPoly::from_terms(self.terms.iter().map(|(l, p)| (l * mu, p.rescale_arg(mu))))
    }

    /// `z ↦ e^{a z} f(z)`
    pub fn mul_exp(&self, a: C64) -> Self {
        ExpPoly::from_terms(self.terms.iter().map(|(l, p)| (l + a, p.clone())))
    }

    pub fn derivative(&self) -> Self {
        ExpPoly::from_terms(
            self.terms
                .iter()
                .map(|(l, p)| (*l, p.scale(*l).add(&p.derivative()))),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        ExpPoly::from_terms(self.terms.iter().map(|(l, p)| (*l, p.scale(s))))
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(|(_, p)| p.max_abs()).fold(0.0, f64::max)
    }

    /// Coefficientwise comparison after merging: `|f - g| <= tol * max(1, |f|, |g|)`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let scale = self.max_abs().max(other.max_abs()).max(1.0);
        (self - other).max_abs() <= tol * scale
    }

    /// For `f = Σ c_k e^{(base + k·step) z}` with constant coefficients, the pairs `(k, c_k)`.
    pub fn fourier_coefficients(&self, base: C64, step: C64) -> Result<Vec<(i64, C64)>> {
        self.terms
            .iter()
            .map(|(l, p)| {
                if p.degree() != Some(0) {
                    return Err(Error::NotInSpace);
                }
                let k = (l - base) / step;
                if k.im.abs() > 1e-8 * k.norm().max(1.0) {
                    return Err(Error::NotInSpace);
                }
                let ki = crate::rational::near_integer(k.re, 1e-8).ok_or(Error::NotInSpace)?;
                Ok((ki, p.coeffs()[0]))
            })
            .collect()
    }

    /// Random element of `V_D` with coefficients uniform in the unit box.
    pub fn random_in<R: Rng + ?Sized>(d: &Divisor, rng: &mut R) -> Self {
        ExpPoly::from_terms(d.points().iter().map(|&(l, n)| {
            let coeffs = (0..n)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            (l, Polynomial::new(coeffs))
        }))
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        ExpPoly::from_terms(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        self + &(-rhs)
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul<C64> for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, s: C64) -> ExpPoly {
        self.scale(s)
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    lambda: Cx,
    coeffs: Vec<Cx>,
}

#[derive(Serialize, Deserialize)]
struct ExpPolyWire {
    terms: Vec<TermWire>,
}

impl From<ExpPolyWire> for ExpPoly {
    fn from(w: ExpPolyWire) -> Self {
        ExpPoly::from_terms(w.terms.into_iter().map(|t| {
            (
                t.lambda.into(),
                Polynomial::new(t.coeffs.into_iter().map(C64::from).collect()),
            )
        }))
    }
}

impl From<ExpPoly> for ExpPolyWire {
    fn from(f: ExpPoly) -> Self {
        ExpPolyWire {
            terms: f
                .terms
                .into_iter()
                .map(|(l, p)| TermWire {
                    lambda: l.into(),
                    coeffs: p.coeffs.into_iter().map(Cx::from).collect(),
                })
                .collect(),
        }
    }
}

/// Monic constant-coefficient operator `p(∂)`.
///
/// When built from a divisor the factorisation is kept, and application
/// proceeds factor by factor so that `(∂ - λ)` kills `e^{λ z}` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffOperator {
    monic: Polynomial,
    roots: Option<Vec<(C64, u32)>>,
}

impl DiffOperator {
    pub fn from_monic(p: Polynomial) -> Result<Self> {
        match p.coeffs().last() {
            Some(c) if close(*c, C64::new(1.0, 0.0), eps()) => Ok(DiffOperator { monic: p, roots: None }),
            _ => Err(Error::Invalid("operator polynomial must be monic".into())),
        }
    }

    pub fn monic(&self) -> &Polynomial {
        &self.monic
    }

    pub fn roots(&self) -> Option<&[(C64, u32)]> {
        self.roots.as_deref()
    }
}

/// `∏ (z - λ_j)^{n_j}` as an operator.
pub fn monic_polynomial(d: &Divisor) -> Result<DiffOperator> {
    if d.degree() == 0 {
        return Err(Error::DegenerateDivisor);
    }
    Ok(DiffOperator {
        monic: Polynomial::from_roots(d.points()),
        roots: Some(d.points().to_vec()),
    })
}

/// `p(∂) f`, computed symbolically.
pub fn apply_operator(op: &DiffOperator, f: &ExpPoly) -> ExpPoly {
    match &op.roots {
        Some(roots) => {
            let tol = eps();
            let mut terms: Vec<(C64, Polynomial)> = f.terms.clone();
            for &(mu, n) in roots {
                for _ in 0..n {
                    for (l, p) in terms.iter_mut() {
                        let shift = if close(*l, mu, tol) { C64::new(0.0, 0.0) } else { *l - mu };
                        *p = p.scale(shift).add(&p.derivative());
                    }
                }
            }
            ExpPoly::from_terms(terms)
        }
        None => ExpPoly::from_terms(f.terms.iter().map(|(l, p)| {
            // p(λ + x) = Σ c_k x^k, so p(∂) e^{λz} P = e^{λz} Σ c_k P^{(k)}
            let shifted = op.monic.taylor_shift(*l);
            let mut acc = Polynomial::zero();
            let mut dk = p.clone();
            for c in shifted.coeffs() {
                if dk.is_zero() {
                    break;
                }
                acc = acc.add(&dk.scale(*c));
                dk = dk.derivative();
            }
            (*l, acc)
        })),
    }
}

/// Standard basis `e^{λ_j z} z^k`, `k < n_j`, of `V_D`.
pub fn basis_of(d: &Divisor) -> Result<Vec<ExpPoly>> {
    if d.degree() == 0 {
        return Err(Error::DegenerateDivisor);
    }
    Ok(d
        .points()
        .iter()
        .flat_map(|&(l, n)| (0..n as usize).map(move |k| ExpPoly::monomial(l, k)))
        .collect())
}

/// Whether `f ∈ V_D`.
pub fn contains(d: &Divisor, f: &ExpPoly) -> Result<bool> {
    Ok(apply_operator(&monic_polynomial(d)?, f).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn translate_matches_pointwise() {
        let f = ExpPoly::from_terms(vec![
            (c(0.3, 1.0), Polynomial::new(vec![c(1.0, 2.0), c(-0.5, 0.1)])),
            (c(-1.0, 0.0), Polynomial::new(vec![c(0.0, 1.0), c(0.0, 0.0), c(2.0, 0.0)])),
        ]);
        let t = c(0.7, -0.4);
        let g = f.translate(t);
        for z in [c(0.0, 0.0), c(1.0, 1.0), c(-0.3, 2.0)] {
            assert!((g.evaluate(z) - f.evaluate(z - t)).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_operator_on_exponential() {
        let op = DiffOperator::from_monic(Polynomial::monomial(1)).unwrap();
        let f = ExpPoly::monomial(c(2.0, 0.0), 0);
        assert!(apply_operator(&op, &f).approx_eq(&f.scale(c(2.0, 0.0)), 1e-12));
    }

    #[test]
    fn unfactored_operator_agrees_with_factored() {
        let d = Divisor::new(vec![(c(1.0, 0.5), 2), (c(-0.2, 0.0), 1)]).unwrap();
        let factored = monic_polynomial(&d).unwrap();
        let plain = DiffOperator::from_monic(factored.monic().clone()).unwrap();
        let f = ExpPoly::from_terms(vec![
            (c(0.4, 0.0), Polynomial::new(vec![c(1.0, 0.0), c(2.0, -1.0)])),
            (c(1.0, 0.5), Polynomial::new(vec![c(0.0, 3.0), c(1.0, 0.0), c(1.0, 1.0)])),
        ]);
        assert!(apply_operator(&factored, &f).approx_eq(&apply_operator(&plain, &f), 1e-10));
    }

    #[test]
    fn empty_divisor_is_degenerate() {
        assert_eq!(monic_polynomial(&Divisor::empty()), Err(Error::DegenerateDivisor));
    }

    #[test]
    fn json_round_trip() {
        let f = ExpPoly::from_terms(vec![(c(1.0, 2.0), Polynomial::new(vec![c(3.0, 0.0), c(0.0, 1.0)]))]);
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"lambda\""));
        let g: ExpPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
