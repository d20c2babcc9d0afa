use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_degree, gd_act, tol, CentralizerElement, GdElement, RgdElement};
use crate::cover::{CoverPoint, Twist};
use crate::divisor::{quasiperiod_group, Divisor, QuasiperiodGroup};
use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::lattice::ComplexLattice;
use crate::laurent::Laurent;
use crate::points::AffinePoint;
use crate::rational;
use crate::scalar::{cx, opt_cx, two_pi_i};
use crate::tolerance::{rel_err, DENOMINATOR_BOUND, ROOT_OF_UNITY_BOUND};
use crate::uaff::{canonical_mod, lattice_units};
use crate::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Normal forms of discrete `π ⊂ Q_D ⋊ C`, with `D` rescaled so that `Q_D = Z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "example")]
pub enum BBeta1Label {
    Trivial,
    /// `π = {0} × Δ`, `Δ = Z` or `Z[1, τ]`, `D` of degree 0 at 0.
    #[serde(rename = "Bβ1A0")]
    A0 {
        #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_cx")]
        tau: Option<C64>,
    },
    #[serde(rename = "Bβ1A1")]
    A1 {
        #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_cx")]
        tau: Option<C64>,
    },
    /// `⟨(n, 0)⟩` meeting `G_D` in `⟨(q n, 0)⟩`.
    #[serde(rename = "Bβ1B0")]
    B0 {
        n: u32,
        #[serde(with = "cx")]
        lambda: C64,
        q: u32,
    },
    #[serde(rename = "Bβ1B1")]
    B1 {
        n: u32,
        #[serde(with = "cx")]
        lambda: C64,
    },
    /// `⟨(n, 1)⟩`, `λ = 2πi m/n`.
    #[serde(rename = "Bβ1C")]
    C { n: u32, m: i64 },
    /// `⟨(n, 0), (0, 1)⟩`, `λ = 0`.
    #[serde(rename = "Bβ1D")]
    D { n: u32 },
    /// `⟨(n, s), (0, 1)⟩`, `λ = 2πi m/n`.
    #[serde(rename = "Bβ1E")]
    E {
        n: u32,
        m: i64,
        #[serde(with = "cx")]
        s: C64,
    },
    /// `⟨(n, 0), (0, 1)⟩`, `λ = πi (2m + 1)/n`.
    #[serde(rename = "Bβ1F")]
    F { n: u32, m: i64 },
    /// `⟨(n, 0), (0, 1), (0, τ)⟩`, `λ = 0`.
    #[serde(rename = "Bβ1G")]
    G {
        n: u32,
        #[serde(with = "cx")]
        tau: C64,
    },
    /// `⟨(n, s), (0, 1), (0, τ)⟩`, `λ = 2πi m/n`.
    #[serde(rename = "Bβ1H")]
    H {
        n: u32,
        m: i64,
        #[serde(with = "cx")]
        s: C64,
        #[serde(with = "cx")]
        tau: C64,
    },
    /// `⟨(n, 0), (0, 1), (0, τ)⟩` with `e^{λn} ≠ 1` preserving `Z[1, τ]`.
    #[serde(rename = "Bβ1I")]
    I {
        n: u32,
        #[serde(with = "cx")]
        lambda: C64,
        #[serde(with = "cx")]
        tau: C64,
    },
}

impl BBeta1Label {
    pub fn name(&self) -> &'static str {
        use BBeta1Label::*;
        match self {
            Trivial => "trivial",
            A0 { .. } => "Bβ1A0",
            A1 { .. } => "Bβ1A1",
            B0 { .. } => "Bβ1B0",
            B1 { .. } => "Bβ1B1",
            C { .. } => "Bβ1C",
            D { .. } => "Bβ1D",
            E { .. } => "Bβ1E",
            F { .. } => "Bβ1F",
            G { .. } => "Bβ1G",
            H { .. } => "Bβ1H",
            I { .. } => "Bβ1I",
        }
    }

    pub fn n(&self) -> Option<u32> {
        use BBeta1Label::*;
        match self {
            Trivial | A0 { .. } | A1 { .. } => None,
            B0 { n, .. } | B1 { n, .. } | C { n, .. } | D { n } | E { n, .. } | F { n, .. }
            | G { n, .. } | H { n, .. } | I { n, .. } => Some(*n),
        }
    }

    /// The base point `λ` of `D = [λ] + Σ [λ + 2πi k_j]`.
    pub fn lambda(&self) -> Option<C64> {
        use BBeta1Label::*;
        let n = self.n()? as f64;
        Some(match self {
            B0 { lambda, .. } | B1 { lambda, .. } | I { lambda, .. } => *lambda,
            C { m, .. } | E { m, .. } | H { m, .. } => two_pi_i() * (*m as f64 / n),
            F { m, .. } => c(0.0, PI) * ((2 * m + 1) as f64 / n),
            D { .. } | G { .. } => c(0.0, 0.0),
            _ => unreachable!(),
        })
    }

    /// Lattice `π_0 = π ∩ ({0} × C)`.
    pub fn pi0(&self) -> ComplexLattice {
        use BBeta1Label::*;
        let one = c(1.0, 0.0);
        let basis = match self {
            A0 { tau } | A1 { tau } => std::iter::once(one).chain(*tau).collect(),
            D { .. } | E { .. } | F { .. } => vec![one],
            G { tau, .. } | H { tau, .. } | I { tau, .. } => vec![one, *tau],
            _ => vec![],
        };
        ComplexLattice::from_basis(basis).expect("normal form lattice")
    }

    /// The shift `s` of the generator over `n`.
    pub fn shift(&self) -> C64 {
        match self {
            BBeta1Label::C { .. } => c(1.0, 0.0),
            BBeta1Label::E { s, .. } | BBeta1Label::H { s, .. } => *s,
            _ => c(0.0, 0.0),
        }
    }

    /// Generators of the normal form `π`.
    pub fn generators(&self) -> Vec<CentralizerElement> {
        let zero = c(0.0, 0.0);
        let mut out = Vec::new();
        if let Some(n) = self.n() {
            out.push(CentralizerElement::new(c(n as f64, 0.0), self.shift()));
        }
        out.extend(self.pi0().basis().iter().map(|&p| CentralizerElement::new(zero, p)));
        out
    }

    /// Parameters agree up to `tol`.
    pub fn approx_eq(&self, other: &BBeta1Label, tol: f64) -> bool {
        use BBeta1Label::*;
        let cl = |a: C64, b: C64| rel_err(a, b) <= tol;
        let ot = |a: &Option<C64>, b: &Option<C64>| match (a, b) {
            (None, None) => true,
            (Some(x), Some(y)) => cl(*x, *y),
            _ => false,
        };
        match (self, other) {
            (Trivial, Trivial) => true,
            (A0 { tau: a }, A0 { tau: b }) | (A1 { tau: a }, A1 { tau: b }) => ot(a, b),
            (B0 { n, lambda, q }, B0 { n: n2, lambda: l2, q: q2 }) => n == n2 && q == q2 && cl(*lambda, *l2),
            (B1 { n, lambda }, B1 { n: n2, lambda: l2 }) => n == n2 && cl(*lambda, *l2),
            (C { n, m }, C { n: n2, m: m2 }) | (F { n, m }, F { n: n2, m: m2 }) => n == n2 && m == m2,
            (D { n }, D { n: n2 }) => n == n2,
            (E { n, m, s }, E { n: n2, m: m2, s: s2 }) => n == n2 && m == m2 && cl(*s, *s2),
            (G { n, tau }, G { n: n2, tau: t2 }) => n == n2 && cl(*tau, *t2),
            (H { n, m, s, tau }, H { n: n2, m: m2, s: s2, tau: t2 }) => {
                n == n2 && m == m2 && cl(*s, *s2) && cl(*tau, *t2)
            }
            (I { n, lambda, tau }, I { n: n2, lambda: l2, tau: t2 }) => {
                n == n2 && cl(*lambda, *l2) && cl(*tau, *t2)
            }
            _ => false,
        }
    }
}

/// `(k, s) ↦ (k, ν s + t (1 - γ_k) + t' k)` on `Q_D ⋊ C`, `Q_D = Z`; `t' ≠ 0` needs `0 ∈ D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralizerAutomorphism {
    #[serde(with = "cx")]
    pub nu: C64,
    #[serde(with = "cx")]
    pub t: C64,
    #[serde(with = "cx")]
    pub t_prime: C64,
}

impl CentralizerAutomorphism {
    /// `lambda` is any point of the normalised divisor.
    pub fn apply(&self, lambda: C64, g: &CentralizerElement) -> CentralizerElement {
        let gamma = (lambda * g.varpi).exp();
        CentralizerElement::new(
            g.varpi,
            self.nu * g.s + self.t * (1.0 - gamma) + self.t_prime * g.varpi,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BBeta1Classification {
    #[serde(flatten)]
    pub label: BBeta1Label,
    /// `D' = μ D` has `Q_{D'} = Z`; quasiperiods are divided by `μ`.
    #[serde(with = "cx")]
    pub mu: C64,
    pub divisor: Divisor,
    /// Carries `π` (in the `D'` coordinates) onto the normal form.
    pub normalizer: CentralizerAutomorphism,
    /// Generators of `π ∩ G_D`, in the `D'` coordinates.
    pub intersection: Vec<CentralizerElement>,
}

fn zmul(lambda: C64, a: &CentralizerElement, b: &CentralizerElement) -> CentralizerElement {
    CentralizerElement::new(a.varpi + b.varpi, a.s + (lambda * a.varpi).exp() * b.s)
}

fn zinv(lambda: C64, a: &CentralizerElement) -> CentralizerElement {
    CentralizerElement::new(-a.varpi, -(-lambda * a.varpi).exp() * a.s)
}

fn zpow(lambda: C64, a: &CentralizerElement, k: i64) -> CentralizerElement {
    let base = if k < 0 { zinv(lambda, a) } else { *a };
    let mut out = CentralizerElement::new(c(0.0, 0.0), c(0.0, 0.0));
    for _ in 0..k.unsigned_abs() {
        out = zmul(lambda, &out, &base);
    }
    out
}

/// Order of `e^{x}` as a root of unity, if at most the bound.
fn root_order(x: C64) -> Option<u32> {
    if x.re.abs() > tol() * x.norm().max(1.0) {
        return None;
    }
    let r = rational::reconstruct(x.im / (2.0 * PI), ROOT_OF_UNITY_BOUND)?;
    Some(r.den as u32)
}

/// Base point: `0` if it lies in `D`, else the lowest point.
fn base_point(d: &Divisor) -> (C64, bool) {
    let t = tol();
    if let Some(p) = d.points().iter().find(|p| p.0.norm() <= t) {
        return (p.0 * 0.0, true);
    }
    let low = d
        .points()
        .iter()
        .map(|p| p.0)
        .min_by(|a, b| a.im.total_cmp(&b.im))
        .expect("nonempty divisor");
    (low, false)
}

fn lattice_basis_normal(l: &ComplexLattice) -> (C64, Option<C64>) {
    match l.normal_form() {
        Some((beta, tau)) if l.rank() == 2 => (beta, Some(tau)),
        Some((beta, _)) => (beta, None),
        None => (c(1.0, 0.0), None),
    }
}

/// Classify the group generated by `gens` up to automorphisms of `(C², G_D)`.
pub fn classify_pi(gens: &[CentralizerElement], d: &Divisor) -> Result<BBeta1Classification> {
    classify_pi_with_bound(gens, d, DENOMINATOR_BOUND)
}

pub fn classify_pi_with_bound(
    gens: &[CentralizerElement],
    d: &Divisor,
    max_den: u64,
) -> Result<BBeta1Classification> {
    check_degree(d)?;
    let t = tol();
    let q = crate::divisor::quasiperiod_group_with_bound(d, max_den)?;
    let mu = match q {
        QuasiperiodGroup::RankOne { generator } => generator,
        _ => c(1.0, 0.0),
    };
    let gens: Vec<CentralizerElement> = gens
        .iter()
        .filter(|g| g.varpi.norm() > t || g.s.norm() > t)
        .copied()
        .collect();
    let mut ks = Vec::with_capacity(gens.len());
    for g in &gens {
        if g.varpi.norm() <= t * mu.norm().max(1.0) {
            ks.push(0i64);
            continue;
        }
        let QuasiperiodGroup::RankOne { generator } = q else {
            return Err(Error::NotAQuasiperiod);
        };
        let k = g.varpi / generator;
        if k.im.abs() > 1e-8 * k.norm().max(1.0) {
            return Err(Error::NotAQuasiperiod);
        }
        ks.push(rational::near_integer(k.re, 1e-8).ok_or(Error::NotAQuasiperiod)?);
    }
    let dn = d.scaled(mu)?;
    let (lambda, zero_in) = base_point(&dn);
    let identity = CentralizerAutomorphism { nu: c(1.0, 0.0), t: c(0.0, 0.0), t_prime: c(0.0, 0.0) };
    let done = |label, normalizer, intersection| {
        Ok(BBeta1Classification { label, mu, divisor: dn.clone(), normalizer, intersection })
    };

    if gens.is_empty() {
        return done(BBeta1Label::Trivial, identity, vec![]);
    }

    if ks.iter().all(|&k| k == 0) {
        let l = ComplexLattice::generated_by(&gens.iter().map(|g| g.s).collect::<Vec<_>>(), max_den)?;
        let (nu, tau) = lattice_basis_normal(&l);
        let label = if d.mult_at(c(0.0, 0.0)) == 0 {
            BBeta1Label::A0 { tau }
        } else {
            BBeta1Label::A1 { tau }
        };
        let inter = if zero_in { label.generators() } else { vec![] };
        return done(label, CentralizerAutomorphism { nu, ..identity }, inter);
    }

    // elements in the D' coordinates
    let els: Vec<CentralizerElement> = gens
        .iter()
        .zip(&ks)
        .map(|(g, &k)| CentralizerElement::new(c(k as f64, 0.0), g.s))
        .collect();
    let (g, u_cols) = rational::column_reduce(&ks);
    let sign = g.signum();
    let n = g.abs();
    let last = ks.len() - 1;
    let lift = els
        .iter()
        .enumerate()
        .fold(CentralizerElement::new(c(0.0, 0.0), c(0.0, 0.0)), |acc, (i, e)| {
            zmul(lambda, &acc, &zpow(lambda, e, sign * u_cols[i][last]))
        });
    debug_assert!((lift.varpi.re - n as f64).abs() < 1e-9);

    let u = (lambda * n as f64).exp();
    let mut rel: Vec<C64> = els
        .iter()
        .zip(&ks)
        .map(|(e, &k)| zmul(lambda, e, &zpow(lambda, &lift, -(k / n))).s)
        .filter(|s| s.norm() > t)
        .collect();
    let mut pi0 = ComplexLattice::trivial();
    let mut converged = false;
    for _ in 0..16 {
        let next = ComplexLattice::generated_by(&rel, max_den)?;
        if next.same_as(&pi0, 1e-8) {
            converged = true;
            break;
        }
        pi0 = next;
        rel = pi0.basis().to_vec();
        for &b in pi0.basis() {
            rel.push(u * b);
            rel.push(b / u);
        }
    }
    if !converged {
        return Err(Error::NotDiscrete);
    }

    let nn = n as u32;
    let s = lift.s;
    let kill_t = |target_s: C64| CentralizerAutomorphism {
        nu: target_s,
        t: if zero_in { c(0.0, 0.0) } else { -target_s * s / (1.0 - u) },
        t_prime: if zero_in { -target_s * s / n as f64 } else { c(0.0, 0.0) },
    };
    let u_is_one = (u - 1.0).norm() <= 1e-8;
    let m_of = |x: C64| rational::near_integer((x * n as f64 / two_pi_i()).re, 1e-8);

    match pi0.rank() {
        0 => {
            if zero_in || !u_is_one || s.norm() <= t {
                let normalizer = if u_is_one && !zero_in { identity } else { kill_t(c(1.0, 0.0)) };
                let q = if zero_in { Some(1) } else { root_order(lambda * n as f64) };
                let label = match q {
                    Some(q) => BBeta1Label::B0 { n: nn, lambda, q },
                    None => BBeta1Label::B1 { n: nn, lambda },
                };
                let inter = q
                    .map(|q| vec![CentralizerElement::new(c((q as i64 * n) as f64, 0.0), c(0.0, 0.0))])
                    .unwrap_or_default();
                done(label, normalizer, inter)
            } else {
                let m = m_of(lambda).ok_or(Error::NotDiscrete)?;
                let normalizer = CentralizerAutomorphism { nu: 1.0 / s, ..identity };
                done(BBeta1Label::C { n: nn, m }, normalizer, vec![])
            }
        }
        1 => {
            let p = pi0.basis()[0];
            let nu = 1.0 / p;
            if zero_in {
                let inter = vec![CentralizerElement::new(c(0.0, 0.0), c(1.0, 0.0))];
                done(BBeta1Label::D { n: nn }, kill_t(nu), inter)
            } else if u_is_one {
                let m = m_of(lambda).ok_or(Error::NotDiscrete)?;
                let z = ComplexLattice::from_basis(vec![c(1.0, 0.0)])?;
                let (sr, unit) = canonical_mod(nu * s, &z, &[c(1.0, 0.0), c(-1.0, 0.0)]);
                let normalizer = CentralizerAutomorphism { nu: unit * nu, ..identity };
                done(BBeta1Label::E { n: nn, m, s: sr }, normalizer, vec![])
            } else if (u + 1.0).norm() <= 1e-8 {
                let x = lambda * n as f64 / c(0.0, PI);
                let odd = rational::near_integer(x.re, 1e-8).ok_or(Error::NotDiscrete)?;
                done(BBeta1Label::F { n: nn, m: (odd - 1).div_euclid(2) }, kill_t(nu), vec![])
            } else {
                Err(Error::NotDiscrete)
            }
        }
        _ => {
            let (nu, tau) = lattice_basis_normal(&pi0);
            let tau = tau.expect("rank two");
            let norm_l = ComplexLattice::from_basis(vec![c(1.0, 0.0), tau])?;
            if zero_in {
                let inter = norm_l.basis().iter().map(|&b| CentralizerElement::new(c(0.0, 0.0), b)).collect();
                done(BBeta1Label::G { n: nn, tau }, kill_t(nu), inter)
            } else if u_is_one {
                let m = m_of(lambda).ok_or(Error::NotDiscrete)?;
                let (sr, unit) = canonical_mod(nu * s, &norm_l, &lattice_units(tau));
                let normalizer = CentralizerAutomorphism { nu: unit * nu, ..identity };
                done(BBeta1Label::H { n: nn, m, s: sr, tau }, normalizer, vec![])
            } else if norm_l.preserved_by(u, 1e-8) {
                done(BBeta1Label::I { n: nn, lambda, tau }, kill_t(nu), vec![])
            } else {
                Err(Error::NotDiscrete)
            }
        }
    }
}

/// A Bβ1 quotient `(C²/π, G_D/(G_D ∩ π))` with its covering map.
#[derive(Debug, Clone, PartialEq)]
pub struct BBeta1Quotient {
    label: BBeta1Label,
    divisor: Divisor,
    lambda: C64,
}

fn shape_error() -> Error {
    Error::ConstraintViolation("D must be [λ] + Σ[λ + 2πi k_j] with λ the label's base point".into())
}

impl BBeta1Quotient {
    /// `divisor` must already be normalised so that `Q_D = Z`.
    pub fn new(label: BBeta1Label, divisor: Divisor) -> Result<Self> {
        use BBeta1Label::*;
        check_degree(&divisor)?;
        let zero_deg = divisor.mult_at(c(0.0, 0.0));
        match &label {
            Trivial => return Err(Error::Invalid("trivial subgroup has no quotient cover".into())),
            A0 { .. } if zero_deg != 0 => {
                return Err(Error::ConstraintViolation("A0 needs D of degree 0 at 0".into()))
            }
            A1 { .. } if zero_deg == 0 => {
                return Err(Error::ConstraintViolation("A1 needs D of positive degree at 0".into()))
            }
            A0 { tau } | A1 { tau } => {
                check_tau(*tau)?;
                return Ok(BBeta1Quotient { label, divisor, lambda: c(0.0, 0.0) });
            }
            _ => {}
        }
        let n = label.n().expect("has n");
        if n == 0 {
            return Err(Error::ConstraintViolation("n >= 1".into()));
        }
        match quasiperiod_group(&divisor)? {
            QuasiperiodGroup::RankOne { generator } if (generator - 1.0).norm() <= 1e-8 => {}
            _ => return Err(Error::ConstraintViolation("Q_D = Z".into())),
        }
        let lambda = label.lambda().expect("has λ");
        for &(p, _) in divisor.points() {
            let k = (p - lambda) / two_pi_i();
            if k.im.abs() > 1e-8 || rational::near_integer(k.re, 1e-8).is_none() {
                return Err(shape_error());
            }
        }
        let u = (lambda * n as f64).exp();
        let u_one = (u - 1.0).norm() <= 1e-8;
        let zero = zero_deg > 0;
        let ok = match &label {
            B0 { q, .. } => root_order(lambda * n as f64) == Some(*q) || (zero && *q == 1),
            B1 { .. } => !zero && root_order(lambda * n as f64).is_none(),
            C { m, .. } | E { m, .. } | H { m, .. } => *m != 0 && !zero,
            D { .. } | G { .. } => zero,
            F { .. } => !zero,
            I { tau, .. } => {
                !u_one && ComplexLattice::from_basis(vec![c(1.0, 0.0), *tau])?.preserved_by(u, 1e-8)
            }
            _ => true,
        };
        if let G { tau, .. } | H { tau, .. } | I { tau, .. } = &label {
            check_tau(Some(*tau))?;
        }
        if !ok {
            return Err(Error::ConstraintViolation(format!("parameters of {} do not fit D", label.name())));
        }
        Ok(BBeta1Quotient { label, divisor, lambda })
    }

    pub fn label(&self) -> &BBeta1Label {
        &self.label
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn pi_generators(&self) -> Vec<CentralizerElement> {
        self.label.generators()
    }

    fn n(&self) -> f64 {
        self.label.n().unwrap_or(1) as f64
    }

    fn zn(&self, z: C64) -> C64 {
        (two_pi_i() * z / self.n()).exp()
    }

    /// The covering map before reducing periodic coordinates.
    pub fn cover_raw(&self, x: &AffinePoint) -> Vec<C64> {
        use BBeta1Label::*;
        let (z, w) = (x.z, x.w);
        let n = self.n();
        let s = self.label.shift();
        match &self.label {
            A0 { .. } | A1 { .. } | I { .. } | Trivial => vec![z, w],
            B0 { .. } | B1 { .. } => vec![self.zn(z), (-self.lambda * z).exp() * w],
            C { .. } => vec![self.zn(z), w - z / n],
            D { .. } => vec![self.zn(z), (two_pi_i() * w).exp()],
            E { .. } => vec![self.zn(z), (two_pi_i() * (w - s * z / n)).exp()],
            F { .. } => {
                let y = (c(0.0, PI) * z / n).exp();
                let q = (two_pi_i() * w).exp();
                vec![y * y, y * (q - 1.0 / q), q + 1.0 / q]
            }
            G { .. } => vec![self.zn(z), w],
            H { .. } => vec![self.zn(z), w - s * z / n],
        }
    }

    fn finish(&self, raw: Vec<C64>) -> CoverPoint {
        use BBeta1Label::*;
        match &self.label {
            A0 { .. } | A1 { .. } | G { .. } | H { .. } => CoverPoint::periodic(raw, 1, &self.label.pi0()),
            I { .. } => {
                let n = self.n();
                let u = (self.lambda * n).exp();
                let k = (raw[0].re / n).floor();
                let z = raw[0] - k * n;
                let w = raw[1] * u.powf(-k);
                let mut p = CoverPoint::periodic(vec![z, w], 1, &self.label.pi0());
                p.twist = Some(Twist { period: c(n, 0.0), multiplier: u });
                p
            }
            _ => CoverPoint::plain(raw),
        }
    }

    pub fn cover(&self, x: &AffinePoint) -> CoverPoint {
        self.finish(self.cover_raw(x))
    }

    /// `f(z + t)` as a Laurent polynomial in `Z' = e^{2πi(z+t)/n}`, after factoring out `e^{base (z+t)}`.
    fn laurent(&self, f: &ExpPoly, base: C64) -> Result<Laurent> {
        Ok(Laurent::new(f.fourier_coefficients(base, two_pi_i() / self.n())?))
    }

    /// A point of `C²` over `y`.
    pub fn lift(&self, y: &CoverPoint) -> Result<AffinePoint> {
        use BBeta1Label::*;
        let n = self.n();
        let v = &y.coords;
        let log_z = |zz: C64| {
            if zz.norm() == 0.0 {
                Err(Error::OutsideDomain("Z = 0".into()))
            } else {
                Ok(n * zz.ln() / two_pi_i())
            }
        };
        let s = self.label.shift();
        Ok(match &self.label {
            A0 { .. } | A1 { .. } | I { .. } | Trivial => AffinePoint::new(v[0], v[1]),
            B0 { .. } | B1 { .. } => {
                let z = log_z(v[0])?;
                AffinePoint::new(z, (self.lambda * z).exp() * v[1])
            }
            C { .. } => {
                let z = log_z(v[0])?;
                AffinePoint::new(z, v[1] + z / n)
            }
            D { .. } | E { .. } => {
                let z = log_z(v[0])?;
                if v[1].norm() == 0.0 {
                    return Err(Error::OutsideDomain("W = 0".into()));
                }
                AffinePoint::new(z, v[1].ln() / two_pi_i() + s * z / n)
            }
            F { .. } => {
                if v.len() != 3 {
                    return Err(Error::OutsideDomain("expected (Z, U, V)".into()));
                }
                let y0 = v[0].sqrt();
                if y0.norm() == 0.0 {
                    return Err(Error::OutsideDomain("Z = 0".into()));
                }
                let z = n * y0.ln() / c(0.0, PI);
                let disc = (v[2] * v[2] - 4.0).sqrt();
                let roots = [(v[2] + disc) / 2.0, (v[2] - disc) / 2.0];
                let q = roots
                    .iter()
                    .copied()
                    .min_by(|a, b| {
                        let ea = (y0 * (a - 1.0 / a) - v[1]).norm();
                        let eb = (y0 * (b - 1.0 / b) - v[1]).norm();
                        ea.total_cmp(&eb)
                    })
                    .expect("two roots");
                AffinePoint::new(z, q.ln() / two_pi_i())
            }
            G { .. } => AffinePoint::new(log_z(v[0])?, v[1]),
            H { .. } => {
                let z = log_z(v[0])?;
                AffinePoint::new(z, v[1] + s * z / n)
            }
        })
    }

    /// The induced action of `G_D` on the quotient.
    pub fn act(&self, g: &GdElement, y: &CoverPoint) -> Result<CoverPoint> {
        use BBeta1Label::*;
        let n = self.n();
        let t = g.t;
        let v = &y.coords;
        let s = self.label.shift();
        let rot = (two_pi_i() * t / n).exp();
        let raw = match &self.label {
            A0 { .. } | A1 { .. } => {
                let z = v[0] + t;
                vec![z, v[1] + g.f.evaluate(z)]
            }
            B0 { .. } | B1 { .. } => {
                let z1 = rot * v[0];
                let p = self.laurent(&g.f, self.lambda)?;
                vec![z1, (-self.lambda * t).exp() * v[1] + p.eval(z1)]
            }
            C { .. } => {
                let z1 = rot * v[0];
                vec![z1, v[1] - t / n + self.laurent(&g.f, c(0.0, 0.0))?.eval(z1)]
            }
            D { .. } | E { .. } => {
                let z1 = rot * v[0];
                let p = self.laurent(&g.f, c(0.0, 0.0))?.eval(z1);
                vec![z1, v[1] * (two_pi_i() * (-s * t / n + p)).exp()]
            }
            G { .. } | H { .. } => {
                let z1 = rot * v[0];
                vec![z1, v[1] - s * t / n + self.laurent(&g.f, c(0.0, 0.0))?.eval(z1)]
            }
            F { .. } | I { .. } | Trivial => {
                let x = self.lift(y)?;
                self.cover_raw(&gd_act(g, &x))
            }
        };
        Ok(self.finish(raw))
    }

    /// Largest 2×2 minor of the Jacobian of the covering map, by central differences.
    pub fn jacobian_minor(&self, x: &AffinePoint) -> f64 {
        let h = 1e-6;
        let d = |dz: C64, dw: C64| {
            let p = self.cover_raw(&AffinePoint::new(x.z + dz, x.w + dw));
            let m = self.cover_raw(&AffinePoint::new(x.z - dz, x.w - dw));
            p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<_>>()
        };
        let jz = d(c(h, 0.0), c(0.0, 0.0));
        let jw = d(c(0.0, 0.0), c(h, 0.0));
        let mut best = 0.0f64;
        for i in 0..jz.len() {
            for j in i + 1..jz.len() {
                best = best.max((jz[i] * jw[j] - jz[j] * jw[i]).norm());
            }
        }
        best
    }
}

fn check_tau(tau: Option<C64>) -> Result<()> {
    match tau {
        Some(t) if t.im <= 0.0 => Err(Error::ConstraintViolation("Im τ > 0".into())),
        _ => Ok(()),
    }
}

/// Bβ2′: `C^× × C` with `rG_D / ⟨(n, 1, 0)⟩` acting.
#[derive(Debug, Clone, PartialEq)]
pub struct RgdQuotient {
    divisor: Divisor,
    n: u32,
}

/// Bβ2′ for `D` with `e^{λn} = 1` at every point (shape `[0] + Σ[2πi k_j]` up to rescaling).
pub fn rgd_quotients(d: &Divisor, n: u32) -> Result<RgdQuotient> {
    check_degree(d)?;
    if n == 0 {
        return Err(Error::ConstraintViolation("n >= 1".into()));
    }
    if quasiperiod_group(d)? == QuasiperiodGroup::Trivial {
        return Err(Error::NoQuotients);
    }
    for &(p, _) in d.points() {
        if ((p * n as f64).exp() - 1.0).norm() > 1e-8 {
            return Err(Error::ConstraintViolation("D must be [0] + Σ[2πi k_j]".into()));
        }
    }
    Ok(RgdQuotient { divisor: d.clone(), n })
}

impl RgdQuotient {
    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    /// The generator `(n, 1, 0)` of `π`.
    pub fn pi_generator(&self) -> RgdElement {
        RgdElement { t: c(self.n as f64, 0.0), lambda: c(1.0, 0.0), f: ExpPoly::zero() }
    }

    pub fn cover(&self, x: &AffinePoint) -> CoverPoint {
        CoverPoint::plain(vec![(two_pi_i() * x.z / self.n as f64).exp(), x.w])
    }

    pub fn act(&self, g: &RgdElement, y: &CoverPoint) -> Result<CoverPoint> {
        let n = self.n as f64;
        let z1 = (two_pi_i() * g.t / n).exp() * y.coords[0];
        let p = Laurent::new(g.f.fourier_coefficients(c(0.0, 0.0), two_pi_i() / n)?);
        Ok(CoverPoint::plain(vec![z1, g.lambda * y.coords[1] + p.eval(z1)]))
    }
}

/// One quotient per example B0 to I plus A0 and A1, with `Q_D = Z`.
pub fn example_quotients() -> Vec<BBeta1Quotient> {
    let d01 = || Divisor::simple(&[c(0.0, 0.0), two_pi_i()]).expect("valid divisor");
    let tau = c(0.3, 1.1);
    let l = |base: C64, ks: &[f64]| {
        Divisor::simple(&ks.iter().map(|k| base + two_pi_i() * *k).collect::<Vec<_>>()).expect("valid divisor")
    };
    let lam_b = c(0.4, 0.3);
    let lam_f = c(0.0, PI * 3.0 / 2.0);
    let lam_i = c(0.0, PI / 2.0);
    vec![
        BBeta1Quotient::new(BBeta1Label::A0 { tau: Some(tau) }, l(c(0.5, 0.0), &[0.0, 1.0])).expect("valid example"),
        BBeta1Quotient::new(BBeta1Label::A1 { tau: None }, d01()).expect("valid example"),
        BBeta1Quotient::new(BBeta1Label::B0 { n: 1, lambda: two_pi_i() / 3.0, q: 3 }, l(two_pi_i() / 3.0, &[0.0, 1.0]))
            .expect("valid example"),
        BBeta1Quotient::new(BBeta1Label::B1 { n: 2, lambda: lam_b }, l(lam_b, &[0.0, 1.0, 3.0])).expect("valid example"),
        BBeta1Quotient::new(BBeta1Label::C { n: 2, m: 1 }, l(c(0.0, PI), &[0.0, 1.0])).expect("valid example"),
        BBeta1Quotient::new(BBeta1Label::D { n: 3 }, l(c(0.0, 0.0), &[0.0, 2.0, 3.0])).expect("valid example"),
        BBeta1Quotient::new(BBeta1Label::E { n: 2, m: 1, s: c(0.2, 0.4) }, l(c(0.0, PI), &[0.0, 1.0]))
            .expect("valid example"),
        BBeta1Quotient::new(BBeta1Label::F { n: 2, m: 1 }, l(lam_f, &[0.0, 1.0])).expect("valid example"),
        BBeta1Quotient::new(BBeta1Label::G { n: 2, tau }, d01()).expect("valid example"),
        BBeta1Quotient::new(
            BBeta1Label::H { n: 2, m: 1, s: c(0.2, 0.1), tau },
            l(c(0.0, PI), &[0.0, 1.0]),
        )
        .expect("valid example"),
        BBeta1Quotient::new(BBeta1Label::I { n: 1, lambda: lam_i, tau: c(0.0, 1.0) }, l(lam_i, &[0.0, 1.0]))
            .expect("valid example"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bbeta::{centralizer_act, CentralizerGroup};
    use crate::linalg::random_c;
    use rand::SeedableRng;

    fn ce(k: f64, s: C64) -> CentralizerElement {
        CentralizerElement::new(c(k, 0.0), s)
    }

    fn d01() -> Divisor {
        Divisor::simple(&[c(0.0, 0.0), two_pi_i()]).unwrap()
    }

    #[test]
    fn proof_cases() {
        let a = classify_pi(&[ce(0.0, c(1.0, 0.0))], &d01()).unwrap();
        assert_eq!(a.label.name(), "Bβ1A1");
        let b = classify_pi(&[ce(2.0, c(0.3, 0.1))], &d01()).unwrap();
        assert_eq!(b.label, BBeta1Label::B0 { n: 2, lambda: c(0.0, 0.0), q: 1 });
        let dd = classify_pi(&[ce(1.0, c(0.0, 0.0)), ce(0.0, c(1.0, 0.0))], &d01()).unwrap();
        assert_eq!(dd.label, BBeta1Label::D { n: 1 });
        let d24 = Divisor::simple(&[two_pi_i(), two_pi_i() * 2.0]).unwrap();
        let cc = classify_pi(&[ce(1.0, c(1.0, 0.0))], &d24).unwrap();
        assert_eq!(cc.label, BBeta1Label::C { n: 1, m: 1 });
    }

    #[test]
    fn covers_from_examples() {
        let q = BBeta1Quotient::new(BBeta1Label::B0 { n: 1, lambda: c(0.0, 0.0), q: 1 }, d01()).unwrap();
        let x = AffinePoint::new(c(0.3, 0.2), c(1.0, -1.0));
        let x1 = AffinePoint::new(x.z + 1.0, x.w);
        assert!(q.cover(&x).distance(&q.cover(&x1)) < 1e-12);

        let d24 = Divisor::simple(&[two_pi_i(), two_pi_i() * 2.0]).unwrap();
        let q = BBeta1Quotient::new(BBeta1Label::C { n: 1, m: 1 }, d24).unwrap();
        let y = q.cover(&x).coords;
        assert!((y[0] - (two_pi_i() * x.z).exp()).norm() < 1e-12);
        assert!((y[1] - (x.w - x.z)).norm() < 1e-12);
        let x1 = AffinePoint::new(x.z + 1.0, x.w + 1.0);
        assert!(q.cover(&x).distance(&q.cover(&x1)) < 1e-12);

        let q = BBeta1Quotient::new(BBeta1Label::D { n: 1 }, d01()).unwrap();
        let y = q.cover(&x).coords;
        assert!((y[1] - (two_pi_i() * x.w).exp()).norm() < 1e-12);
        for x1 in [AffinePoint::new(x.z + 1.0, x.w), AffinePoint::new(x.z, x.w + 1.0)] {
            assert!(q.cover(&x).distance(&q.cover(&x1)) < 1e-12);
        }
    }

    #[test]
    fn covers_are_invariant_and_equivariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for q in example_quotients() {
            let grp = CentralizerGroup::new(q.divisor().clone()).unwrap();
            for _ in 0..50 {
                let x = AffinePoint::random(&mut rng, 0.5);
                let y = q.cover(&x);
                for p in q.pi_generators() {
                    let px = centralizer_act(&grp, &p, &x).unwrap();
                    assert!(y.distance(&q.cover(&px)) < 1e-9, "{} invariance", q.label().name());
                }
                let g = GdElement::new(random_c(&mut rng, 0.5), ExpPoly::random_in(q.divisor(), &mut rng));
                let lhs = q.cover(&gd_act(&g, &x));
                let rhs = q.act(&g, &y).unwrap();
                assert!(lhs.distance(&rhs) < 1e-9, "{} equivariance {}", q.label().name(), lhs.distance(&rhs));
                assert!(q.jacobian_minor(&x) > 1e-6);
            }
        }
    }

    #[test]
    fn constraint_violations_are_named() {
        let err = BBeta1Quotient::new(BBeta1Label::D { n: 1 }, Divisor::simple(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap());
        assert!(matches!(err, Err(Error::ConstraintViolation(_))));
        let err = BBeta1Quotient::new(BBeta1Label::A0 { tau: None }, d01());
        assert!(matches!(err, Err(Error::ConstraintViolation(m)) if m.contains("A0")));
    }

    #[test]
    fn rgd_quotient_examples() {
        let q = rgd_quotients(&d01(), 1).unwrap();
        let x = AffinePoint::new(c(0.3, 0.2), c(1.0, -1.0));
        assert!(q.cover(&x).distance(&q.cover(&AffinePoint::new(x.z + 1.0, x.w))) < 1e-12);
        let q2 = rgd_quotients(&d01(), 2).unwrap();
        assert!(q2.cover(&x).distance(&q2.cover(&AffinePoint::new(x.z + 1.0, x.w))) > 0.1);
        let twice = Divisor::new(vec![(c(0.0, 0.0), 2)]).unwrap();
        assert_eq!(rgd_quotients(&twice, 1), Err(Error::NoQuotients));
    }

    #[test]
    fn rgd_cover_equivariance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let d = Divisor::simple(&[c(0.0, 0.0), two_pi_i(), two_pi_i() * 3.0]).unwrap();
        let q = rgd_quotients(&d, 2).unwrap();
        let grp = crate::bbeta::RgdGroup::new(d).unwrap();
        use crate::actions::GroupAction;
        for _ in 0..50 {
            let x = AffinePoint::random(&mut rng, 1.0);
            let g = grp.random_element(&mut rng);
            let lhs = q.cover(&crate::bbeta::rgd_act(&g, &x));
            assert!(lhs.distance(&q.act(&g, &q.cover(&x)).unwrap()) < 1e-9);
            let px = crate::bbeta::rgd_act(&q.pi_generator(), &x);
            assert!(q.cover(&px).distance(&q.cover(&x)) < 1e-12);
        }
    }

    fn random_case(rng: &mut rand_chacha::ChaCha8Rng, which: usize) -> (Divisor, BBeta1Label) {
        use rand::Rng;
        let n: u32 = rng.gen_range(1..=3);
        let tau = crate::lattice::reduce_tau(c(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..2.0))).0;
        let s = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let mut m: i64 = if rng.gen_bool(0.5) { rng.gen_range(1..4) } else { -rng.gen_range(1..4) };
        if m % n as i64 == 0 {
            // otherwise D would contain 0
            m = m.abs();
        }
        let ks: &[f64] = if rng.gen_bool(0.5) { &[0.0, 1.0] } else { &[0.0, 2.0, 3.0] };
        let on = |base: C64| Divisor::simple(&ks.iter().map(|k| base + two_pi_i() * *k).collect::<Vec<_>>()).unwrap();
        let generic = c(rng.gen_range(0.2..1.0), rng.gen_range(-1.0..1.0));
        let label = match which {
            0 => BBeta1Label::A0 { tau: Some(tau) },
            1 => BBeta1Label::B1 { n, lambda: generic },
            2 => BBeta1Label::C { n, m },
            3 => BBeta1Label::D { n },
            4 => BBeta1Label::E { n, m, s },
            5 => BBeta1Label::F { n, m },
            6 => BBeta1Label::G { n, tau },
            7 => BBeta1Label::H { n, m, s, tau },
            _ => BBeta1Label::I { n, lambda: c(0.0, PI / 2.0) / n as f64, tau: c(0.0, 1.0) },
        };
        let d = match &label {
            BBeta1Label::A0 { .. } => on(c(0.7, 0.0)),
            l => on(l.lambda().unwrap()),
        };
        (d, label)
    }

    #[test]
    fn classification_round_trips() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for case in 0..180 {
            let (dn, label) = random_case(&mut rng, case % 9);
            let base = classify_pi(&label.generators(), &dn).unwrap();
            assert_eq!(base.label.name(), label.name());
            let lambda = base_point(&dn).0;
            let zero_in = dn.mult_at(c(0.0, 0.0)) > 0;
            let aut = CentralizerAutomorphism {
                nu: random_c(&mut rng, 1.0) + 1.5,
                t: random_c(&mut rng, 1.0),
                t_prime: if zero_in { random_c(&mut rng, 1.0) } else { c(0.0, 0.0) },
            };
            let mu = c(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
            let d = dn.scaled(1.0 / mu).unwrap();
            let mut gens: Vec<CentralizerElement> = label
                .generators()
                .iter()
                .map(|g| aut.apply(lambda, g))
                .collect();
            for _ in 0..3 {
                let i = rng.gen_range(0..gens.len());
                let j = rng.gen_range(0..gens.len());
                if i != j {
                    gens[i] = zmul(lambda, &gens[i], &zpow(lambda, &gens[j], if rng.gen_bool(0.5) { 1 } else { -1 }));
                }
            }
            gens.reverse();
            let gens: Vec<CentralizerElement> =
                gens.iter().map(|g| CentralizerElement::new(g.varpi * mu, g.s)).collect();
            let got = classify_pi(&gens, &d).unwrap();
            assert!(
                got.label.approx_eq(&base.label, 1e-7),
                "{:?} vs {:?}",
                got.label,
                base.label
            );
        }
    }
}
