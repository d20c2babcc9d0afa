//! Projective models: Möbius and symmetric-power actions, the affine quadric,
//! the line bundles O(n) over P¹ with their affine-group extensions, and the
//! linear actions on C² ∖ 0.

use nalgebra::{DMatrix, Vector2};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::actions::GroupAction;
use crate::error::{Error, Result};
use crate::linalg::{self, c, entries2, poly_mul, poly_pow, random_c, Mat2, Mat3};
use crate::points::{AffinePoint, Proj2Point, ProjPoint, QuadricPoint};
use crate::scalar::cx;
use crate::tolerance::{rel_err, CHART_DENOMINATOR};
use crate::C64;

pub fn mobius_act(g: &Mat2, x: &ProjPoint) -> Result<ProjPoint> {
    x.mobius(g)
}

/// Matrix of `g` on `Sym^n C²` in the monomial basis `Z1^n, Z1^{n-1} Z2, …, Z2^n`,
/// defined by `S(g) m(v) = m(g v)` where `m(v)_k = v1^{n-k} v2^k`.
pub fn sym_power_rep(g: &Mat2, n: usize) -> DMatrix<C64> {
    let (a, b, cc, d) = (g[(0, 0)], g[(0, 1)], g[(1, 0)], g[(1, 1)]);
    let mut s = DMatrix::from_element(n + 1, n + 1, c(0.0, 0.0));
    for k in 0..=n {
        // (a + b t)^{n-k} (c + d t)^k in t = v2 / v1
        let row = poly_mul(&poly_pow(&[a, b], n - k), &poly_pow(&[cc, d], k));
        for (j, x) in row.into_iter().enumerate() {
            s[(k, j)] = x;
        }
    }
    s
}

/// Action of `g` on conics `[a : b : c]` (the binary quadratic `a Z1² + b Z1 Z2 + c Z2²`)
/// sending the conic with roots `α, β` to the one with roots `gα, gβ`: `S(g⁻¹)ᵀ`.
pub fn conic_action(g: &Mat2) -> Result<Mat3> {
    let gi = g.try_inverse().ok_or_else(|| Error::Invalid("singular matrix".into()))?;
    let s = sym_power_rep(&gi, 2).transpose();
    Ok(Mat3::from_fn(|i, j| s[(i, j)]))
}

/// `(α, β) ↦ (1, α+β, αβ)/(α-β)` in homogeneous form; lands on `y² - 4xz = 1`.
pub fn quadric_embed(q: &QuadricPoint) -> [C64; 3] {
    let [a1, a2] = q.alpha().coords();
    let [b1, b2] = q.beta().coords();
    let delta = a1 * b2 - a2 * b1;
    [a2 * b2 / delta, (a1 * b2 + a2 * b1) / delta, a1 * b1 / delta]
}

/// The conic `(Z1 - α Z2)(Z1 - β Z2)` as `[1 : -(α+β) : αβ]`, homogenised.
pub fn quadric_double_cover(q: &QuadricPoint) -> Proj2Point {
    let [a1, a2] = q.alpha().coords();
    let [b1, b2] = q.beta().coords();
    Proj2Point::new([a2 * b2, -(a1 * b2 + a2 * b1), a1 * b1]).expect("distinct roots give a nonzero conic")
}

/// Both ordered root pairs of a nondegenerate conic.
pub fn quadric_preimages(p: &Proj2Point) -> Result<[QuadricPoint; 2]> {
    let [a, b, cc] = p.coords();
    let disc = b * b - 4.0 * a * cc;
    if disc.norm() <= 1e-12 * (b.norm_sqr() + (a * cc).norm()).max(1e-300) {
        return Err(Error::OutsideDomain("conic is degenerate".into()));
    }
    let s = disc.sqrt();
    // roots [Z1 : Z2] of a Z1² + b Z1 Z2 + c Z2²
    let roots = if a.norm() >= cc.norm() {
        [ProjPoint::new(-b + s, 2.0 * a)?, ProjPoint::new(-b - s, 2.0 * a)?]
    } else {
        [ProjPoint::new(2.0 * cc, -b - s)?, ProjPoint::new(2.0 * cc, -b + s)?]
    };
    let q = QuadricPoint::new(roots[0], roots[1])?;
    Ok([q, q.swapped()])
}

/// Point of the total space of O(n) in one of the two standard charts:
/// chart 0 is `(z, w)` over `[z : 1]`, chart 1 is `(Z, W) = (1/z, w/zⁿ)` over `[1 : Z]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BundlePoint {
    pub chart: u8,
    #[serde(with = "cx")]
    pub z: C64,
    #[serde(with = "cx")]
    pub w: C64,
}

impl BundlePoint {
    pub fn chart0(z: C64, w: C64) -> Self {
        BundlePoint { chart: 0, z, w }
    }

    pub fn chart1(z: C64, w: C64) -> Self {
        BundlePoint { chart: 1, z, w }
    }

    /// A vector on the fibre's line and the section value there.
    pub fn homogeneous(&self) -> ([C64; 2], C64) {
        match self.chart {
            0 => ([self.z, c(1.0, 0.0)], self.w),
            _ => ([c(1.0, 0.0), self.z], self.w),
        }
    }

    /// Back from homogeneous data, in `prefer` when its denominator is large enough.
    pub fn from_homogeneous(v: [C64; 2], val: C64, n: usize, prefer: u8) -> Result<Self> {
        let scale = v[0].norm().max(v[1].norm());
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::OutsideDomain("zero vector".into()));
        }
        let ok0 = v[1].norm() >= CHART_DENOMINATOR * scale;
        let ok1 = v[0].norm() >= CHART_DENOMINATOR * scale;
        let chart = match (prefer, ok0, ok1) {
            (0, true, _) => 0,
            (1, _, true) => 1,
            (_, true, _) => 0,
            _ => 1,
        };
        Ok(if chart == 0 {
            BundlePoint::chart0(v[0] / v[1], val / v[1].powu(n as u32))
        } else {
            BundlePoint::chart1(v[1] / v[0], val / v[0].powu(n as u32))
        })
    }

    /// The same point in `chart`.
    pub fn in_chart(&self, n: usize, chart: u8) -> Result<Self> {
        if chart == self.chart {
            return Ok(*self);
        }
        if self.z.norm() == 0.0 {
            return Err(Error::OutsideDomain("point not covered by the other chart".into()));
        }
        Ok(BundlePoint { chart, z: 1.0 / self.z, w: self.w / self.z.powu(n as u32) })
    }

    /// Chart 0 when `|z| <= 1` there, else chart 1.
    pub fn canonical(&self, n: usize) -> Self {
        let (v, val) = self.homogeneous();
        let prefer = if v[0].norm() <= v[1].norm() { 0 } else { 1 };
        BundlePoint::from_homogeneous(v, val, n, prefer).unwrap_or(*self)
    }

    pub fn distance(&self, other: &BundlePoint, n: usize) -> f64 {
        let a = self.canonical(n);
        match other.in_chart(n, a.chart) {
            Ok(b) => rel_err(a.z, b.z).max(rel_err(a.w, b.w)),
            Err(_) => f64::INFINITY,
        }
    }
}

/// Element `(g, p)` of `GL₂ ⋉ Sym^n`, with `p = Σ p[i] Z1^i Z2^{n-i}`.
/// Product `(g₀, p₀)(g₁, p₁) = (g₀ g₁, p₀ + p₁ ∘ g₀⁻¹)`; `(μ g, p) = (g, p)` for `μⁿ = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnElement {
    #[serde(with = "linalg::mat2")]
    pub g: Mat2,
    #[serde(with = "crate::scalar::cx_vec")]
    pub p: Vec<C64>,
}

impl OnElement {
    pub fn identity(n: usize) -> Self {
        OnElement { g: Mat2::identity(), p: vec![c(0.0, 0.0); n + 1] }
    }

    pub fn degree(&self) -> usize {
        self.p.len().saturating_sub(1)
    }

    fn check(&self) -> Result<()> {
        if self.p.is_empty() {
            return Err(Error::Invalid("section polynomial needs n + 1 coefficients".into()));
        }
        if self.g.determinant().norm() == 0.0 {
            return Err(Error::Invalid("singular matrix".into()));
        }
        Ok(())
    }

    /// Representative with `arg` of the first nonzero entry of `g` in `[0, 2π/n)`.
    pub fn canonical(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return self.clone();
        }
        let lead = entries2(&self.g).into_iter().find(|x| x.norm() > 1e-12).unwrap_or(c(1.0, 0.0));
        let sector = std::f64::consts::TAU / n as f64;
        let k = (lead.arg().rem_euclid(std::f64::consts::TAU) / sector).floor();
        let mu = C64::from_polar(1.0, -k * sector);
        OnElement { g: self.g * mu, p: self.p.clone() }
    }
}

/// `p ∘ h` for a homogeneous polynomial stored as in [`OnElement`].
pub fn compose_linear(p: &[C64], h: &Mat2) -> Vec<C64> {
    let n = p.len().saturating_sub(1);
    let mut out = vec![c(0.0, 0.0); n + 1];
    // with Z2 = 1 and t = Z1: (h11 t + h12)^i (h21 t + h22)^{n-i}
    for (i, coef) in p.iter().enumerate() {
        if coef.norm() == 0.0 {
            continue;
        }
        let term = poly_mul(
            &poly_pow(&[h[(0, 1)], h[(0, 0)]], i),
            &poly_pow(&[h[(1, 1)], h[(1, 0)]], n - i),
        );
        for (j, x) in term.into_iter().enumerate() {
            out[j] += coef * x;
        }
    }
    out
}

fn eval_homogeneous(p: &[C64], v: [C64; 2]) -> C64 {
    let n = p.len().saturating_sub(1);
    p.iter()
        .enumerate()
        .map(|(i, coef)| coef * v[0].powu(i as u32) * v[1].powu((n - i) as u32))
        .sum()
}

pub fn on_multiply(a: &OnElement, b: &OnElement) -> Result<OnElement> {
    a.check()?;
    b.check()?;
    if a.p.len() != b.p.len() {
        return Err(Error::FamilyMismatch("bundle degrees differ".into()));
    }
    let ginv = a.g.try_inverse().ok_or_else(|| Error::Invalid("singular matrix".into()))?;
    let moved = compose_linear(&b.p, &ginv);
    Ok(OnElement {
        g: a.g * b.g,
        p: a.p.iter().zip(moved).map(|(x, y)| x + y).collect(),
    })
}

pub fn on_inverse(a: &OnElement) -> Result<OnElement> {
    a.check()?;
    let ginv = a.g.try_inverse().ok_or_else(|| Error::Invalid("singular matrix".into()))?;
    Ok(OnElement {
        g: ginv,
        p: compose_linear(&a.p, &a.g).into_iter().map(|x| -x).collect(),
    })
}

/// `(g, p)·(v, s) = (g v, s + p(g v))`; the result stays in the input chart when possible.
pub fn on_act(e: &OnElement, x: &BundlePoint) -> Result<BundlePoint> {
    e.check()?;
    let n = e.degree();
    let (v, val) = x.homogeneous();
    let gv = e.g * Vector2::new(v[0], v[1]);
    let gv = [gv[0], gv[1]];
    BundlePoint::from_homogeneous(gv, val + eval_homogeneous(&e.p, gv), n, x.chart)
}

/// The chart formulas themselves, in `chart`, without switching:
/// chart 0: `(z, w) ↦ ((az+b)/(cz+d), w/(cz+d)ⁿ + p(z', 1))`,
/// chart 1: `(Z, W) ↦ ((c+dZ)/(a+bZ), W/(a+bZ)ⁿ + p(1, Z'))`.
pub fn on_act_in_chart(e: &OnElement, x: &BundlePoint, chart: u8) -> Result<BundlePoint> {
    e.check()?;
    let n = e.degree();
    let x = x.in_chart(n, chart)?;
    let [a, b, cc, d] = entries2(&e.g);
    let (num, den) = if chart == 0 { (a * x.z + b, cc * x.z + d) } else { (cc + d * x.z, a + b * x.z) };
    if den.norm() < CHART_DENOMINATOR * (num.norm().max(1.0)) {
        return Err(Error::OutsideDomain("image leaves the chart".into()));
    }
    let z1 = num / den;
    let w1 = x.w / den.powu(n as u32);
    let v = if chart == 0 { [z1, c(1.0, 0.0)] } else { [c(1.0, 0.0), z1] };
    Ok(BundlePoint { chart, z: z1, w: w1 + eval_homogeneous(&e.p, v) })
}

fn on_distance(a: &OnElement, b: &OnElement) -> f64 {
    let n = a.degree().max(1);
    let pd = linalg::mat_distance(&a.p, &b.p);
    let gd = (0..n)
        .map(|k| {
            let mu = C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
            linalg::mat_distance(&entries2(&(a.g * mu)), &entries2(&b.g))
        })
        .fold(f64::INFINITY, f64::min);
    if a.degree() == 0 {
        // O(0): scalars act trivially, compare projectively
        return linalg::projective_distance(&entries2(&a.g), &entries2(&b.g)).max(pd);
    }
    gd.max(pd)
}

fn random_poly(rng: &mut dyn RngCore, n: usize) -> Vec<C64> {
    (0..=n).map(|_| random_c(rng, 0.5)).collect()
}

/// `GL₂/Z_n ⋉ Symⁿ` (Bδ4) or `SL₂/(±1)ⁿ ⋉ Symⁿ` (Bδ3) on O(n).
#[derive(Debug, Clone, PartialEq)]
pub struct OnGroup {
    pub n: usize,
    pub special: bool,
}

impl GroupAction for OnGroup {
    type Element = OnElement;
    type Point = BundlePoint;

    fn identity(&self) -> OnElement {
        OnElement::identity(self.n)
    }
    fn multiply(&self, g: &OnElement, h: &OnElement) -> Result<OnElement> {
        on_multiply(g, h)
    }
    fn inverse(&self, g: &OnElement) -> Result<OnElement> {
        on_inverse(g)
    }
    fn act(&self, g: &OnElement, x: &BundlePoint) -> Result<BundlePoint> {
        if g.degree() != self.n {
            return Err(Error::FamilyMismatch(format!("expected O({})", self.n)));
        }
        if self.special && rel_err(g.g.determinant(), c(1.0, 0.0)) > 1e-8 {
            return Err(Error::ConstraintViolation("determinant must be 1".into()));
        }
        on_act(g, x)
    }
    fn element_distance(&self, g: &OnElement, h: &OnElement) -> f64 {
        on_distance(g, h)
    }
    fn point_distance(&self, x: &BundlePoint, y: &BundlePoint) -> f64 {
        x.distance(y, self.n)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> OnElement {
        let g = if self.special { linalg::random_sl2(rng) } else { linalg::random_gl2(rng) };
        OnElement { g, p: random_poly(rng, self.n) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> BundlePoint {
        let p = BundlePoint::chart0(random_c(rng, 1.5), random_c(rng, 1.0));
        if rng.gen_bool(0.5) {
            p.canonical(self.n)
        } else {
            p
        }
    }
}

/// Subfamilies of `GL₂/Z_n ⋉ Symⁿ` preserving the chart-0 copy of C².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "sub")]
pub enum BGammaSub {
    /// `C^n_c`, rescalings acting as `(z, w) ↦ (e^λ z, e^{λc} w)`, `c ≠ 0`.
    One {
        #[serde(with = "cx")]
        c: C64,
    },
    /// `c = 0`: rescalings fix `w`.
    Two,
    /// `g = [[1, b], [0, e^{-λ}]]`, `p = λ Z1ⁿ + Z2 r`.
    Three,
}

/// Parameters `(λ, b, p)` of an element of Bγ1, Bγ2 or Bγ3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BGammaElement {
    #[serde(with = "cx")]
    pub lambda: C64,
    #[serde(with = "cx")]
    pub b: C64,
    #[serde(with = "crate::scalar::cx_vec")]
    pub p: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BGammaGroup {
    pub n: usize,
    pub sub: BGammaSub,
}

impl BGammaGroup {
    pub fn new(n: usize, sub: BGammaSub) -> Result<Self> {
        if n == 0 {
            return Err(Error::ConstraintViolation("n must be at least 1".into()));
        }
        if let BGammaSub::One { c } = sub {
            if c.norm() <= 1e-12 {
                return Err(Error::ConstraintViolation("c = 0 is Bγ2".into()));
            }
        }
        Ok(BGammaGroup { n, sub })
    }

    /// The element of `GL₂/Z_n ⋉ Symⁿ` with these parameters.
    pub fn to_on(&self, e: &BGammaElement) -> Result<OnElement> {
        if e.p.len() != self.n + 1 {
            return Err(Error::ConstraintViolation(format!("p needs {} coefficients", self.n + 1)));
        }
        let n = self.n as f64;
        let g = match self.sub {
            BGammaSub::One { c: cc } => Mat2::new(
                (e.lambda * (1.0 - cc / n)).exp(),
                e.b,
                c(0.0, 0.0),
                (-e.lambda * cc / n).exp(),
            ),
            BGammaSub::Two => Mat2::new(e.lambda.exp(), e.b, c(0.0, 0.0), c(1.0, 0.0)),
            BGammaSub::Three => {
                if rel_err(e.p[self.n], e.lambda) > 1e-9 {
                    return Err(Error::ConstraintViolation(
                        "the Z1^n coefficient of p must equal λ".into(),
                    ));
                }
                Mat2::new(c(1.0, 0.0), e.b, c(0.0, 0.0), (-e.lambda).exp())
            }
        };
        Ok(OnElement { g, p: e.p.clone() })
    }
}

/// Action on the chart-0 copy of C².
pub fn bgamma_act(group: &BGammaGroup, e: &BGammaElement, x: &AffinePoint) -> Result<AffinePoint> {
    let y = on_act_in_chart(&group.to_on(e)?, &BundlePoint::chart0(x.z, x.w), 0)?;
    Ok(AffinePoint::new(y.z, y.w))
}

impl GroupAction for BGammaGroup {
    type Element = BGammaElement;
    type Point = AffinePoint;

    fn identity(&self) -> BGammaElement {
        BGammaElement { lambda: c(0.0, 0.0), b: c(0.0, 0.0), p: vec![c(0.0, 0.0); self.n + 1] }
    }
    fn multiply(&self, g: &BGammaElement, h: &BGammaElement) -> Result<BGammaElement> {
        let prod = on_multiply(&self.to_on(g)?, &self.to_on(h)?)?;
        Ok(BGammaElement { lambda: g.lambda + h.lambda, b: prod.g[(0, 1)], p: prod.p })
    }
    fn inverse(&self, g: &BGammaElement) -> Result<BGammaElement> {
        let inv = on_inverse(&self.to_on(g)?)?;
        Ok(BGammaElement { lambda: -g.lambda, b: inv.g[(0, 1)], p: inv.p })
    }
    fn act(&self, g: &BGammaElement, x: &AffinePoint) -> Result<AffinePoint> {
        bgamma_act(self, g, x)
    }
    fn element_distance(&self, g: &BGammaElement, h: &BGammaElement) -> f64 {
        rel_err(g.lambda, h.lambda)
            .max(rel_err(g.b, h.b))
            .max(linalg::mat_distance(&g.p, &h.p))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> BGammaElement {
        let lambda = random_c(rng, 0.7);
        let mut p = random_poly(rng, self.n);
        if self.sub == BGammaSub::Three {
            p[self.n] = lambda;
        }
        BGammaElement { lambda, b: random_c(rng, 0.7), p }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// Bγ4: upper-triangular `g` in `GL₂/Z_n ⋉ Symⁿ`, acting on the chart-0 C².
#[derive(Debug, Clone, PartialEq)]
pub struct BGamma4Group {
    pub n: usize,
}

impl BGamma4Group {
    fn check(&self, e: &OnElement) -> Result<()> {
        if e.g[(1, 0)].norm() > 1e-12 * e.g.norm() {
            return Err(Error::ConstraintViolation("g must be upper triangular".into()));
        }
        if e.degree() != self.n {
            return Err(Error::FamilyMismatch(format!("expected O({})", self.n)));
        }
        Ok(())
    }
}

impl GroupAction for BGamma4Group {
    type Element = OnElement;
    type Point = AffinePoint;

    fn identity(&self) -> OnElement {
        OnElement::identity(self.n)
    }
    fn multiply(&self, g: &OnElement, h: &OnElement) -> Result<OnElement> {
        self.check(g)?;
        self.check(h)?;
        on_multiply(g, h)
    }
    fn inverse(&self, g: &OnElement) -> Result<OnElement> {
        self.check(g)?;
        on_inverse(g)
    }
    fn act(&self, g: &OnElement, x: &AffinePoint) -> Result<AffinePoint> {
        self.check(g)?;
        let y = on_act_in_chart(g, &BundlePoint::chart0(x.z, x.w), 0)?;
        Ok(AffinePoint::new(y.z, y.w))
    }
    fn element_distance(&self, g: &OnElement, h: &OnElement) -> f64 {
        on_distance(g, h)
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        x.distance(y)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> OnElement {
        let mut g = linalg::random_gl2(rng);
        g[(1, 0)] = c(0.0, 0.0);
        if g.determinant().norm() < 0.2 {
            g[(0, 0)] = c(1.0, 0.0);
            g[(1, 1)] = c(1.0, 0.0);
        }
        OnElement { g, p: random_poly(rng, self.n) }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        AffinePoint::random(rng, 1.0)
    }
}

/// Linear `SL₂` (Bδ1) or `GL₂` (Bδ2) on `C² ∖ 0`, optionally on the Hopf
/// quotient by `⟨λ⟩`, `0 < |λ| < 1` (Bδ1′, Bδ2′).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearGroup {
    pub special: bool,
    pub hopf: Option<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearElement {
    #[serde(with = "linalg::mat2")]
    pub m: Mat2,
}

impl LinearGroup {
    pub fn new(special: bool, hopf: Option<C64>) -> Result<Self> {
        if let Some(l) = hopf {
            if !(l.norm() > 0.0 && l.norm() < 1.0) {
                return Err(Error::ConstraintViolation("need 0 < |λ| < 1".into()));
            }
        }
        Ok(LinearGroup { special, hopf })
    }

    /// Representative `λᵏ x` with `|λ| < |λᵏ x| <= 1`.
    pub fn reduce(&self, x: &AffinePoint) -> Result<AffinePoint> {
        let r = (x.z.norm_sqr() + x.w.norm_sqr()).sqrt();
        if r == 0.0 {
            return Err(Error::OutsideDomain("the origin is removed".into()));
        }
        let Some(l) = self.hopf else { return Ok(*x) };
        let big_l = -l.norm().ln();
        let mut k = (r.ln() / big_l).ceil() as i32;
        let scaled = |k: i32| -> f64 { r * l.norm().powi(k) };
        if scaled(k) > 1.0 {
            k += 1;
        } else if scaled(k) <= l.norm() {
            k -= 1;
        }
        let f = l.powi(k);
        Ok(AffinePoint::new(x.z * f, x.w * f))
    }
}

impl GroupAction for LinearGroup {
    type Element = LinearElement;
    type Point = AffinePoint;

    fn identity(&self) -> LinearElement {
        LinearElement { m: Mat2::identity() }
    }
    fn multiply(&self, g: &LinearElement, h: &LinearElement) -> Result<LinearElement> {
        Ok(LinearElement { m: g.m * h.m })
    }
    fn inverse(&self, g: &LinearElement) -> Result<LinearElement> {
        g.m.try_inverse()
            .map(|m| LinearElement { m })
            .ok_or_else(|| Error::Invalid("singular matrix".into()))
    }
    fn act(&self, g: &LinearElement, x: &AffinePoint) -> Result<AffinePoint> {
        if self.special && rel_err(g.m.determinant(), c(1.0, 0.0)) > 1e-8 {
            return Err(Error::ConstraintViolation("determinant must be 1".into()));
        }
        let y = g.m * Vector2::new(x.z, x.w);
        self.reduce(&AffinePoint::new(y[0], y[1]))
    }
    fn element_distance(&self, g: &LinearElement, h: &LinearElement) -> f64 {
        linalg::mat_distance(&entries2(&g.m), &entries2(&h.m))
    }
    fn point_distance(&self, x: &AffinePoint, y: &AffinePoint) -> f64 {
        match self.hopf {
            None => x.distance(y),
            Some(l) => [c(1.0, 0.0), l, 1.0 / l]
                .into_iter()
                .map(|f| AffinePoint::new(x.z * f, x.w * f).distance(y))
                .fold(f64::INFINITY, f64::min),
        }
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> LinearElement {
        LinearElement { m: if self.special { linalg::random_sl2(rng) } else { linalg::random_gl2(rng) } }
    }
    fn random_point(&self, rng: &mut dyn RngCore) -> AffinePoint {
        loop {
            let p = AffinePoint::random(rng, 1.0);
            if p.z.norm() + p.w.norm() > 0.1 {
                return self.reduce(&p).expect("nonzero");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_power_of_diagonal() {
        let a = c(2.0, 1.0);
        let s = sym_power_rep(&Mat2::new(a, c(0.0, 0.0), c(0.0, 0.0), 1.0 / a), 2);
        assert!((s[(0, 0)] - a * a).norm() < 1e-12);
        assert!((s[(1, 1)] - 1.0).norm() < 1e-12);
        assert!((s[(2, 2)] - 1.0 / (a * a)).norm() < 1e-12);
    }

    #[test]
    fn quadric_examples() {
        let q = QuadricPoint::new(ProjPoint::affine(c(1.0, 0.0)), ProjPoint::affine(c(-1.0, 0.0))).unwrap();
        let e = quadric_embed(&q);
        assert!((e[0] - 0.5).norm() < 1e-12 && e[1].norm() < 1e-12 && (e[2] + 0.5).norm() < 1e-12);
        let d = quadric_double_cover(&q);
        assert!(d.distance(&Proj2Point::new([c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).unwrap()) < 1e-12);
    }

    #[test]
    fn bundle_examples() {
        let e = OnElement { g: Mat2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)), p: vec![c(0.0, 0.0); 3] };
        let y = on_act(&e, &BundlePoint::chart0(c(2.0, 0.0), c(8.0, 0.0))).unwrap();
        assert!(y.distance(&BundlePoint::chart0(c(1.0, 0.0), c(2.0, 0.0)), 2) < 1e-12);
        let e = OnElement { g: Mat2::identity(), p: vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)] };
        let y = on_act(&e, &BundlePoint::chart0(c(3.0, 0.0), c(0.0, 0.0))).unwrap();
        assert_eq!(y.chart, 0);
        assert!((y.z - 3.0).norm() < 1e-12 && (y.w - 9.0).norm() < 1e-12);
    }

    #[test]
    fn bgamma_rescaling_example() {
        let grp = BGammaGroup::new(2, BGammaSub::One { c: c(2.0, 0.0) }).unwrap();
        let e = BGammaElement { lambda: c(2f64.ln(), 0.0), b: c(0.0, 0.0), p: vec![c(0.0, 0.0); 3] };
        let y = bgamma_act(&grp, &e, &AffinePoint::new(c(1.0, 0.0), c(1.0, 0.0))).unwrap();
        assert!((y.z - 2.0).norm() < 1e-12 && (y.w - 4.0).norm() < 1e-12);
    }

    #[test]
    fn hopf_reduction_lands_in_annulus() {
        let g = LinearGroup::new(false, Some(c(0.5, 0.0))).unwrap();
        for r in [0.01, 0.3, 0.5, 1.0, 7.0, 1e3] {
            let y = g.reduce(&AffinePoint::new(c(r, 0.0), c(0.0, 0.0))).unwrap();
            let m = y.z.norm();
            assert!(m > 0.5 && m <= 1.0 + 1e-12, "{r} -> {m}");
        }
    }
}
