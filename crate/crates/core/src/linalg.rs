//! Small complex matrices: wire format, random sampling, projective comparison.

use nalgebra::{Matrix2, Matrix3};
use rand::{Rng, RngCore};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Cx;
use crate::C64;

pub type Mat2 = Matrix2<C64>;
pub type Mat3 = Matrix3<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn random_c(rng: &mut dyn RngCore, r: f64) -> C64 {
    C64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Random complex number with modulus in `[lo, hi]`.
pub fn random_unitish(rng: &mut dyn RngCore, lo: f64, hi: f64) -> C64 {
    C64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `I + perturbation`, comfortably invertible.
pub fn random_gl2(rng: &mut dyn RngCore) -> Mat2 {
    loop {
        let m = Mat2::new(
            c(1.0, 0.0) + random_c(rng, 0.6),
            random_c(rng, 0.6),
            random_c(rng, 0.6),
            c(1.0, 0.0) + random_c(rng, 0.6),
        );
        if m.determinant().norm() > 0.2 {
            return m;
        }
    }
}

pub fn random_sl2(rng: &mut dyn RngCore) -> Mat2 {
    let m = random_gl2(rng);
    m / m.determinant().sqrt()
}

pub fn random_gl3(rng: &mut dyn RngCore) -> Mat3 {
    loop {
        let m = Mat3::from_fn(|i, j| {
            random_c(rng, 0.5) + if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }
        });
        if m.determinant().norm() > 0.2 {
            return m;
        }
    }
}

/// Distance between `a` and `b` modulo nonzero scalars, as unit vectors
/// after aligning phases. Zero exactly when `a = λ b`.
pub fn projective_distance(a: &[C64], b: &[C64]) -> f64 {
    let na = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 0.0 } else { f64::INFINITY };
    }
    let inner: C64 = a.iter().zip(b).map(|(x, y)| y.conj() * x).sum();
    let phase = if inner.norm() == 0.0 { c(1.0, 0.0) } else { inner / inner.norm() };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x / na - phase * y / nb).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn entries2(m: &Mat2) -> [C64; 4] {
    [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]]
}

pub fn entries3(m: &Mat3) -> Vec<C64> {
    m.iter().copied().collect()
}

/// Componentwise relative distance between matrices.
pub fn mat_distance(a: &[C64], b: &[C64]) -> f64 {
    let scale = a
        .iter()
        .chain(b)
        .map(|x| x.norm())
        .fold(1.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale
}

/// `#[serde(with = "crate::linalg::mat2")]`: row-major `[[{re,im}, ..], ..]`.
pub mod mat2 {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Mat2, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Cx>> = (0..2).map(|i| (0..2).map(|j| m[(i, j)].into()).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mat2, D::Error> {
        let rows = Vec::<Vec<Cx>>::deserialize(d)?;
        if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
            return Err(serde::de::Error::custom("expected a 2x2 matrix"));
        }
        Ok(Mat2::from_fn(|i, j| rows[i][j].into()))
    }
}

/// `#[serde(with = "crate::linalg::mat3")]`
pub mod mat3 {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Mat3, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Cx>> = (0..3).map(|i| (0..3).map(|j| m[(i, j)].into()).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mat3, D::Error> {
        let rows = Vec::<Vec<Cx>>::deserialize(d)?;
        if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
            return Err(serde::de::Error::custom("expected a 3x3 matrix"));
        }
        Ok(Mat3::from_fn(|i, j| rows[i][j].into()))
    }
}

/// Product of polynomials given by coefficient vectors (index = degree).
pub fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![c(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_pow(a: &[C64], k: usize) -> Vec<C64> {
    (0..k).fold(vec![c(1.0, 0.0)], |acc, _| poly_mul(&acc, a))
}
