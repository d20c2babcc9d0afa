//! Numeric tolerances shared by every module.

use std::sync::OnceLock;

use crate::C64;

/// Default relative tolerance for comparing complex scalars.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Coefficients below this absolute size are treated as exact zeros.
pub const ZERO_CUTOFF: f64 = 1e-12;
/// Residual accepted by rational reconstruction.
pub const RATIONAL_RESIDUAL: f64 = 1e-8;
/// Default denominator bound for rational reconstruction.
pub const DENOMINATOR_BOUND: u64 = 1_000_000;
/// Singular values below this fraction of the largest count as zero.
pub const RANK_THRESHOLD: f64 = 1e-8;
/// Smallest chart denominator tolerated before switching charts.
pub const CHART_DENOMINATOR: f64 = 1e-6;
/// Largest order searched when recognising roots of unity.
pub const ROOT_OF_UNITY_BOUND: u64 = 1000;
/// Largest divisor degree accepted.
pub const MAX_DIVISOR_DEGREE: u32 = 32;

/// Process-wide tolerance, `HOMSURF_EPS` if set and parseable, else [`DEFAULT_EPS`].
pub fn eps() -> f64 {
    static EPS: OnceLock<f64> = OnceLock::new();
    *EPS.get_or_init(|| {
        std::env::var("HOMSURF_EPS")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|e| e.is_finite() && *e > 0.0)
            .unwrap_or(DEFAULT_EPS)
    })
}

/// Relative comparison: `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}

/// Relative error in the sense of [`close`].
pub fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

/// Largest componentwise relative error between two slices.
pub fn rel_err_slice(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| rel_err(*x, *y)).fold(0.0, f64::max)
}

pub fn is_zero(a: C64, tol: f64) -> bool {
    a.norm() <= tol
}
