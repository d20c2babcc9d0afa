//! Rational reconstruction by continued fractions.

use num_integer::Integer;

use crate::tolerance::RATIONAL_RESIDUAL;

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Irrationals are approximated to `≈ 1 / (q² a)` by their convergents, with
/// `a` the next partial quotient; genuine rationals carry only rounding noise.
const SHARPNESS: f64 = 1e-6;

/// Best continued-fraction convergent of `x` with denominator at most `max_den`
/// whose residual is within `RATIONAL_RESIDUAL * max(1, |x|)` and within
/// `1e-6 * max(1, |x|) / q²`.
pub fn reconstruct(x: f64, max_den: u64) -> Option<Ratio> {
    reconstruct_tol(x, max_den, RATIONAL_RESIDUAL)
}

pub fn reconstruct_tol(x: f64, max_den: u64, tol: f64) -> Option<Ratio> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let tol = tol * x.abs().max(1.0);
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            return None;
        }
        let resid = (x - h2 as f64 / k2 as f64).abs();
        if resid <= tol && resid <= SHARPNESS * x.abs().max(1.0) / (k2 as f64 * k2 as f64) {
            let g = h2.gcd(&k2).max(1);
            return Some(Ratio {
                num: (h2 / g) as i64,
                den: (k2 / g) as i64,
            });
        }
        let frac = r - a;
        if frac <= f64::EPSILON {
            return None;
        }
        r = 1.0 / frac;
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
    }
    None
}

/// `Some(n)` if `x` is within `tol * max(1, |x|)` of the integer `n`.
pub fn near_integer(x: f64, tol: f64) -> Option<i64> {
    let n = x.round();
    if (x - n).abs() <= tol * x.abs().max(1.0) && n.abs() < 9e15 {
        Some(n as i64)
    } else {
        None
    }
}

pub fn lcm_all(dens: impl IntoIterator<Item = i64>) -> i128 {
    dens.into_iter().fold(1i128, |acc, d| acc.lcm(&(d as i128)))
}

/// Unimodular `U` (columns) with `m · U = (0, …, 0, g)`, `g = ±gcd(m)`.
pub fn column_reduce(m: &[i64]) -> (i64, Vec<Vec<i64>>) {
    let k = m.len();
    let mut v: Vec<i128> = m.iter().map(|&x| x as i128).collect();
    let mut u: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect();
    loop {
        let nz: Vec<usize> = (0..k).filter(|&i| v[i] != 0).collect();
        if nz.len() <= 1 {
            if let Some(&i) = nz.first() {
                if i != k - 1 {
                    v.swap(i, k - 1);
                    for row in u.iter_mut() {
                        row.swap(i, k - 1);
                    }
                }
            }
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| v[i].abs()).unwrap();
        for &i in &nz {
            if i != p {
                let q = v[i] / v[p];
                v[i] -= q * v[p];
                for row in u.iter_mut() {
                    row[i] -= q * row[p];
                }
            }
        }
    }
    let u = u.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect();
    (v[k - 1] as i64, u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_fractions() {
        assert_eq!(reconstruct(0.5, 1000), Some(Ratio { num: 1, den: 2 }));
        assert_eq!(reconstruct(-7.0 / 3.0, 1000), Some(Ratio { num: -7, den: 3 }));
        assert_eq!(reconstruct(4.0, 10), Some(Ratio { num: 4, den: 1 }));
        assert_eq!(reconstruct(0.0, 10), Some(Ratio { num: 0, den: 1 }));
    }

    #[test]
    fn rejects_irrationals() {
        assert_eq!(reconstruct(2f64.sqrt(), 1_000_000), None);
        assert_eq!(reconstruct(std::f64::consts::PI, 1_000_000), None);
        assert_eq!(reconstruct(355.0 / 113.0, 1_000_000), Some(Ratio { num: 355, den: 113 }));
    }

    #[test]
    fn respects_denominator_bound() {
        assert_eq!(reconstruct(1.0 / 997.0, 100), None);
        assert!(reconstruct(1.0 / 997.0, 1000).is_some());
    }

    #[test]
    fn column_reduce_is_unimodular_gcd() {
        let m = [6i64, 10, 15];
        let (g, u) = column_reduce(&m);
        assert_eq!(g.abs(), 1);
        for (j, _) in u.iter().enumerate() {
            let s: i64 = (0..3).map(|i| m[i] * u[i][j]).sum();
            assert_eq!(s, if j == 2 { g } else { 0 });
        }
    }

    #[test]
    fn near_integer_checks_residual() {
        assert_eq!(near_integer(3.0000000001, 1e-8), Some(3));
        assert_eq!(near_integer(3.1, 1e-8), None);
    }
}
