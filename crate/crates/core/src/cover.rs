//! Points of quotient surfaces given by explicit covering maps.

use serde::{Deserialize, Serialize};

use crate::lattice::ComplexLattice;
use crate::scalar::cx_vec;
use crate::tolerance::rel_err;
use crate::C64;

/// Coordinates in `C^k`, one of which may be taken modulo a lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverPoint {
    #[serde(with = "cx_vec")]
    pub coords: Vec<C64>,
    /// `(index, basis)`: `coords[index]` lives in `C / Z-span(basis)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic: Option<Periodic>,
    /// `(z, w) ~ (z + period, multiplier·w)` on the first two coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Twist>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Twist {
    #[serde(with = "crate::scalar::cx")]
    pub period: C64,
    #[serde(with = "crate::scalar::cx")]
    pub multiplier: C64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Periodic {
    pub index: usize,
    #[serde(with = "cx_vec")]
    pub basis: Vec<C64>,
}

impl CoverPoint {
    pub fn plain(coords: Vec<C64>) -> Self {
        CoverPoint { coords, periodic: None, twist: None }
    }

    /// `coords[index]` is reduced into the fundamental parallelogram.
    pub fn periodic(mut coords: Vec<C64>, index: usize, lattice: &ComplexLattice) -> Self {
        coords[index] = lattice.reduce(coords[index]);
        CoverPoint {
            coords,
            periodic: Some(Periodic { index, basis: lattice.basis().to_vec() }),
            twist: None,
        }
    }

    pub fn distance(&self, other: &CoverPoint) -> f64 {
        if self.coords.len() != other.coords.len() {
            return f64::INFINITY;
        }
        match self.twist {
            Some(tw) if self.coords.len() >= 2 => [-1i32, 0, 1]
                .iter()
                .map(|&k| {
                    let mut moved = other.clone();
                    moved.coords[0] += tw.period * k as f64;
                    moved.coords[1] *= tw.multiplier.powi(k);
                    self.untwisted_distance(&moved)
                })
                .fold(f64::INFINITY, f64::min),
            _ => self.untwisted_distance(other),
        }
    }

    fn untwisted_distance(&self, other: &CoverPoint) -> f64 {
        let mut worst = 0.0f64;
        for (k, (x, y)) in self.coords.iter().zip(&other.coords).enumerate() {
            let d = match &self.periodic {
                Some(p) if p.index == k => {
                    let l = ComplexLattice::from_basis(p.basis.clone()).unwrap_or_else(|_| ComplexLattice::trivial());
                    lattice_distance(&l, *x, *y)
                }
                _ => rel_err(*x, *y),
            };
            worst = worst.max(d);
        }
        worst
    }
}

/// Distance between `x + Λ` and `y + Λ`, relative to `max(1, |x|, |y|)`.
pub fn lattice_distance(l: &ComplexLattice, x: C64, y: C64) -> f64 {
    let r = l.reduce(x - y);
    let b = l.basis();
    let mut best = r.norm();
    let shifts: &[f64] = &[-1.0, 0.0, 1.0];
    match b.len() {
        1 => {
            for s in shifts {
                best = best.min((r + b[0] * s).norm());
            }
        }
        2 => {
            for s in shifts {
                for t in shifts {
                    best = best.min((r + b[0] * s + b[1] * t).norm());
                }
            }
        }
        _ => {}
    }
    best / 1f64.max(x.norm()).max(y.norm())
}
