//! JSON wire form for complex scalars: `{"re": .., "im": ..}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl From<C64> for Cx {
    fn from(z: C64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

impl From<Cx> for C64 {
    fn from(z: Cx) -> Self {
        C64::new(z.re, z.im)
    }
}

/// `#[serde(with = "crate::scalar::cx")]` for a single `C64` field.
pub mod cx {
    use super::*;

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        Cx::from(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        Cx::deserialize(d).map(C64::from)
    }
}

/// `#[serde(with = "crate::scalar::opt_cx")]` for `Option<C64>`.
pub mod opt_cx {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Option<C64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(Cx::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<C64>, D::Error> {
        Ok(Option::<Cx>::deserialize(d)?.map(C64::from))
    }
}

/// `#[serde(with = "crate::scalar::cx_vec")]` for `Vec<C64>`.
pub mod cx_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| Cx::from(*z)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
        Ok(Vec::<Cx>::deserialize(d)?.into_iter().map(C64::from).collect())
    }
}

/// `#[serde(with = "crate::scalar::cx_mat")]` for row-major `Vec<Vec<C64>>`.
pub mod cx_mat {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<C64>], s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|row| row.iter().map(|z| Cx::from(*z)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<C64>>, D::Error> {
        Ok(Vec::<Vec<Cx>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(C64::from).collect())
            .collect())
    }
}

/// Canonical sign: `re > 0`, or `re == 0` and `im > 0` (within `tol`).
pub fn canonical_sign(z: C64, tol: f64) -> C64 {
    let scale = tol * z.norm().max(1.0);
    if z.re > scale || (z.re.abs() <= scale && z.im >= 0.0) {
        z
    } else {
        -z
    }
}

pub fn i() -> C64 {
    C64::new(0.0, 1.0)
}

pub fn two_pi_i() -> C64 {
    C64::new(0.0, std::f64::consts::TAU)
}
