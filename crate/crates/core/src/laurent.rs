//! Laurent polynomials `Σ c_e Y^e`.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::linalg::random_c;
use crate::scalar::Cx;
use crate::C64;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<LaurentTerm>", into = "Vec<LaurentTerm>")]
pub struct Laurent {
    terms: Vec<(i64, C64)>,
}

#[derive(Serialize, Deserialize)]
struct LaurentTerm {
    exp: i64,
    coeff: Cx,
}

impl From<Vec<LaurentTerm>> for Laurent {
    fn from(v: Vec<LaurentTerm>) -> Self {
        Laurent::new(v.into_iter().map(|t| (t.exp, t.coeff.into())).collect())
    }
}

impl From<Laurent> for Vec<LaurentTerm> {
    fn from(l: Laurent) -> Self {
        l.terms.into_iter().map(|(exp, c)| LaurentTerm { exp, coeff: c.into() }).collect()
    }
}

impl Laurent {
    /// Equal exponents are merged.
    pub fn new(terms: Vec<(i64, C64)>) -> Self {
        let mut out: Vec<(i64, C64)> = Vec::new();
        for (e, c) in terms {
            match out.iter_mut().find(|t| t.0 == e) {
                Some(t) => t.1 += c,
                None => out.push((e, c)),
            }
        }
        out.sort_by_key(|t| t.0);
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(i64, C64)] {
        &self.terms
    }

    pub fn eval(&self, y: C64) -> C64 {
        self.terms.iter().map(|&(e, c)| c * y.powi(e as i32)).sum()
    }

    /// Largest `|e|`.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|t| t.0.abs()).max().unwrap_or(0)
    }

    pub fn random(rng: &mut dyn RngCore, max_exp: i64) -> Self {
        Laurent::new((-max_exp..=max_exp).map(|e| (e, random_c(rng, 0.3))).collect())
    }
}
