use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::scalar::cx;
use crate::C64;

/// A family of the big table together with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilyId {
    A1,
    A2,
    A3,
    #[serde(rename = "Bβ1")]
    BBeta1 { divisor: Divisor },
    #[serde(rename = "Bβ2")]
    BBeta2 { divisor: Divisor },
    #[serde(rename = "Bγ1")]
    BGamma1 {
        n: usize,
        #[serde(with = "cx")]
        c: C64,
    },
    #[serde(rename = "Bγ2")]
    BGamma2 { n: usize },
    #[serde(rename = "Bγ3")]
    BGamma3 { n: usize },
    #[serde(rename = "Bγ4")]
    BGamma4 { n: usize },
    #[serde(rename = "Bδ1")]
    BDelta1,
    #[serde(rename = "Bδ2")]
    BDelta2,
    #[serde(rename = "Bδ3")]
    BDelta3 { n: usize },
    #[serde(rename = "Bδ4")]
    BDelta4 { n: usize },
    C2,
    C3,
    C5,
    C6,
    C7,
    C8 {
        #[serde(with = "cx")]
        alpha: C64,
    },
    C9,
    D1,
    D2,
    D3,
}

/// Every family label in table order.
pub const FAMILY_LABELS: [&str; 23] = [
    "A1", "A2", "A3", "Bβ1", "Bβ2", "Bγ1", "Bγ2", "Bγ3", "Bγ4", "Bδ1", "Bδ2", "Bδ3", "Bδ4",
    "C2", "C3", "C5", "C6", "C7", "C8", "C9", "D1", "D2", "D3",
];

impl FamilyId {
    pub fn label(&self) -> &'static str {
        use FamilyId::*;
        match self {
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            BBeta1 { .. } => "Bβ1",
            BBeta2 { .. } => "Bβ2",
            BGamma1 { .. } => "Bγ1",
            BGamma2 { .. } => "Bγ2",
            BGamma3 { .. } => "Bγ3",
            BGamma4 { .. } => "Bγ4",
            BDelta1 => "Bδ1",
            BDelta2 => "Bδ2",
            BDelta3 { .. } => "Bδ3",
            BDelta4 { .. } => "Bδ4",
            C2 => "C2",
            C3 => "C3",
            C5 => "C5",
            C6 => "C6",
            C7 => "C7",
            C8 { .. } => "C8",
            C9 => "C9",
            D1 => "D1",
            D2 => "D2",
            D3 => "D3",
        }
    }

    /// All families with default parameters.
    pub fn all() -> Vec<FamilyId> {
        FAMILY_LABELS.iter().map(|l| l.parse().expect("known label")).collect()
    }

    /// Check the family constraints on the parameters.
    pub fn validate(&self) -> Result<()> {
        use FamilyId::*;
        match self {
            BBeta1 { divisor } | BBeta2 { divisor } if divisor.degree() < 2 => Err(
                Error::ConstraintViolation("deg D >= 2".into()),
            ),
            BGamma1 { n, c } if *n < 1 || c.norm() == 0.0 => {
                Err(Error::ConstraintViolation("n >= 1 and c != 0".into()))
            }
            BGamma2 { n } | BGamma3 { n } | BGamma4 { n } | BDelta3 { n } | BDelta4 { n }
                if *n < 1 =>
            {
                Err(Error::ConstraintViolation("n >= 1".into()))
            }
            C8 { alpha } if (alpha - 1.0).norm() == 0.0 => {
                Err(Error::ConstraintViolation("alpha != 1".into()))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Accepts the table labels and ASCII spellings (`Bbeta1`, `Bgamma2`, `Bdelta3`, ...).
/// Parameters take their defaults: `D = [0] + [2πi]`, `n = 2`, `c = 2`, `α = 2`.
impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use FamilyId::*;
        let norm = s
            .trim()
            .replace("beta", "β")
            .replace("gamma", "γ")
            .replace("delta", "δ");
        let default_d = || {
            Divisor::simple(&[C64::new(0.0, 0.0), crate::scalar::two_pi_i()])
                .expect("valid divisor")
        };
        Ok(match norm.as_str() {
            "A1" => A1,
            "A2" => A2,
            "A3" => A3,
            "Bβ1" => BBeta1 { divisor: default_d() },
            "Bβ2" => BBeta2 { divisor: default_d() },
            "Bγ1" => BGamma1 { n: 2, c: C64::new(2.0, 0.0) },
            "Bγ2" => BGamma2 { n: 2 },
            "Bγ3" => BGamma3 { n: 2 },
            "Bγ4" => BGamma4 { n: 2 },
            "Bδ1" => BDelta1,
            "Bδ2" => BDelta2,
            "Bδ3" => BDelta3 { n: 2 },
            "Bδ4" => BDelta4 { n: 2 },
            "C2" => C2,
            "C3" => C3,
            "C5" => C5,
            "C6" => C6,
            "C7" => C7,
            "C8" => C8 { alpha: C64::new(2.0, 0.0) },
            "C9" => C9,
            "D1" => D1,
            "D2" => D2,
            "D3" => D3,
            _ => return Err(Error::Invalid(format!("unknown family {s}"))),
        })
    }
}

/// Which discrete groups `π` commuting with the action give quotients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum QuotientPolicy {
    NoQuotients,
    Policy {
        /// The admissible `π`.
        parameter_space: String,
        /// Labels of the quotient rows.
        quotients: Vec<String>,
    },
}

fn policy(space: &str, rows: &[&str]) -> QuotientPolicy {
    QuotientPolicy::Policy {
        parameter_space: space.into(),
        quotients: rows.iter().map(|s| s.to_string()).collect(),
    }
}

pub fn quotient_policy(f: &FamilyId) -> QuotientPolicy {
    use FamilyId::*;
    match f {
        A1 | A2 | A3 | C3 | C6 | C7 | D3 | C8 { .. } | BGamma1 { .. } | BGamma3 { .. }
        | BGamma4 { .. } | BDelta3 { .. } | BDelta4 { .. } => QuotientPolicy::NoQuotients,
        C2 => policy("Δ ⊂ C discrete, translating the first factor", &["C2′"]),
        C5 => policy("Δ ⊂ C discrete, translating the C factor", &["C5′"]),
        BGamma2 { .. } => policy("π = {0} × Λ, Λ ⊂ C discrete", &["Bγ2′"]),
        D1 => policy(
            "discrete π ⊂ C² up to GL(2, C)",
            &["D1_1", "D1_2", "D1_3", "D1_4", "D1_5", "D1_6"],
        ),
        D2 => policy(
            "discrete π ⊂ uAff(C) up to automorphism",
            &[
                "D2_1", "D2_2", "D2_3", "D2_4", "D2_5", "D2_6", "D2_7", "D2_8", "D2_9", "D2_10",
                "D2_11", "D2_12", "D2_13", "D2_14",
            ],
        ),
        BBeta1 { .. } => policy(
            "discrete π ⊂ Q_D ⋊ C",
            &[
                "Bβ1A0", "Bβ1A1", "Bβ1B0", "Bβ1B1", "Bβ1C", "Bβ1D", "Bβ1E", "Bβ1F", "Bβ1G",
                "Bβ1H", "Bβ1I",
            ],
        ),
        BBeta2 { .. } => policy("π = ⟨(n, 1, 0)⟩, n ≥ 1, when Q_D ≠ 0", &["Bβ2′"]),
        C9 => policy("Z/2 swapping the two points", &["C9′"]),
        BDelta1 => policy("⟨λ I⟩, 0 < |λ| < 1", &["Bδ1′"]),
        BDelta2 => policy("⟨λ I⟩, 0 < |λ| < 1", &["Bδ2′"]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for f in FamilyId::all() {
            assert_eq!(f.label().parse::<FamilyId>().unwrap(), f);
            f.validate().unwrap();
        }
        assert_eq!("Bgamma3".parse::<FamilyId>().unwrap().label(), "Bγ3");
        assert!("Q7".parse::<FamilyId>().is_err());
    }

    #[test]
    fn policies() {
        assert_eq!(quotient_policy(&FamilyId::A2), QuotientPolicy::NoQuotients);
        match quotient_policy(&FamilyId::C5) {
            QuotientPolicy::Policy { parameter_space, .. } => assert!(parameter_space.contains('Δ')),
            _ => panic!(),
        }
        let no = FamilyId::all()
            .iter()
            .filter(|f| quotient_policy(f) == QuotientPolicy::NoQuotients)
            .count();
        assert_eq!(no, 13);
    }

    #[test]
    fn json_shape() {
        let f: FamilyId = serde_json::from_str(r#"{"family":"C8","alpha":{"re":3,"im":0}}"#).unwrap();
        assert_eq!(f, FamilyId::C8 { alpha: C64::new(3.0, 0.0) });
    }
}
