use rand::RngCore;
use serde_json::Value;

use super::families::*;
use super::{action_axioms, faithfulness, group_axioms, CheckResult, FamilyId, GroupAction};
use crate::bbeta::{GdGroup, RgdGroup};
use crate::error::{Error, Result};
use crate::projective::{BGamma4Group, BGammaGroup, BGammaSub, LinearGroup, OnGroup};
use crate::uaff::UAffGroup;

/// A [`GroupAction`] with JSON-typed elements and points.
pub trait DynAction {
    fn act_json(&self, g: &Value, x: &Value) -> Result<Value>;
    fn multiply_json(&self, g: &Value, h: &Value) -> Result<Value>;
    fn random_element_json(&self, rng: &mut dyn RngCore) -> Value;
    fn random_point_json(&self, rng: &mut dyn RngCore) -> Value;
    fn group_axioms(&self, rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult;
    fn action_axioms(&self, rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult;
    fn faithfulness(&self, rng: &mut dyn RngCore, samples: usize, probes: usize) -> CheckResult;
}

fn decode<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("{what}: {e}")))
}

fn encode<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("plain data serializes")
}

impl<A: GroupAction> DynAction for A {
    fn act_json(&self, g: &Value, x: &Value) -> Result<Value> {
        let g: A::Element = decode(g, "element")?;
        let x: A::Point = decode(x, "point")?;
        Ok(encode(&self.act(&g, &x)?))
    }
    fn multiply_json(&self, g: &Value, h: &Value) -> Result<Value> {
        let g: A::Element = decode(g, "element")?;
        let h: A::Element = decode(h, "element")?;
        Ok(encode(&self.multiply(&g, &h)?))
    }
    fn random_element_json(&self, rng: &mut dyn RngCore) -> Value {
        encode(&self.random_element(rng))
    }
    fn random_point_json(&self, rng: &mut dyn RngCore) -> Value {
        encode(&self.random_point(rng))
    }
    fn group_axioms(&self, rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult {
        group_axioms(self, rng, samples, tol)
    }
    fn action_axioms(&self, rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult {
        action_axioms(self, rng, samples, tol)
    }
    fn faithfulness(&self, rng: &mut dyn RngCore, samples: usize, probes: usize) -> CheckResult {
        faithfulness(self, rng, samples, probes)
    }
}

/// The concrete action of a family.
pub fn family_action(id: &FamilyId) -> Result<Box<dyn DynAction>> {
    id.validate()?;
    use FamilyId::*;
    Ok(match id {
        A1 => Box::new(ProjectivePlane),
        A2 => Box::new(AffinePlane { special: false }),
        A3 => Box::new(AffinePlane { special: true }),
        BBeta1 { divisor } => Box::new(GdGroup::new(divisor.clone())?),
        BBeta2 { divisor } => Box::new(RgdGroup::new(divisor.clone())?),
        BGamma1 { n, c } => Box::new(BGammaGroup::new(*n, BGammaSub::One { c: *c })?),
        BGamma2 { n } => Box::new(BGammaGroup::new(*n, BGammaSub::Two)?),
        BGamma3 { n } => Box::new(BGammaGroup::new(*n, BGammaSub::Three)?),
        BGamma4 { n } => Box::new(BGamma4Group { n: *n }),
        BDelta1 => Box::new(LinearGroup::new(true, None)?),
        BDelta2 => Box::new(LinearGroup::new(false, None)?),
        BDelta3 { n } => Box::new(OnGroup { n: *n, special: true }),
        BDelta4 { n } => Box::new(OnGroup { n: *n, special: false }),
        C2 => Box::new(TranslationTimesAffine),
        C3 => Box::new(AffineSquared),
        C5 => Box::new(LineTimesPlane { affine: false }),
        C6 => Box::new(LineTimesPlane { affine: true }),
        C7 => Box::new(LineSquared),
        C8 { alpha } => Box::new(WeightedTranslations::new(*alpha)?),
        C9 => Box::new(Quadric),
        D1 => Box::new(Translations),
        D2 => Box::new(UAffGroup),
        D3 => Box::new(ScalingsAndTranslations),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn every_family_dispatches() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for f in FamilyId::all() {
            let a = family_action(&f).unwrap();
            let g = a.random_element_json(&mut rng);
            let x = a.random_point_json(&mut rng);
            a.act_json(&g, &x).unwrap();
            assert!(a.group_axioms(&mut rng, 20, 1e-9).passed, "{f}");
            assert!(a.action_axioms(&mut rng, 20, 1e-9).passed, "{f}");
        }
    }

    #[test]
    fn bbeta1_json_act() {
        let d = crate::divisor::Divisor::new(vec![(crate::C64::new(0.0, 0.0), 2)]).unwrap();
        let a = family_action(&FamilyId::BBeta1 { divisor: d }).unwrap();
        let g = serde_json::json!({"t": {"re": 1}, "f": {"terms": [{"lambda": {"re": 0}, "coeffs": [{"re": 0}, {"re": 1}]}]}});
        let x = serde_json::json!({"z": {"re": 0}, "w": {"re": 0}});
        let y = a.act_json(&g, &x).unwrap();
        assert_eq!(y["z"]["re"], 1.0);
        assert_eq!(y["w"]["re"], 1.0);
    }
}
