//! Group actions: a common interface, the families of the catalogue, and
//! the classifier for discrete subgroups of C² acting by translation.

use std::fmt::Debug;

use rand::RngCore;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Result;

mod check;
pub mod d1;
mod families;
mod family_id;
mod registry;

pub use check::{action_axioms, faithfulness, FAITHFULNESS, group_axioms, CheckResult};
pub use families::*;
pub use family_id::{quotient_policy, FamilyId, QuotientPolicy, FAMILY_LABELS};
pub use registry::{family_action, DynAction};

/// A complex Lie group acting holomorphically on the left of a surface.
pub trait GroupAction {
    type Element: Clone + Debug + Serialize + DeserializeOwned;
    type Point: Clone + Debug + Serialize + DeserializeOwned;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Result<Self::Element>;
    fn inverse(&self, g: &Self::Element) -> Result<Self::Element>;
    fn act(&self, g: &Self::Element, x: &Self::Point) -> Result<Self::Point>;
    /// Relative distance, zero iff the elements coincide.
    fn element_distance(&self, g: &Self::Element, h: &Self::Element) -> f64;
    fn point_distance(&self, x: &Self::Point, y: &Self::Point) -> f64;
    fn random_element(&self, rng: &mut dyn RngCore) -> Self::Element;
    fn random_point(&self, rng: &mut dyn RngCore) -> Self::Point;
}
