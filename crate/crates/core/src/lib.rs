//! Transitive holomorphic Lie group actions on complex surfaces, as executable arithmetic.
//!
//! Every family of the classification is a [`actions::GroupAction`]; the
//! discrete subgroups giving quotients are classified by
//! [`actions::d1`], [`uaff`] and [`bbeta`].

pub mod actions;
pub mod bbeta;
pub mod bundles;
pub mod catalogue;
pub mod cover;
pub mod divisor;
pub mod error;
pub mod exppoly;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod points;
pub mod projective;
pub mod rational;
pub mod scalar;
pub mod tolerance;
pub mod uaff;
pub mod verify;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../docs/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../docs/src/catalogue.md")]
    mod catalogue {}
    #[doc = include_str!("../../../docs/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../docs/src/divisors.md")]
    mod divisors {}
    #[doc = include_str!("../../../docs/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../docs/src/covers.md")]
    mod covers {}
    #[doc = include_str!("../../../docs/src/verification.md")]
    mod verification {}
}
