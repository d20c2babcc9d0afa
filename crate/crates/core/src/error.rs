use thiserror::Error;

/// Errors raised by the library. Messages are stable; the CLI prints them verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate divisor")]
    DegenerateDivisor,
    #[error("divisor degree {0} exceeds the supported maximum of {1}")]
    DegreeTooLarge(u32, u32),
    #[error("not a quasiperiod")]
    NotAQuasiperiod,
    #[error("not in V_D")]
    NotInSpace,
    #[error("divisor mismatch")]
    DivisorMismatch,
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("not a tabulated subgroup: {0}")]
    NotTabulated(String),
    #[error("subgroup is not discrete")]
    NotDiscrete,
    #[error("bundle is nontrivial")]
    BundleNontrivial,
    #[error("no quotients")]
    NoQuotients,
    #[error("point outside the domain: {0}")]
    OutsideDomain(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
