use thiserror::Error;

use crate::series::DimVec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("odd power of q survives reduction; value is not a function of L")]
    HalfPowerResidue,
    #[error("denominator vanishes at L = {0}")]
    PoleAtPrime(u64),
    #[error("denominator vanishes at q = 1")]
    PoleAtOne,
    #[error("value is not a polynomial in q after reduction")]
    NotPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(u32, u32),
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("constant term must be zero")]
    NonzeroConstantTerm,
    #[error("constant term must equal 1")]
    ConstantTermNotOne,
    #[error("monomial y0^{} y1^{} has negative curve degree", .0.a0, .0.a1)]
    NegativeCurveExponent(DimVec),
    #[error("slope of the zero dimension vector is undefined")]
    ZeroDimension,
    #[error("stability parameter lies on the wall of root ({}, {})", .0.a0, .0.a1)]
    NotGeneric(DimVec),
    #[error("stability parameter must be nonzero")]
    ZeroStability,
    #[error("enumeration of {size} elements exceeds cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
}
