//! Machine-readable classification of errors for front ends.

use crate::classes::ClassError;
use crate::heckelin::HeckeError;
use crate::lattice::LatticeError;
use crate::numfield::NumFieldError;
use crate::orders::OrderError;
use crate::p1hecke::P1Error;
use crate::quatalg::QuatError;
use crate::space::SpaceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// the input violates a precondition (not totally real, h⁺ > 1, bad level)
    Validation,
    /// an enumeration or search cap was reached
    ResourceCap,
    /// an internal consistency check failed
    Internal,
}

pub trait Diagnose {
    /// Stable name of the innermost error variant.
    fn code(&self) -> &'static str;
    fn kind(&self) -> ErrorKind;
}

impl Diagnose for NumFieldError {
    fn code(&self) -> &'static str {
        match self {
            NumFieldError::NotMonic => "NotMonic",
            NumFieldError::Reducible => "Reducible",
            NumFieldError::NotTotallyReal { .. } => "NotTotallyReal",
            NumFieldError::NotMonogenicCertified { .. } => "NotMonogenic",
            NumFieldError::ClassNumberNotOne { .. } => "ClassNumberNotOne",
            NumFieldError::StrictClassNumberNotOne { .. } => "StrictClassNumberNotOne",
            NumFieldError::ZeroElement => "ZeroElement",
            NumFieldError::GeneratorSearchExceeded { .. } => "GeneratorSearchExceeded",
            NumFieldError::UnitSearchExceeded => "UnitSearchExceeded",
            NumFieldError::NotIntegral => "NotIntegral",
            NumFieldError::NotPrime => "NotPrime",
            NumFieldError::Parse(_) => "Parse",
        }
    }
    fn kind(&self) -> ErrorKind {
        match self {
            NumFieldError::GeneratorSearchExceeded { .. } | NumFieldError::UnitSearchExceeded => ErrorKind::ResourceCap,
            _ => ErrorKind::Validation,
        }
    }
}

impl Diagnose for QuatError {
    fn code(&self) -> &'static str {
        match self {
            QuatError::ZeroConstant => "ZeroConstant",
            QuatError::ParityViolation(_) => "ParityViolation",
            QuatError::SearchExhausted(_) => "SearchExhausted",
            QuatError::BadDiscriminant => "BadDiscriminant",
            QuatError::DefinitenessRequired => "DefinitenessRequired",
            QuatError::Field(e) => e.code(),
        }
    }
    fn kind(&self) -> ErrorKind {
        match self {
            QuatError::ParityViolation(_) => ErrorKind::Internal,
            QuatError::SearchExhausted(_) => ErrorKind::ResourceCap,
            QuatError::Field(e) => e.kind(),
            _ => ErrorKind::Validation,
        }
    }
}

impl Diagnose for OrderError {
    fn code(&self) -> &'static str {
        match self {
            OrderError::RankDeficient => "RankDeficient",
            OrderError::NotAnOrder(_) => "NotAnOrder",
            OrderError::NotInvertible => "NotInvertible",
            OrderError::DefinitenessRequired => "DefinitenessRequired",
            OrderError::RamifiedPrime(_) => "RamifiedPrime",
            OrderError::LevelNotCoprime => "LevelNotCoprime",
            OrderError::BadSplitting(_) => "BadSplitting",
            OrderError::EnlargementFailed(_) => "EnlargementFailed",
            OrderError::Quat(e) => e.code(),
            OrderError::Field(e) => e.code(),
        }
    }
    fn kind(&self) -> ErrorKind {
        match self {
            OrderError::DefinitenessRequired | OrderError::RamifiedPrime(_) | OrderError::LevelNotCoprime => {
                ErrorKind::Validation
            }
            OrderError::Quat(e) => e.kind(),
            OrderError::Field(e) => e.kind(),
            _ => ErrorKind::Internal,
        }
    }
}

impl Diagnose for LatticeError {
    fn code(&self) -> &'static str {
        match self {
            LatticeError::NotTotallyPositiveScale => "NotTotallyPositiveScale",
            LatticeError::BoundExceeded(_) => "BoundExceeded",
            LatticeError::NotPositiveDefinite => "NotPositiveDefinite",
            LatticeError::Field(e) => e.code(),
        }
    }
    fn kind(&self) -> ErrorKind {
        match self {
            LatticeError::BoundExceeded(_) => ErrorKind::ResourceCap,
            LatticeError::NotPositiveDefinite => ErrorKind::Validation,
            LatticeError::Field(e) => e.kind(),
            LatticeError::NotTotallyPositiveScale => ErrorKind::Internal,
        }
    }
}

impl Diagnose for ClassError {
    fn code(&self) -> &'static str {
        match self {
            ClassError::BadPrime(_) => "BadPrime",
            ClassError::Unclassified(_) => "Unclassified",
            ClassError::Inconsistent { .. } => "Inconsistent",
            ClassError::Order(e) => e.code(),
            ClassError::Lattice(e) => e.code(),
            ClassError::Field(e) => e.code(),
        }
    }
    fn kind(&self) -> ErrorKind {
        match self {
            ClassError::BadPrime(_) => ErrorKind::Validation,
            ClassError::Order(e) => e.kind(),
            ClassError::Lattice(e) => e.kind(),
            ClassError::Field(e) => e.kind(),
            _ => ErrorKind::Internal,
        }
    }
}

impl Diagnose for P1Error {
    fn code(&self) -> &'static str {
        match self {
            P1Error::NonCoprimeReps => "NonCoprimeReps",
            P1Error::BadPrime(_) => "BadPrime",
            P1Error::Inconsistent { .. } => "Inconsistent",
            P1Error::Class(e) => e.code(),
            P1Error::Order(e) => e.code(),
            P1Error::Lattice(e) => e.code(),
            P1Error::Field(e) => e.code(),
        }
    }
    fn kind(&self) -> ErrorKind {
        match self {
            P1Error::NonCoprimeReps | P1Error::BadPrime(_) => ErrorKind::Validation,
            P1Error::Inconsistent { .. } => ErrorKind::Internal,
            P1Error::Class(e) => e.kind(),
            P1Error::Order(e) => e.kind(),
            P1Error::Lattice(e) => e.kind(),
            P1Error::Field(e) => e.kind(),
        }
    }
}

impl Diagnose for HeckeError {
    fn code(&self) -> &'static str {
        match self {
            HeckeError::NotCommuting(..) => "NotCommuting",
            HeckeError::NotInvariant => "NotInvariant",
            HeckeError::EigenCheck(_) => "EigenCheck",
            HeckeError::NotIntegral(_) => "NotIntegral",
        }
    }
    fn kind(&self) -> ErrorKind {
        ErrorKind::Internal
    }
}

impl Diagnose for SpaceError {
    fn code(&self) -> &'static str {
        match self {
            SpaceError::BadPrime(_) => "BadPrime",
            SpaceError::LevelNotCoprime => "LevelNotCoprime",
            SpaceError::Class(e) => e.code(),
            SpaceError::P1(e) => e.code(),
            SpaceError::Order(e) => e.code(),
            SpaceError::Hecke(e) => e.code(),
            SpaceError::Field(e) => e.code(),
        }
    }
    fn kind(&self) -> ErrorKind {
        match self {
            SpaceError::BadPrime(_) | SpaceError::LevelNotCoprime => ErrorKind::Validation,
            SpaceError::Class(e) => e.kind(),
            SpaceError::P1(e) => e.kind(),
            SpaceError::Order(e) => e.kind(),
            SpaceError::Hecke(e) => e.kind(),
            SpaceError::Field(e) => e.kind(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::FieldDesc;

    #[test]
    fn kinds() {
        let e = FieldDesc::parse("x^2+1").unwrap_err();
        assert_eq!((e.code(), e.kind()), ("NotTotallyReal", ErrorKind::Validation));
        let e = SpaceError::Class(ClassError::Lattice(LatticeError::BoundExceeded(5)));
        assert_eq!((e.code(), e.kind()), ("BoundExceeded", ErrorKind::ResourceCap));
    }
}
