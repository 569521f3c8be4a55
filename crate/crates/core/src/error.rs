//! Error type shared by all modules of the crate.

use alloc::string::String;
use core::fmt;

/// Errors reported by the algebra, window, spectral, and harness layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live over different ambient dimensions.
    DimensionMismatch { expected: usize, got: usize },
    /// The operation is undefined for the zero element.
    ZeroElement,
    /// A dimension outside the supported range was requested.
    UnsupportedDimension { dim: usize, reason: &'static str },
    /// The polynomial has no dominant coefficient.
    NotLopsided,
    /// The polynomial fails one of the well-balancedness conditions.
    NotWellBalanced,
    /// A window is too small for the requested convolution or pairing.
    WindowTooSmall { required: i64, got: i64 },
    /// A support does not fit inside the window it is paired against.
    SupportExceedsWindow,
    /// A scalar or grid parameter is out of range.
    InvalidParameter(&'static str),
    /// The zero-set scan could not classify the zero set.
    ZeroSetUnknown,
    /// No weak-expansivity certificate path applies and none was asserted.
    NoExpansivityCertificate,
    /// Divisibility-based reasoning needs irreducibility, which for `d >= 2`
    /// must be asserted by the caller.
    IrreducibilityNotAsserted,
    /// Exact irreducibility testing was requested beyond its size limits.
    IrreducibilityCheckTooLarge,
    /// The polynomial is reducible, so the dual-injectivity reduction does
    /// not apply.
    Reducible(String),
    /// A witness or certificate failed its numeric validation.
    ValidationFailed(String),
    /// The surjectivity and pre-injectivity routes disagreed. This indicates
    /// an internal inconsistency and must never occur; the payload carries a
    /// dump of the offending state.
    TheoremViolation(String),
    /// A precondition on the multiplier/modulus pair failed.
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::ZeroElement => write!(f, "operation undefined for the zero element"),
            Error::UnsupportedDimension { dim, reason } => {
                write!(f, "unsupported dimension {dim}: {reason}")
            }
            Error::NotLopsided => write!(f, "polynomial is not lopsided"),
            Error::NotWellBalanced => write!(f, "polynomial is not well-balanced"),
            Error::WindowTooSmall { required, got } => {
                write!(f, "window too small: radius {got}, need at least {required}")
            }
            Error::SupportExceedsWindow => write!(f, "support exceeds the window"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::ZeroSetUnknown => write!(f, "zero-set classification is UNKNOWN"),
            Error::NoExpansivityCertificate => {
                write!(f, "no weak-expansivity certificate path applies; refusing a verdict")
            }
            Error::IrreducibilityNotAsserted => {
                write!(f, "irreducibility must be asserted by the caller for d >= 2")
            }
            Error::IrreducibilityCheckTooLarge => {
                write!(f, "exact irreducibility check exceeds its size limits")
            }
            Error::Reducible(factor) => write!(f, "polynomial is reducible: factor {factor}"),
            Error::ValidationFailed(what) => write!(f, "validation failed: {what}"),
            Error::TheoremViolation(dump) => {
                write!(f, "theorem violation (internal inconsistency): {dump}")
            }
            Error::Precondition(what) => write!(f, "precondition failed: {what}"),
        }
    }
}

impl core::error::Error for Error {}
