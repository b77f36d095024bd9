use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{axiom} fails at a = {a}, b = {b}")]
    AxiomViolation {
        axiom: &'static str,
        a: String,
        b: String,
    },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("enumeration budget exceeded: need {needed}, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },

    #[error("minimum distance of the zero code is undefined")]
    UndefinedDistance,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("skew polynomials belong to different contexts")]
    ContextMismatch,

    #[error("divisor is not monic")]
    NotMonic,

    #[error("{divisor} does not divide {dividend} on the {side}")]
    NotDivisible {
        divisor: String,
        dividend: String,
        side: &'static str,
    },

    #[error("sigma is not an automorphism, so this operation is unavailable")]
    SigmaNotInvertible,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
