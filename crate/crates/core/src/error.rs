use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("inexact division: {0}")]
    DivisionError(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("point has no value for variable `{0}`")]
    IncompletePoint(String),
    #[error("restriction undefined at step {step}: denominator vanishes after substituting {var} = {value}")]
    RestrictionUndefined { step: usize, var: String, value: String },
    #[error("elements belong to different rings: {0}")]
    RingMismatch(String),
    #[error("invalid radical ring: {0}")]
    InvalidRing(String),
    #[error("Groebner basis computation exceeded the budget of {0} S-pairs")]
    BudgetExceeded(usize),
    #[error("denominator vanishes identically on the variety (normal form of {0} is zero)")]
    DenominatorVanishesOnVariety(String),
    #[error("the ideal is the unit ideal; its variety is empty")]
    EmptyVariety,
    #[error("invalid stratification: {0}")]
    BadStratification(String),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("p-adic precision exhausted: {available} digits available, {lost} lost")]
    PrecisionLoss { available: i64, lost: i64 },
    #[error("invalid p-adic input: {0}")]
    BadPadic(String),
    #[error("norm form must have at least one variable")]
    EmptyForm,
    #[error("invalid norm form: {0}")]
    BadNormForm(String),
    #[error("local representatives {0} and {1} are incompatible on the variety")]
    IncompatibleReps(usize, usize),
    #[error("malformed extension problem: {0}")]
    BadProblem(String),
    #[error("invalid curve: {0}")]
    BadCurve(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported exponent at line {line}, column {column}: exponents must be non-negative integer literals")]
    UnsupportedExponent { line: usize, column: usize },
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
