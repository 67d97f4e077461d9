use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} is outside the supported range (3..=64)")]
    UnsupportedOrder(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what} {value} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("points do not affinely span R^3 (kernel dimension {0})")]
    DegenerateConfiguration(usize),
    #[error("lattice points {a:?} and {b:?} coincide modulo {modulus}")]
    ExponentCollision {
        a: [i64; 3],
        b: [i64; 3],
        modulus: u32,
    },
    #[error("polynomial has no nonzero coefficient")]
    ZeroPolynomial,
    #[error("coefficient vector has length {got}, code dimension is {expected}")]
    CoefficientLength { expected: usize, got: usize },
    #[error("invalid field for this formula: {0}")]
    InvalidField(String),
    #[error("operation not defined for polytope family {0}")]
    UnsupportedFamily(String),
    #[error("no closed-form distance for polytope family {0}")]
    NoFormulaForFamily(String),
    #[error("codes are not comparable: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("theorem verdicts disagree with witness grouping on {} pair(s): {}", .0.len(), .0.join("; "))]
    TheoremWitnessMismatch(Vec<String>),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
