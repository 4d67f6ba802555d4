use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants split into usage problems (malformed input, wrong shapes) and
/// math-domain problems (poles, wrong root-system type). The CLI maps the
/// two groups to different exit codes via [`Error::is_domain`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system type {0}")]
    InvalidType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("Weyl group of order {order} exceeds the enumeration bound {bound}")]
    OrbitTooLarge { order: u128, bound: u128 },
    #[error("weight {0} is not dominant integral")]
    NotDominant(String),
    #[error("weight {0} is not integral")]
    NotIntegral(String),
    #[error("operation requires type {expected}, got {got}")]
    WrongType { expected: String, got: String },
    #[error("Lambda - Lambda' = {0} is not an integral real weight")]
    NonIntegralDifference(String),
    #[error("q must satisfy 0 < q <= 1, got {0}")]
    InvalidQ(String),
    #[error("pole: denominator ({0})_q vanishes")]
    PoleInDenominator(String),
    #[error("word {word} is not reduced (length {len}, element length {reduced})")]
    NotReduced {
        word: String,
        len: usize,
        reduced: usize,
    },
    #[error("intertwiner denominator vanishes on the path at t = {0}")]
    PoleOnPath(String),
    #[error("spectral parameter is not almost real")]
    NotAlmostReal,
    #[error("half-integer condition violated: {0}")]
    NotHalfInteger(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for math-domain failures, false for malformed input.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::WrongType { .. }
                | Error::NonIntegralDifference(_)
                | Error::PoleInDenominator(_)
                | Error::PoleOnPath(_)
                | Error::NotAlmostReal
                | Error::OrbitTooLarge { .. }
                | Error::NotDominant(_)
                | Error::NotIntegral(_)
                | Error::NotHalfInteger(_)
                | Error::NotReduced { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
