use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by exact zero")]
    DivisionByZero,

    #[error("p-adic precision exhausted ({0})")]
    PrecisionExhausted(String),

    #[error("operands live over different primes or fields")]
    FieldMismatch,

    #[error("residue characteristic {0} is out of scope (need a prime p >= 5)")]
    UnsupportedPrime(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Hensel criterion not met: v(g(a)) = {value}, v(g'(a)) = {derivative}")]
    HenselCriterion { value: i64, derivative: i64 },

    #[error("polynomial is not monic")]
    NonMonic,

    #[error("singular Weierstrass data (discriminant vanishes)")]
    Singular,

    #[error("valuation triple ({vc4}, {vc6}, {vdelta}) is not minimal")]
    NonMinimal { vc4: String, vc6: String, vdelta: String },

    #[error("valuation triple ({vc4}, {vc6}, {vdelta}) is inconsistent with 1728 D = c4^3 - c6^2")]
    InconsistentInvariants { vc4: String, vc6: String, vdelta: String },

    #[error("configuration is not a Kodaira fiber: {0}")]
    NotKodaira(String),

    #[error("not a Shioda-Inose pencil: {0}")]
    NotShiodaInose(String),

    #[error("unsupported field extension: {0}")]
    UnsupportedExtension(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::PrecisionExhausted(_))
    }

    /// Inputs that are well formed but outside what the library handles.
    pub fn is_out_of_scope(&self) -> bool {
        matches!(self, Error::UnsupportedPrime(_) | Error::UnsupportedExtension(_))
    }
}
