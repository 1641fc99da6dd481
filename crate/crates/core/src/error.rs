use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("polynomial {0} is not monic")]
    NotMonic(String),

    #[error("polynomial {0} is reducible")]
    Reducible(String),

    #[error("x is zero in F_p[x]/({0}); the generator orbit is not a set of units")]
    DegenerateGenerator(String),

    #[error("field of order {p}^{k} exceeds the supported size")]
    FieldTooLarge { p: u32, k: usize },

    #[error("element code {code} is out of range for a field of {order} elements")]
    ElementOutOfRange { code: u64, order: u64 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("zero has no multiplicative order")]
    ZeroOrder,

    #[error("operands belong to different field models")]
    MixedModels,

    #[error("polynomial {0} has zero constant term")]
    ZeroConstantTerm(String),

    #[error("invalid graph variant: {0}")]
    InvalidVariant(String),

    #[error("graph is disconnected ({} components)", components.len())]
    Disconnected { components: Vec<Vec<usize>> },

    #[error("graph is not Eulerian")]
    NotEulerian,

    #[error("operation requires an undirected graph")]
    DirectedInput,

    #[error("operation requires a directed graph")]
    UndirectedInput,

    #[error("cover and base graph come from different models")]
    ModelMismatch,

    #[error("deck transformation requires a nonzero element")]
    ZeroDeckElement,

    #[error("matrix is not symmetric")]
    Asymmetric,

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("prime {0} is not congruent to 3 mod 4")]
    NotThreeModFour(u32),

    #[error("eigenfunction for l = {l} vanishes identically over F_{p}")]
    VanishingEigenfunction { p: u32, l: u32 },

    #[error("eigenfunction identity fails at vertex {vertex}: residual {residual:e}")]
    EigenfunctionMismatch { vertex: usize, residual: f64 },

    #[error("brute force search limited to {max} vertices, got {n}")]
    OracleTooLarge { n: usize, max: usize },

    #[error("field order {order} exceeds the census limit {limit}")]
    LimitExceeded { order: u64, limit: u64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
