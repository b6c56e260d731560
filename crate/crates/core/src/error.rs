use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: unparsable literals, unknown labels, bad JSON.
    Parse,
    /// The model configuration violates a structural constraint.
    Validation,
    /// A mathematical precondition of an operation does not hold.
    Precondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("Euler numbers of the singular fibres sum to {0}, expected 24")]
    EulerSum(u64),

    #[error("unsupported fibre I_{0}: only nodal (I_1) and I_n with n >= 3 are modelled")]
    UnsupportedFiber(u32),

    #[error("fibre count must be positive")]
    EmptyFiberGroup,

    #[error("fibre components contribute rank {0} to the Picard lattice, at most 18 allowed")]
    TooManyComponents(usize),

    #[error("a transcendental Gram matrix is required when the fibres have reducible components")]
    MissingTranscendental,

    #[error("transcendental lattice: {0}")]
    Transcendental(String),

    #[error("H^2 lattice check failed: {0}")]
    Lattice(String),

    #[error("class is not in the orthogonal complement of the fibre class")]
    NotInMuPerp,

    #[error("the table form only covers span(H, mu); found a nonzero {0} coordinate")]
    OutsideRankTwoPicard(String),

    #[error("component index {index} out of range (model has {available} components)")]
    MissingComponent { index: usize, available: usize },

    #[error("unsupported curve for the GRR pushforward: {0}")]
    UnsupportedCurve(String),

    #[error("expected an integral class: {0}")]
    NotIntegral(String),

    #[error("expected a pure H^2 class")]
    NotPureH2,

    #[error("period is not orthogonal to the Picard class {0}")]
    PeriodNotAlgebraic(String),

    #[error("period is not isotropic: Omega.Omega = {0}")]
    PeriodNotIsotropic(String),

    #[error("period fails positivity: Omega.conj(Omega) = {0}")]
    PeriodNotPositive(String),

    #[error("degenerate period: H^(1,1)/Pic has dimension {found}, expected {expected}")]
    DegeneratePeriod { expected: usize, found: usize },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            Parse { .. } | UnknownLabel(_) | DimensionMismatch { .. } => ErrorKind::Parse,
            NotSymmetric
            | EulerSum(_)
            | UnsupportedFiber(_)
            | EmptyFiberGroup
            | TooManyComponents(_)
            | MissingTranscendental
            | Transcendental(_)
            | Lattice(_) => ErrorKind::Validation,
            DivisionByZero
            | NotInMuPerp
            | OutsideRankTwoPicard(_)
            | MissingComponent { .. }
            | UnsupportedCurve(_)
            | NotIntegral(_)
            | NotPureH2
            | PeriodNotAlgebraic(_)
            | PeriodNotIsotropic(_)
            | PeriodNotPositive(_)
            | DegeneratePeriod { .. } => ErrorKind::Precondition,
        }
    }

    pub(crate) fn parse(what: &'static str, input: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
