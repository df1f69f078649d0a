use alloc::string::String;

/// Errors raised by the combinatorial engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("subset {0} is not stable under the diagram automorphism")]
    NonStableJ(String),
    #[error("element is not a (J, w, delta)-alcove element for the given pair")]
    NotAnAlcove,
    #[error("class has no representative in the extended affine Weyl group: {0}")]
    NoRepresentative(String),
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("residue field too small: the equation has no solution modulo t over F_{p}^{k}")]
    ResidueFieldTooSmall { p: u64, k: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("semisimple rank {0} is too large for plotting (at most 2)")]
    RankTooLarge(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
