use alloc::string::String;

/// Failures raised by the algebraic layer.
///
/// Capability errors (`Unsupported*`, `AnisotropicTooLarge`, ...) mean the
/// input is outside the supported range.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("residual characteristic 2 is not supported")]
    UnsupportedResidueChar,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degenerate extension: {0}")]
    DegenerateExtension(String),
    #[error("unsupported tower: {0}")]
    UnsupportedTower(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("form is not ε-hermitian: {0}")]
    NotEpsilonHermitian(String),
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("anisotropic kernel of dimension {0} exceeds the supported bound 2")]
    AnisotropicTooLarge(usize),
    #[error("dimension {0} exceeds the supported bound")]
    DimensionTooLarge(usize),
    #[error("no rational isotropic vector found: {0}")]
    IsotropySearchFailed(String),
    #[error("generators do not span a full-rank lattice")]
    RankDeficient,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("square lattice function is not fixed by the involution")]
    NotSigmaFixed,
    #[error("dual is not a translate of the seed")]
    NotShiftRelated,
    #[error("minimal polynomial is not squarefree, so F[β] is not a product of fields")]
    H1Violated,
    #[error("element is not in the Lie algebra: beta + beta^sigma != 0")]
    NotInLieAlgebra,
    #[error("unsupported factor degree: {0}")]
    UnsupportedFactorDegree(String),
    #[error("restriction of the form is degenerate")]
    DegenerateRestriction,
    #[error("block structure mismatch: {0}")]
    BlockMismatch(String),
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
