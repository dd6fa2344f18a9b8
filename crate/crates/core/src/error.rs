use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different algebras")]
    MismatchedAlgebras,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegreeGenerator(String),
    #[error("too many generators ({0}); at most 64 are supported")]
    TooManyGenerators(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("malformed element `{0}`")]
    Parse(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("subspace is not closed under the differential in degree {degree}")]
    NotClosed { degree: usize },
    #[error("d∘d ≠ 0 in degree {degree}")]
    NotDifferential { degree: usize },
    #[error("subspace is not closed under products (degrees {0} and {1})")]
    NotSubalgebra(usize, usize),
    #[error("subspace in degree {degree} is not contained in the target")]
    NotContained { degree: usize },
    #[error("map is not a chain map in degree {degree}")]
    NotChainMap { degree: usize },
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("missing structure tensor: {0}")]
    MissingTensor(&'static str),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("splitting failed: {0}")]
    SplittingFailed(String),
}
