use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },
    #[error("operands live in different quantum tori")]
    TorusMismatch,
    #[error("root-of-unity order must be positive, got {0}")]
    InvalidOrder(i64),
    #[error("boundary index {index} out of range for {pants}")]
    BoundaryIndex { pants: &'static str, index: usize },
    #[error("coordinate is not in the Dehn-Thurston monoid: {0}")]
    NotInMonoid(String),
    #[error("invalid curve component: {0}")]
    InvalidComponent(String),
    #[error("excluded surface (g, m) = ({genus}, {punctures})")]
    ExcludedSurface { genus: usize, punctures: usize },
    #[error("invalid pants datum: {0}")]
    InvalidDatum(String),
    #[error("element does not q-commute uniformly with x^{0:?}")]
    NonUniformPairing(Vec<i64>),
    #[error("face traces do not match along a curve: {0}")]
    Unmatched(String),
    #[error("the zero element has no lead term")]
    ZeroElement,
    #[error("lead term is not unique ({0} maximal terms)")]
    NonUniqueLead(usize),
    #[error("expected an integer, found half-integer {0}/2")]
    NotIntegral(i64),
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("malformed datum file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
