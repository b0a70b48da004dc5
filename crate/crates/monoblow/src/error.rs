use crate::lattice::LatticeVec;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("the zero vector has no direction")]
    ZeroVector,
    #[error("empty generator list")]
    NoGenerators,
    #[error("cone contains a line (not strictly convex)")]
    NotPointed,
    #[error("cone is not full-dimensional")]
    DegenerateCone,
    #[error("invalid cyclic quotient type ({n}, {q})")]
    InvalidQuotient { n: i64, q: i64 },
    #[error("exponent {0} is not a member of the base semigroup")]
    ExponentOutsideSemigroup(LatticeVec),
    #[error("monomial ideal has no exponents")]
    EmptyIdeal,
    #[error("base semigroup is not saturated")]
    NotSaturated,
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid column pair ({0}, {1})")]
    InvalidColumns(usize, usize),
    #[error("all 2x2 minors of the selected columns vanish")]
    AllZeroMinors,
    #[error("image of `{0}` is not a single monomial")]
    NotMonomial(String),
    #[error("splitting identity x*fx + y*fy + z*fz = f fails")]
    InvalidSplitting,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resolution trace has unresolved charts")]
    NotResolved,
    #[error("fan has a non-unimodular pair of consecutive rays")]
    NonSmoothFan,
    #[error("internal invariant violated: {0}")]
    InternalMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
