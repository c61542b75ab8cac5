use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different Boolean rings")]
    MixedRings,
    #[error("map is not a lattice homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("element is not the join of the family")]
    JoinMismatch,
    #[error("at most {max} atoms are supported, got {got}")]
    TooManyAtoms { max: usize, got: usize },
    #[error("invalid Boolean element: {0}")]
    InvalidElement(String),

    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("characteristic {p} is too small for the trace form on {n}x{n} matrices")]
    SmallCharacteristic { p: u64, n: usize },
    #[error("minimal polynomial does not split over the rationals: {0}")]
    FactorizationUnavailable(String),
    #[error("not a matrix algebra: {0}")]
    NotAnAlgebra(String),
    #[error("idempotent splitting did not converge after {0} trials")]
    SplitFailed(usize),

    #[error("path closure does not stabilise within length bound {0}")]
    NotFiniteDimensional(usize),
    #[error("bad relation {0:?}: {1}")]
    BadRelation(String, String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("not a module homomorphism")]
    NotAModuleMap,
    #[error("map has a nonzero kernel")]
    NotMono,
    #[error("internal extension solve was inconsistent")]
    ExtensionFailure,
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("module is not injective")]
    NotInjective,
    #[error("support sets do not partition the support: {0}")]
    NotAPartition(String),
    #[error("injective resolution truncated at {0} terms; raise max_terms")]
    IncompleteResolution(usize),

    #[error("support datum has no value for witness {0}")]
    MissingSigma(String),
    #[error("induced map is not a lattice homomorphism: {0}")]
    NotALatticeHom(String),

    #[error("unsupported output format {0:?}")]
    UnsupportedFormat(String),
    #[error("parse error: {0}")]
    Parse(String),
}
