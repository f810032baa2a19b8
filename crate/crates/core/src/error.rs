use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // numerics
    #[error("linear system has no exact solution (residual {residual:.3e})")]
    SingularSystem { residual: f64 },
    #[error("{what} is not invertible (smallest singular value {smallest:.3e})")]
    NotInvertible { what: String, smallest: f64 },
    #[error("{what} is not positive (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { what: String, min_eigenvalue: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    // algebra
    #[error("product is not associative at basis triple {triple:?} (residual {residual:.3e})")]
    NonAssociative { triple: (usize, usize, usize), residual: f64 },
    #[error("product is degenerate: {side} multiplication map has rank {rank} < {dim}")]
    DegenerateProduct { side: &'static str, rank: usize, dim: usize },
    #[error("involution law `{law}` fails at basis pair {pair:?} (residual {residual:.3e})")]
    BadInvolution { law: &'static str, pair: (usize, usize), residual: f64 },
    #[error("declared unit is not a two-sided identity (residual {residual:.3e})")]
    BadUnit { residual: f64 },

    // hopf
    #[error("{which} is not bijective (rank {rank} of {dim})")]
    NotBijectiveT { which: &'static str, rank: usize, dim: usize },
    #[error("no counit: (eps x id) Delta = id is inconsistent (residual {residual:.3e})")]
    NoCounit { residual: f64 },
    #[error("{what} is not a homomorphism (residual {residual:.3e})")]
    NotHomomorphism { what: String, residual: f64 },
    #[error("antipode law `{law}` fails (residual {residual:.3e})")]
    AntipodeLawFailed { law: &'static str, residual: f64 },
    #[error("antipode construction requires a unit")]
    MissingUnit,

    // integrals
    #[error("no {side} integral: invariance system has only the zero solution")]
    NoIntegral { side: &'static str },
    #[error("{side} integral is not unique: solution space has dimension {dim}")]
    NonUniqueIntegral { side: &'static str, dim: usize },
    #[error("modular element is inconsistent across the basis (residual {residual:.3e})")]
    InconsistentDelta { residual: f64 },
    #[error("{what} is not faithful (rank {rank} of {dim})")]
    NotFaithful { what: String, rank: usize, dim: usize },
    #[error("{what} is not an automorphism (residual {residual:.3e})")]
    NotAutomorphism { what: String, residual: f64 },
    #[error("scaling constant nu is inconsistent across the basis (residual {residual:.3e})")]
    InconsistentNu { residual: f64 },

    // duality
    #[error("{what} invariance failed (residual {residual:.3e})")]
    InvarianceFailed { what: String, residual: f64 },
    #[error("bidual does not reproduce the original structure: {what} (residual {residual:.3e})")]
    BidualMismatch { what: String, residual: f64 },

    // fourier
    #[error("inverse formula constant varies across inputs (spread {spread:.3e})")]
    NormalizationInconsistent { spread: f64 },
    #[error("{what} is not a representation (residual {residual:.3e})")]
    NotRepresentation { what: String, residual: f64 },
    #[error("intertwining relation `{relation}` fails (residual {residual:.3e})")]
    IntertwiningFailed { relation: String, residual: f64 },
    #[error("Plancherel identity fails (relative residual {residual:.3e})")]
    PlancherelFailed { residual: f64 },

    // heisenberg
    #[error("commutation relation fails at basis pair {pair:?} (residual {residual:.3e})")]
    RelationFailed { pair: (usize, usize), residual: f64 },
    #[error("span of products has dimension {found}, expected {expected}")]
    SpanDeficient { found: usize, expected: usize },
    #[error("functional on the Heisenberg algebra is ill defined (residual {residual:.3e})")]
    IllDefined { residual: f64 },

    // regular
    #[error("closed formula for W does not invert V (residual {residual:.3e})")]
    InverseMismatch { residual: f64 },
    #[error("pentagon equation fails (residual {residual:.3e})")]
    PentagonFailed { residual: f64 },
    #[error("canonical element does not act as W (residual {residual:.3e})")]
    ActionMismatch { residual: f64 },
    #[error("multiplier identity `{identity}` fails (residual {residual:.3e})")]
    IdentityFailed { identity: &'static str, residual: f64 },
    #[error("Fourier-transformed W does not match the commutation map (residual {residual:.3e})")]
    TransformMismatch { residual: f64 },
    #[error("integral is not proportional to the trace of the regular representation (residual {residual:.3e})")]
    TraceFormulaFailed { residual: f64 },
    #[error("trace formula skipped: S^2 is not the identity (residual {residual:.3e})")]
    SkippedS2 { residual: f64 },

    // gns
    #[error("{what} is not an isometry (residual {residual:.3e})")]
    NotIsometry { what: String, residual: f64 },
    #[error("{what} is not unitary (residual {residual:.3e})")]
    NotUnitary { what: String, residual: f64 },
    #[error("formula mismatch for {what} (residual {residual:.3e})")]
    FormulaMismatch { what: String, residual: f64 },
    #[error("modular conjugation does not map M into its commutant (residual {residual:.3e})")]
    CommutantFailed { residual: f64 },
    #[error("modular operator does not implement sigma (residual {residual:.3e})")]
    ModularMismatch { residual: f64 },
    #[error("{what} representation mismatch (residual {residual:.3e})")]
    RepresentationMismatch { what: String, residual: f64 },
    #[error("Heisenberg modular data factorization `{identity}` fails (residual {residual:.3e})")]
    ModularFactorizationFailed { identity: &'static str, residual: f64 },
    #[error("{what} is not contained in the expected span (residual {residual:.3e})")]
    MembershipFailed { what: String, residual: f64 },
    #[error("antipode is not implemented by the modular data: {what} (residual {residual:.3e})")]
    AntipodeImplementationFailed { what: String, residual: f64 },
    #[error("operation requires an involution")]
    MissingStar,

    // discrete
    #[error("result would have infinite support: {what}")]
    InfiniteSupport { what: String },
    #[error("support escapes the window at element {element}")]
    WindowTooSmall { element: String },

    // io
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error in field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("index out of range in `{field}` entry {entry}: {index} >= {dim}")]
    Range { field: String, entry: usize, index: usize, dim: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}
