use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("simplex repeats vertex {0}")]
    DuplicateVertex(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("empty vertex list")]
    EmptySimplex,

    #[error("level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("complexes live over different vertex universes")]
    UniverseMismatch,

    #[error("invalid ray segment [{start}, {end}]")]
    InvalidRange { start: u32, end: u32 },

    #[error("vertex map does not send {simplex} to a simplex of the target")]
    NotSimplicial { simplex: String },

    #[error("vertex map is undefined on {0}")]
    PartialVertexMap(String),

    #[error("telescope precondition violated at {simplex}: {reason}")]
    TelescopePrecondition { simplex: String, reason: String },

    #[error("ray bound {bound} at level {level} must exceed the largest color {max_color}")]
    RayBoundTooSmall { level: usize, bound: u32, max_color: u32 },

    #[error("missing ray bound for level {0}")]
    MissingRayBound(usize),

    #[error("closure assertion failed: face {face} of attached simplex {simplex} is missing")]
    ClosureAssertion { simplex: String, face: String },

    #[error("coloring is only defined for dimension >= 1")]
    ColoringDimension,

    #[error("coloring has no color for {0}")]
    MissingColor(String),

    #[error("bounds are only defined for n >= 1")]
    ZeroLevel,

    #[error("arithmetic overflow computing bounds for n = {0}")]
    BoundsOverflow(usize),

    #[error("tower is empty")]
    EmptyTower,

    #[error("tower stage {stage} is not contained in stage {next}")]
    TowerInclusion { stage: usize, next: usize },

    #[error("vertex {vertex} already lies in {degree} edges, more than {bound}")]
    DegreeExceeded { vertex: String, degree: usize, bound: usize },

    #[error("operation requires a nonempty complex")]
    EmptyComplex,

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("generator size must be at least 1")]
    GeneratorSize,

    #[error("input complex must be plain (level 0, no stage), found level {0}")]
    NotPlain(usize),

    #[error("stage coordinates are not supported by {0}")]
    StagedVertex(&'static str),

    #[error("materialization needs {needed} vertices, over the limit {limit}")]
    TooLarge { needed: String, limit: usize },

    #[error("collapse got stuck: {0}")]
    CollapseStuck(String),

    #[error("modulus {0} is not a prime")]
    NotPrime(u64),

    #[error("unrecognized coefficients {0:?}; expected Z, Q or mod-<prime>")]
    BadCoefficients(String),

    #[error("induced maps are computed over a field, not {0}")]
    NotAField(String),
}
