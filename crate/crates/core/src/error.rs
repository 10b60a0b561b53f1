use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate point {0} among arguments")]
    DuplicatePoint(String),

    #[error("{what}: size {n} outside supported range {min}..={max}")]
    Size {
        what: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },

    #[error("label {label} out of range for configuration of size {n}")]
    Label { label: usize, n: usize },

    #[error("size mismatch: {0}")]
    Mismatch(String),

    #[error("cross ratio axiom violated: {0}")]
    AxiomViolation(String),

    #[error("cochain is not alternating: {0}")]
    NotAlternating(String),

    #[error("cochain is not a cocycle: coboundary at {tuple:?} is {value}")]
    NotACocycle { tuple: [usize; 4], value: String },

    #[error("rectangle measure violated: {0}")]
    MeasureViolation(String),

    #[error("base quadruple {0:?} is not cyclically ordered")]
    BaseNotOrdered([usize; 4]),

    #[error("rectangle {0:?} does not consist of disjoint half-open arcs")]
    NotAdmissible([usize; 4]),

    #[error("map moves point {0} outside the configuration")]
    OrbitEscape(String),

    #[error("orbit points collide: {0}")]
    Collision(String),

    #[error("matrix has non-positive determinant {0}")]
    Determinant(String),

    #[error("fixed points requested for the identity map")]
    IdentityMap,

    #[error("map is not hyperbolic with rational fixed points: {0}")]
    NotHyperbolic(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("graph is not connected")]
    NotConnected,

    #[error("invalid ray prefix: {0}")]
    InvalidRay(String),

    #[error("Busemann estimate at vertex {0} has not stabilized")]
    NotStabilized(usize),

    #[error("ray prefix too short: T = {0}, need at least 4")]
    PrefixTooShort(usize),

    #[error("inconsistent data at {0}")]
    Inconsistent(String),

    #[error("underdetermined data: {0} free parameters remain")]
    Underdetermined(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
}
