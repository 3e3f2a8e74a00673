use thiserror::Error;

/// Errors raised by the toric library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("zero vector has no primitive generator")]
    ZeroVector,

    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,

    #[error("cone {0:?} contains a line")]
    NonSharpCone(Vec<Vec<i64>>),

    #[error("cones {sigma:?} and {tau:?} meet outside a common face (witness point {witness:?})")]
    IntersectionNotFace {
        sigma: Vec<usize>,
        tau: Vec<usize>,
        witness: Vec<i64>,
    },

    #[error("cone {0:?} is not in the fan")]
    ConeNotInFan(Vec<usize>),

    #[error("subgroup is not big (infinite index)")]
    NotBig,

    #[error("element does not lie in the requested subgroup: {0}")]
    NotInSubgroup(String),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("theorem check `{name}` failed on fan {fan}")]
    TheoremViolation { name: String, fan: String },

    #[error("correspondence violated: {0}")]
    CorrespondenceViolation(String),

    #[error("iteration bound {0} exceeded")]
    IterationBound(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
