use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("no solution found within the search budget")]
    NotFound,

    #[error("septuple is not a solution: inclusion fails even at scale {0:e}")]
    InvalidSolution(f64),

    #[error("polyhedron '{0}' is not point symmetric")]
    NotPointSymmetric(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("ambiguous silhouette: vertices {0} and {1} project onto the same hull point")]
    AmbiguousSilhouette(usize, usize),

    #[error("n = {n} exceeds the enumeration limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("vertex {vertex} has a non-integer coordinate {value}")]
    NonIntegerCoordinates { vertex: usize, value: f64 },

    #[error("unknown solid '{0}'")]
    UnknownSolid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("vertex {0} is not in convex position")]
    NotConvexPosition(usize),

    #[error("the origin does not lie strictly inside the polyhedron")]
    OriginNotInterior,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
