use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph file: {0}")]
    Json(#[from] serde_json::Error),

    #[error("graph has no edges")]
    Empty,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),

    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertexId(String),

    #[error("edge `{edge}` has invalid length `{literal}`")]
    InvalidLength { edge: String, literal: String },

    #[error("edge `{0}` has nonpositive length")]
    NonPositiveLength(String),

    #[error("vertex set is not adequate: {0}")]
    NotAdequate(String),

    #[error("Laplacian has rank deficiency beyond one (pivot {pivot} vanished)")]
    RankDeficient { pivot: usize },

    #[error("edge `{0}` is not a bridge")]
    NotABridge(String),

    #[error("offset {offset} outside [0, {length}] on edge `{edge}`")]
    PointOutOfRange {
        edge: String,
        offset: String,
        length: String,
    },

    #[error("malformed point `{0}`; expected `<edge-id>:<offset>` or `<vertex-id>`")]
    PointSyntax(String),

    #[error("edge `{0}` is structurally a non-bridge but r(p_i, q_i) equals its length")]
    InconsistentEdge(String),

    #[error("divisor has degree -2")]
    DegreeMinusTwo,

    #[error("invalid divisor coefficient `{value}` for vertex `{vertex}`")]
    InvalidCoefficient { vertex: String, value: String },

    #[error("subdivision count must be at least 2, got {0}")]
    TooFewSubdivisions(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
