use std::path::PathBuf;

/// Errors produced by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("dimension {k} exceeds the enumeration budget of {budget}")]
    DimensionTooLarge { k: usize, budget: usize },

    #[error("not a code distribution: {0}")]
    NotACodeDistribution(String),

    #[error("polytope is unbounded in direction of `{0}`")]
    UnboundedPolytope(String),

    #[error("more than {0} lattice points; narrow the dimension range")]
    SolutionLimitExceeded(usize),

    #[error("no tabulated data for q={q}, r={r}{detail}")]
    UnknownParameterRegime { q: u32, r: u32, detail: String },

    #[error("vector is not a codeword of the given code")]
    NotACodeword,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("projection point lies in the point set")]
    PointInSet,

    #[error("inconsistent prescription: {0}")]
    InconsistentPrescription(String),

    #[error("infeasible weight budget: {0}")]
    InfeasibleBudget(String),

    #[error("resume mismatch: {0}")]
    ResumeMismatch(String),

    #[error("corrupt database at line {line}: {msg}")]
    CorruptDatabase { line: usize, msg: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("proof step {id} failed: {statement}")]
    StepFailed { id: usize, statement: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
