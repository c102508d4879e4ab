use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed scalar literal `{literal}`: {reason}")]
    ScalarParse { literal: String, reason: String },

    #[error("literal `{literal}` uses w, which is only legal in an eisenstein field")]
    OmegaInRationalField { literal: String },

    #[error("projective triple is identically zero")]
    ZeroTriple,

    #[error("lines are identical; intersection is not a point")]
    IdenticalLines,

    #[error("line {} duplicates line {}", .second + 1, .first + 1)]
    DuplicateLine { first: usize, second: usize },

    #[error("an arrangement needs at least one line")]
    EmptyArrangement,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("cannot split {d} lines into {k} classes")]
    NetArity { d: usize, k: usize },

    #[error("invalid net: {0}")]
    InvalidNet(String),

    #[error("not a Latin square: {0}")]
    NotLatinSquare(String),

    #[error("order {0} is out of range")]
    OrderOutOfRange(usize),

    #[error("polynomial has degree 0 in `{var}`")]
    DegreeZero { var: String },

    #[error("elimination did not terminate in a nonzero constant: {0}")]
    EliminationFailed(String),

    #[error("parameter {value} is excluded for family `{family}`")]
    ExcludedParameter { family: String, value: String },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("bad parameters for family `{family}`: {reason}")]
    FamilyParams { family: String, reason: String },

    #[error("unknown corpus entry `{0}`")]
    UnknownEntry(String),

    #[error("corpus entry `{name}` failed self-test: {reason}")]
    CorpusMismatch { name: String, reason: String },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arrangement is not essential (all lines are concurrent)")]
    NonEssential,

    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
