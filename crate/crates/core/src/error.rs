use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("trivial word has no root")]
    TrivialWord,

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("rank {0} is outside the supported range 2..=26")]
    BadRank(usize),

    #[error("letter `{letter}` does not belong to a basis of rank {rank}")]
    LetterOutsideRank { letter: char, rank: usize },

    #[error("refusing to enumerate {requested} items (cap is {cap})")]
    CapExceeded { requested: String, cap: u64 },

    #[error("pattern is empty")]
    EmptyPattern,

    #[error("rays coincide")]
    RaysCoincide,

    #[error("need at least two distinct lines, got {0}")]
    TooFewLines(usize),

    #[error("vertex set is {0}")]
    BadSubtree(&'static str),

    #[error("vertex {0} is not in the graph")]
    VertexAbsent(String),

    #[error("splice mismatch: {0}")]
    SpliceMismatch(String),

    #[error("no lines pass through edge {0}")]
    NoLinesThroughEdge(String),

    #[error("depth too small: {depth} < {required}")]
    DepthTooSmall { depth: usize, required: usize },

    #[error("unsupported boundary point set: {0}")]
    UnsupportedPoints(String),

    #[error("insufficient usable rows for a fit: {0} (need 3)")]
    InsufficientRows(usize),

    #[error("invalid property spec `{0}`")]
    InvalidSpec(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
