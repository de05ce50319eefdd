use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("density is undefined for a graph without vertices")]
    EmptyGraph,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cycle outside the base set: {}", .cycle.join(" -> "))]
    UngroundedCycle { cycle: Vec<String> },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DictError {
    #[error("word {word:?} has an empty definition")]
    EmptyDefinition { word: String },
    #[error("word {word:?} is used in its own definition")]
    SelfDefinition { word: String },
    #[error("word {word:?} has more than one entry")]
    DuplicateDefiniendum { word: String },
    #[error("definientes without an entry: {}", .missing.join(", "))]
    NotClosed { missing: Vec<String> },
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate sense {sense} for {headword:?}")]
    DuplicateSense {
        line: usize,
        headword: String,
        sense: u32,
    },
    #[error("normalization removed every entry")]
    EmptyResult,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Invalid(#[from] DictError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("the grounding kernel is empty")]
    EmptyKernel,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundingError {
    #[error("branch-and-bound budget of {budget} nodes exhausted; best grounding set found has {upper_bound} vertices")]
    BudgetExceeded {
        budget: u64,
        upper_bound: usize,
        best: Vec<String>,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no words shared between the hierarchy and the norms")]
    NoOverlap,
    #[error("need at least {needed} complete observations, have {have}")]
    InsufficientData { needed: usize, have: usize },
    #[error("collinear predictors: {} depends on earlier columns", .columns.join(", "))]
    Collinear { columns: Vec<String> },
    #[error("{what} has no variance")]
    Constant { what: String },
    #[error("level {level} has {count} observation(s); at least 2 are required")]
    InsufficientGroup { level: u32, count: usize },
    #[error("need at least 2 levels, have {0}")]
    TooFewGroups(usize),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
