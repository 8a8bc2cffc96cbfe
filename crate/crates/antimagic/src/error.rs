use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop ({0},{0}) is not allowed")]
    SelfLoop(usize),

    #[error("duplicate edge ({0},{1}) after normalization")]
    DuplicateEdge(usize, usize),

    #[error("edge endpoint {index} out of range for order {order}")]
    EndpointOutOfRange { index: usize, order: usize },

    #[error("{family}: parameter {param}={got} is below the minimum {min}")]
    ParamBelowMinimum {
        family: &'static str,
        param: &'static str,
        got: usize,
        min: usize,
    },

    #[error("graph must be connected")]
    Disconnected,

    #[error("operation is undefined for K_2")]
    K2Excluded,

    #[error("graph order {got} exceeds the supported budget {max}")]
    OrderAboveBudget { got: usize, max: usize },

    #[error("labeling has {got} labels but the graph has {expected} edges")]
    LabelCountMismatch { got: usize, expected: usize },

    #[error("matrix entries are not a permutation of [1,{expected}]: {detail}")]
    NotAPermutation { expected: i64, detail: String },

    #[error("matrix {0} {1} contains only holes (isolated vertex)")]
    EmptyLine(&'static str, usize),

    #[error("tripartite matrix must have the hole exactly at (1,1)")]
    BadBorder,

    #[error("no {h}x{k} magic rectangle exists: {reason}")]
    NoMagicRectangle { h: usize, k: usize, reason: String },

    #[error("siamese_square requires an odd order >= 3, got {0}")]
    SiameseEvenOrder(usize),

    #[error("column index {col} out of range for a {h}x{k} rectangle")]
    ColumnOutOfRange { col: usize, h: usize, k: usize },

    #[error("K_(1,1) has a single edge and no local antimagic 2-coloring question; rejected")]
    KppOneOne,

    #[error("no graph of order {0} has chi_la = 2 (orders 3, 4, 5 and 7 are impossible)")]
    Chi2ImpossibleOrder(usize),

    #[error("join requires {0}")]
    JoinPrecondition(String),

    #[error("input labeling failed verification: {0}")]
    InvalidInputLabeling(String),

    #[error("internal construction produced an invalid labeling: {0}")]
    ConstructionBug(String),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
