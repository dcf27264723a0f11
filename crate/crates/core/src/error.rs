use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: malformed directive: {text}")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("graph is disconnected; unreachable from vertex 1: {unreachable:?}")]
    Disconnected { unreachable: Vec<Vertex> },
    #[error("line {line}: vertex {vertex} outside 1..{n}")]
    VertexOutOfRange { line: usize, vertex: Vertex, n: usize },
    #[error("vertex {pivot} is not adjacent to {toward}")]
    NotAdjacent { pivot: Vertex, toward: Vertex },
}

impl GraphError {
    pub fn code(&self) -> &'static str {
        match self {
            GraphError::MalformedLine { .. } => "MalformedLine",
            GraphError::SelfLoop { .. } => "SelfLoop",
            GraphError::DuplicateEdge { .. } => "DuplicateEdge",
            GraphError::Disconnected { .. } => "Disconnected",
            GraphError::VertexOutOfRange { .. } => "VertexOutOfRange",
            GraphError::NotAdjacent { .. } => "NotAdjacent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configuration has no occupied vertex")]
    Empty,
    #[error("label {label} assigned more than once")]
    DuplicateLabel { label: usize },
    #[error("vertex {vertex} assigned more than once")]
    DuplicateVertex { vertex: Vertex },
    #[error("labels are not exactly 1..{k}; missing {missing:?}")]
    LabelGap { k: usize, missing: Vec<usize> },
    #[error("occupied vertices {support:?} do not induce a connected subgraph")]
    DisconnectedSupport { support: Vec<Vertex> },
    #[error("vertex {vertex} outside 1..{n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("configurations live on different graphs")]
    GraphMismatch,
    #[error("label counts differ: {left} vs {right}")]
    LabelCountMismatch { left: usize, right: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ConfigError {
    pub fn code(&self) -> &'static str {
        match self {
            ConfigError::Empty => "EmptyConfig",
            ConfigError::DuplicateLabel { .. } => "DuplicateLabel",
            ConfigError::DuplicateVertex { .. } => "DuplicateVertex",
            ConfigError::LabelGap { .. } => "LabelGap",
            ConfigError::DisconnectedSupport { .. } => "DisconnectedSupport",
            ConfigError::VertexOutOfRange { .. } => "VertexOutOfRange",
            ConfigError::GraphMismatch => "GraphMismatch",
            ConfigError::LabelCountMismatch { .. } => "LabelCountMismatch",
            ConfigError::Graph(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("malformed move: {0}")]
    MalformedMove(String),
    /// 1-based position of the first move that is malformed or disconnects the swarm.
    #[error("step {index} of the sequence is not a valid move: {reason}")]
    InvalidStep { index: usize, reason: String },
}

impl MoveError {
    pub fn code(&self) -> &'static str {
        match self {
            MoveError::MalformedMove(_) => "MalformedMove",
            MoveError::InvalidStep { .. } => "InvalidStep",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("configuration is not saturated")]
    NotSaturated,
    #[error("configuration is saturated")]
    Saturated,
    #[error(transparent)]
    Config(#[from] ConfigError),
}

impl AnalysisError {
    pub fn code(&self) -> &'static str {
        match self {
            AnalysisError::NotSaturated => "NotSaturated",
            AnalysisError::Saturated => "Saturated",
            AnalysisError::Config(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("state budget exceeded after visiting {visited} configurations")]
    BudgetExceeded { visited: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

impl SearchError {
    pub fn code(&self) -> &'static str {
        match self {
            SearchError::BudgetExceeded { .. } => "BudgetExceeded",
            SearchError::Config(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("target support {support:?} is not a connected set of {expected} vertices")]
    BadSupport { support: Vec<Vertex>, expected: usize },
    #[error("permutation is not in the Wilson group of the configuration")]
    NotInGroup,
    #[error("permutation moves vertices outside the occupied set: {outside:?}")]
    OutsideSupport { outside: Vec<Vertex> },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Move(#[from] MoveError),
}

impl PlanError {
    pub fn code(&self) -> &'static str {
        match self {
            PlanError::BadSupport { .. } => "BadSupport",
            PlanError::NotInGroup => "NotInGroup",
            PlanError::OutsideSupport { .. } => "OutsideSupport",
            PlanError::Search(e) => e.code(),
            PlanError::Move(e) => e.code(),
        }
    }
}

/// Problems reading `.wg` graph/configuration files and plan files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("line {line}: {source}")]
    Config { line: usize, source: ConfigError },
    #[error("line {line}: {source}")]
    Move { line: usize, source: MoveError },
    #[error("file has no config section")]
    MissingConfig,
    #[error("plan is for graph {found:?}, expected {expected:?}")]
    PlanGraphMismatch { expected: String, found: String },
}

impl FormatError {
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Graph(e) => e.code(),
            FormatError::Config { source, .. } => source.code(),
            FormatError::Move { source, .. } => source.code(),
            FormatError::MissingConfig => "MissingConfig",
            FormatError::PlanGraphMismatch { .. } => "GraphMismatch",
        }
    }
}
