//! Connected swarms of labelled robots on graphs: configurations, elementary
//! moves, the group of relabellings a swarm can reach on its own support,
//! and an exhaustive search engine that checks all of it.

pub mod config;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod moves;
pub mod oracle;
pub mod perm;
pub mod planner;
pub mod verify;
pub mod wg;
pub mod wilson;

pub use config::{make_config, Configuration, Label};
pub use error::{AnalysisError, ConfigError, FormatError, GraphError, MoveError, PlanError, SearchError};
pub use graph::{Graph, Vertex, VertexSet};
pub use moves::{apply_move, apply_sequence, enumerate_moves, ElementaryMove, MoveKind, MoveSequence};
pub use perm::{Factor, GroupDescriptor, VertexPermutation};
