//! Labelled swarm configurations: which vertex holds which robot.

use std::fmt;
use std::sync::Arc;

use crate::error::ConfigError;
use crate::graph::{Graph, Vertex, VertexSet};

pub type Label = usize;

/// A connected `[k]`-configuration over a graph. Labels are exactly `1..=k`,
/// each on its own vertex, and the occupied vertices induce a connected
/// subgraph. Empty vertices simply have no label.
#[derive(Clone)]
pub struct Configuration {
    graph: Arc<Graph>,
    // indexed by vertex; slot 0 unused
    labels: Vec<Option<Label>>,
    k: usize,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.graph == other.graph
    }
}

impl Eq for Configuration {}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.assignments()).finish()
    }
}

impl fmt::Display for Configuration {
    /// One `vertex:label` pair per occupied vertex, e.g. `1:1 2:2 7:3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignments().map(|(v, l)| format!("{v}:{l}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Builds and validates a configuration from `(vertex, label)` pairs.
pub fn make_config(
    graph: &Arc<Graph>,
    assignments: impl IntoIterator<Item = (Vertex, Label)>,
) -> Result<Configuration, ConfigError> {
    let n = graph.vertex_count();
    let mut labels: Vec<Option<Label>> = vec![None; n + 1];
    let mut seen_labels = VertexSet::new();
    let mut k = 0;
    for (v, l) in assignments {
        if !graph.contains_vertex(v) {
            return Err(ConfigError::VertexOutOfRange { vertex: v, n });
        }
        if labels[v].is_some() {
            return Err(ConfigError::DuplicateVertex { vertex: v });
        }
        if !seen_labels.insert(l) {
            return Err(ConfigError::DuplicateLabel { label: l });
        }
        labels[v] = Some(l);
        k += 1;
    }
    if k == 0 {
        return Err(ConfigError::Empty);
    }
    let missing: Vec<Label> = (1..=k).filter(|l| !seen_labels.contains(l)).collect();
    if !missing.is_empty() || seen_labels.iter().any(|&l| l == 0 || l > k) {
        return Err(ConfigError::LabelGap { k, missing });
    }
    let c = Configuration { graph: Arc::clone(graph), labels, k };
    let support = c.occupied();
    if !graph.is_connected_subset(&support) {
        return Err(ConfigError::DisconnectedSupport { support: support.into_iter().collect() });
    }
    Ok(c)
}

impl Configuration {
    /// Builds a configuration from a per-vertex label table without checking
    /// the invariants. Callers guarantee them (moves and search states).
    pub(crate) fn from_parts(graph: Arc<Graph>, labels: Vec<Option<Label>>, k: usize) -> Configuration {
        Configuration { graph, labels, k }
    }

    /// Labels the sorted `support` with `1..=k` in increasing vertex order.
    pub fn from_support(graph: &Arc<Graph>, support: &VertexSet) -> Result<Configuration, ConfigError> {
        make_config(graph, support.iter().enumerate().map(|(i, &v)| (v, i + 1)))
    }

    pub fn saturated(graph: &Arc<Graph>) -> Configuration {
        let all: VertexSet = graph.vertices().collect();
        Configuration::from_support(graph, &all).expect("graphs are connected")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn label(&self, v: Vertex) -> Option<Label> {
        self.labels.get(v).copied().flatten()
    }

    pub(crate) fn label_table(&self) -> &[Option<Label>] {
        &self.labels
    }

    pub fn is_occupied(&self, v: Vertex) -> bool {
        self.label(v).is_some()
    }

    /// `(vertex, label)` pairs in increasing vertex order.
    pub fn assignments(&self) -> impl Iterator<Item = (Vertex, Label)> + '_ {
        self.labels.iter().enumerate().filter_map(|(v, l)| l.map(|l| (v, l)))
    }

    /// The occupied set `V_t`.
    pub fn occupied(&self) -> VertexSet {
        self.assignments().map(|(v, _)| v).collect()
    }

    /// The empty set `V_∅`.
    pub fn empties(&self) -> VertexSet {
        self.graph.vertices().filter(|&v| !self.is_occupied(v)).collect()
    }

    pub fn weight(&self) -> Weighting {
        Weighting(self.graph.vertices().map(|v| u8::from(self.is_occupied(v))).collect())
    }

    /// Vertex holding `label`, if any.
    pub fn position(&self, label: Label) -> Option<Vertex> {
        self.assignments().find(|&(_, l)| l == label).map(|(v, _)| v)
    }

    pub fn is_saturated(&self) -> bool {
        self.k == self.graph.vertex_count()
    }

    pub fn is_similar(&self, other: &Configuration) -> Result<bool, ConfigError> {
        self.check_compatible(other)?;
        Ok((1..self.labels.len()).all(|v| self.labels[v].is_some() == other.labels[v].is_some()))
    }

    pub(crate) fn check_compatible(&self, other: &Configuration) -> Result<(), ConfigError> {
        if self.graph != other.graph {
            return Err(ConfigError::GraphMismatch);
        }
        if self.k != other.k {
            return Err(ConfigError::LabelCountMismatch { left: self.k, right: other.k });
        }
        Ok(())
    }

    /// Empty vertices in the direction of `toward` seen from `pivot`, with
    /// their count: the set `B_pivot(toward)` and `b_pivot(toward)`.
    pub fn empties_in_direction(&self, pivot: Vertex, toward: Vertex) -> Result<(VertexSet, usize), ConfigError> {
        let comp = self.graph.direction_component(pivot, toward)?;
        let empties: VertexSet = comp.into_iter().filter(|&v| !self.is_occupied(v)).collect();
        let count = empties.len();
        Ok((empties, count))
    }

    pub(crate) fn empty_count_in_direction(&self, pivot: Vertex, toward: Vertex) -> usize {
        self.empties_in_direction(pivot, toward).map(|(_, c)| c).unwrap_or(0)
    }
}

/// The 0/1 weight function of a configuration, indexed from vertex 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting(Vec<u8>);

impl Weighting {
    pub fn get(&self, v: Vertex) -> u8 {
        self.0[v - 1]
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&w| w as usize).sum()
    }
}
