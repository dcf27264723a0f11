//! Exhaustive breadth-first search over labelled configurations.
//!
//! States are keyed by their per-vertex label table (`0` for empty), which is
//! the sorted `(vertex, label)` list in dense form. Empty vertices carry no
//! identity, so the factorial blow-up from permuting them never materialises.
//! Each BFS layer is expanded in parallel and merged in frontier order, so the
//! numbering of states does not depend on the thread count.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::config::{Configuration, Label};
use crate::error::SearchError;
use crate::graph::{Graph, Vertex};
use crate::moves::{apply_unchecked, enumerate_moves, ElementaryMove, MoveSequence};
use crate::perm::VertexPermutation;

pub const DEFAULT_MAX_STATES: usize = 2_000_000;

/// `SWARM_WILSON_MAX_STATES` if set and parseable, else [`DEFAULT_MAX_STATES`].
pub fn default_max_states() -> usize {
    std::env::var("SWARM_WILSON_MAX_STATES").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_STATES)
}

type Key = Box<[u8]>;

fn key_of(c: &Configuration) -> Key {
    c.graph().vertices().map(|v| c.label(v).unwrap_or(0) as u8).collect()
}

fn config_of(graph: &Arc<Graph>, key: &[u8], k: usize) -> Configuration {
    let mut labels: Vec<Option<Label>> = vec![None];
    labels.extend(key.iter().map(|&l| (l != 0).then_some(l as Label)));
    Configuration::from_parts(Arc::clone(graph), labels, k)
}

/// Every configuration reachable from `source`, in BFS order, with the BFS
/// tree for plan recovery.
#[derive(Debug, Clone)]
pub struct StateSpace {
    pub source: Configuration,
    states: Vec<Key>,
    index: HashMap<Key, usize>,
    // BFS tree: predecessor state and the move taken from it
    parent: Vec<Option<(usize, ElementaryMove)>>,
    transitions: usize,
    pub max_states: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    pub max_states: usize,
    /// Worker threads for layer expansion; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SearchOptions {
    pub fn with_budget(max_states: usize) -> SearchOptions {
        SearchOptions { max_states, threads: None }
    }
}

impl StateSpace {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of (state, move) pairs examined, including ones leading to known states.
    pub fn transition_count(&self) -> usize {
        self.transitions
    }

    pub fn state(&self, i: usize) -> Configuration {
        config_of(self.source.graph_arc(), &self.states[i], self.source.k())
    }

    pub fn states(&self) -> impl Iterator<Item = Configuration> + '_ {
        (0..self.states.len()).map(|i| self.state(i))
    }

    pub fn contains(&self, c: &Configuration) -> bool {
        self.index.contains_key(&key_of(c))
    }

    pub fn index_of(&self, c: &Configuration) -> Option<usize> {
        self.index.get(&key_of(c)).copied()
    }

    /// Valid moves out of state `i` and where they lead.
    pub fn successors(&self, i: usize) -> Vec<(ElementaryMove, Configuration)> {
        let c = self.state(i);
        enumerate_moves(&c)
            .into_iter()
            .map(|m| {
                let next = apply_unchecked(&c, &m);
                (m, next)
            })
            .collect()
    }

    /// Moves along the BFS tree from the source to state `i`; minimal length.
    pub fn plan_to(&self, i: usize) -> MoveSequence {
        let mut moves = Vec::new();
        let mut cur = i;
        while let Some((prev, m)) = &self.parent[cur] {
            moves.push(m.clone());
            cur = *prev;
        }
        moves.reverse();
        MoveSequence::new(self.source.clone(), moves)
    }

    /// Permutations `π` of the source support such that `source ∘ π` was reached.
    pub fn label_group(&self) -> BTreeSet<VertexPermutation> {
        let source_key = &self.states[0];
        let position: HashMap<u8, Vertex> =
            source_key.iter().enumerate().filter(|(_, &l)| l != 0).map(|(i, &l)| (l, i + 1)).collect();
        self.states
            .iter()
            .filter(|s| s.iter().zip(source_key.iter()).all(|(a, b)| (*a == 0) == (*b == 0)))
            .map(|s| {
                let pairs = s.iter().enumerate().filter(|(_, &l)| l != 0).map(|(i, l)| (i + 1, position[l]));
                VertexPermutation::from_pairs(pairs).expect("labels are a bijection")
            })
            .collect()
    }
}

fn search(f0: &Configuration, options: SearchOptions, stop_at: Option<&Key>) -> Result<StateSpace, SearchError> {
    if f0.graph().vertex_count() > u8::MAX as usize {
        // labels are stored as bytes
        return Err(SearchError::BudgetExceeded { visited: 0 });
    }
    let graph = f0.graph_arc().clone();
    let k = f0.k();
    let start = key_of(f0);
    let mut space = StateSpace {
        source: f0.clone(),
        states: vec![start.clone()],
        index: HashMap::from([(start.clone(), 0)]),
        parent: vec![None],
        transitions: 0,
        max_states: options.max_states,
    };
    if stop_at == Some(&start) {
        return Ok(space);
    }
    let expand = |key: &Key| -> Vec<(ElementaryMove, Key)> {
        let c = config_of(&graph, key, k);
        enumerate_moves(&c)
            .into_iter()
            .map(|m| {
                let next = key_of(&apply_unchecked(&c, &m));
                (m, next)
            })
            .collect()
    };
    let pool = options.threads.map(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().expect("thread pool"));
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let layer: Vec<Vec<(ElementaryMove, Key)>> = {
            let work = || frontier.par_iter().map(|&i| expand(&space.states[i])).collect();
            match &pool {
                Some(p) => p.install(work),
                None => work(),
            }
        };
        let mut next = Vec::new();
        for (&from, succs) in frontier.iter().zip(layer) {
            for (m, key) in succs {
                space.transitions += 1;
                if space.index.contains_key(&key) {
                    continue;
                }
                if space.states.len() >= options.max_states {
                    return Err(SearchError::BudgetExceeded { visited: space.states.len() });
                }
                let id = space.states.len();
                space.index.insert(key.clone(), id);
                space.parent.push(Some((from, m)));
                let done = stop_at == Some(&key);
                space.states.push(key);
                next.push(id);
                if done {
                    return Ok(space);
                }
            }
        }
        frontier = next;
    }
    Ok(space)
}

/// All configurations reachable from `f0` by valid moves.
pub fn explore(f0: &Configuration, max_states: usize) -> Result<StateSpace, SearchError> {
    search(f0, SearchOptions::with_budget(max_states), None)
}

pub fn explore_with(f0: &Configuration, options: SearchOptions) -> Result<StateSpace, SearchError> {
    search(f0, options, None)
}

/// The Wilson group's action on labels, found by exhaustive search.
pub fn oracle_label_group(f0: &Configuration, max_states: usize) -> Result<BTreeSet<VertexPermutation>, SearchError> {
    Ok(explore(f0, max_states)?.label_group())
}

/// A minimum-length valid sequence from `f0` to exactly `target`, or `None`
/// if `target` is unreachable.
pub fn shortest_plan(
    f0: &Configuration,
    target: &Configuration,
    max_states: usize,
) -> Result<Option<MoveSequence>, SearchError> {
    shortest_plan_with(f0, target, SearchOptions::with_budget(max_states))
}

pub fn shortest_plan_with(
    f0: &Configuration,
    target: &Configuration,
    options: SearchOptions,
) -> Result<Option<MoveSequence>, SearchError> {
    f0.check_compatible(target).map_err(SearchError::from)?;
    let goal = key_of(target);
    let space = search(f0, options, Some(&goal))?;
    Ok(space.index.get(&goal).map(|&i| space.plan_to(i)))
}
