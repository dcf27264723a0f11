//! Elementary movements: rotating an occupied cycle, or shifting robots along
//! a path that starts at an empty vertex.

use std::fmt;
use std::str::FromStr;

use crate::config::{Configuration, Label};
use crate::error::MoveError;
use crate::graph::{Graph, Vertex};
use crate::perm::VertexPermutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Cycle,
    Path,
}

/// An r-cycle or r-path `(v_1, ..., v_r)`. Applying it to `f` yields
/// `f ∘ (v_1 v_2 ... v_r)`: the label at `v_{i+1}` moves to `v_i`, and for a
/// cycle the label at `v_1` wraps to `v_r`. For a path `v_1` starts empty and
/// `v_r` ends empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementaryMove {
    pub kind: MoveKind,
    pub vertices: Vec<Vertex>,
}

impl PartialOrd for ElementaryMove {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElementaryMove {
    /// Lexicographic by vertex list, then kind.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.vertices, self.kind).cmp(&(&other.vertices, other.kind))
    }
}

impl ElementaryMove {
    pub fn path(vertices: Vec<Vertex>) -> ElementaryMove {
        ElementaryMove { kind: MoveKind::Path, vertices }
    }

    pub fn cycle(vertices: Vec<Vertex>) -> ElementaryMove {
        ElementaryMove { kind: MoveKind::Cycle, vertices }
    }

    /// The permutation `σ_p = (v_1 v_2 ... v_r)`.
    pub fn induced_permutation(&self) -> VertexPermutation {
        VertexPermutation::cycle(&self.vertices)
    }

    /// The move undoing this one, with permutation `σ_p⁻¹`.
    pub fn reversed(&self) -> ElementaryMove {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        ElementaryMove { kind: self.kind, vertices }
    }

    /// Shape checks against the graph: length, distinct vertices, adjacency.
    fn check_shape(&self, g: &Graph) -> Result<(), MoveError> {
        let r = self.vertices.len();
        let min_len = match self.kind {
            MoveKind::Cycle => 3,
            MoveKind::Path => 2,
        };
        if r < min_len {
            return Err(MoveError::MalformedMove(format!("{self} is too short")));
        }
        let mut seen = vec![false; g.vertex_count() + 1];
        for &v in &self.vertices {
            if !g.contains_vertex(v) {
                return Err(MoveError::MalformedMove(format!("{self}: vertex {v} is not in the graph")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(MoveError::MalformedMove(format!("{self}: vertex {v} repeats")));
            }
        }
        for w in self.vertices.windows(2) {
            if !g.adjacent(w[0], w[1]) {
                return Err(MoveError::MalformedMove(format!("{self}: {} and {} are not adjacent", w[0], w[1])));
            }
        }
        if self.kind == MoveKind::Cycle && !g.adjacent(self.vertices[r - 1], self.vertices[0]) {
            return Err(MoveError::MalformedMove(format!("{self}: cycle does not close")));
        }
        Ok(())
    }

    fn check_weights(&self, c: &Configuration) -> Result<(), MoveError> {
        let ok = match self.kind {
            MoveKind::Cycle => self.vertices.iter().all(|&v| c.is_occupied(v)),
            MoveKind::Path => !c.is_occupied(self.vertices[0]) && self.vertices[1..].iter().all(|&v| c.is_occupied(v)),
        };
        if ok {
            Ok(())
        } else {
            Err(MoveError::MalformedMove(format!("{self}: weight pattern does not hold in the configuration")))
        }
    }
}

impl fmt::Display for ElementaryMove {
    /// Plan-file syntax: `path 5 8 7 2 1` or `cycle 7 8 11`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            MoveKind::Cycle => "cycle",
            MoveKind::Path => "path",
        };
        f.write_str(kind)?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for ElementaryMove {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut words = s.split_whitespace();
        let kind = match words.next() {
            Some("cycle") => MoveKind::Cycle,
            Some("path") => MoveKind::Path,
            _ => return Err(MoveError::MalformedMove(format!("expected `path` or `cycle`: {s:?}"))),
        };
        let vertices = words
            .map(|w| w.parse::<Vertex>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| MoveError::MalformedMove(format!("bad vertex id in {s:?}")))?;
        Ok(ElementaryMove { kind, vertices })
    }
}

fn shifted_labels(c: &Configuration, m: &ElementaryMove) -> Vec<Option<Label>> {
    let mut labels = c.label_table().to_vec();
    let r = m.vertices.len();
    for i in 0..r {
        labels[m.vertices[i]] = c.label(m.vertices[(i + 1) % r]);
    }
    labels
}

/// Applies `m` to `c`, producing `c ∘ σ_m`. The result may have a
/// disconnected support; see [`is_valid`].
pub fn apply_move(c: &Configuration, m: &ElementaryMove) -> Result<Configuration, MoveError> {
    m.check_shape(c.graph())?;
    m.check_weights(c)?;
    Ok(apply_unchecked(c, m))
}

pub(crate) fn apply_unchecked(c: &Configuration, m: &ElementaryMove) -> Configuration {
    Configuration::from_parts(c.graph_arc().clone(), shifted_labels(c, m), c.k())
}

/// Whether applying `m` keeps the occupied set connected.
pub fn is_valid(c: &Configuration, m: &ElementaryMove) -> Result<bool, MoveError> {
    m.check_shape(c.graph())?;
    m.check_weights(c)?;
    Ok(path_keeps_connected(c, m))
}

fn path_keeps_connected(c: &Configuration, m: &ElementaryMove) -> bool {
    if m.kind == MoveKind::Cycle {
        return true;
    }
    let g = c.graph();
    let mut mask: Vec<bool> = (0..=g.vertex_count()).map(|v| c.is_occupied(v)).collect();
    mask[m.vertices[0]] = true;
    mask[*m.vertices.last().expect("non-empty")] = false;
    g.is_connected_mask(&mask)
}

/// All valid elementary moves of `c`, sorted lexicographically by vertex list.
/// Every simple cycle of occupied vertices appears once per orientation,
/// starting at its smallest vertex; every simple path from an empty vertex
/// through occupied vertices appears if it keeps the swarm connected.
pub fn enumerate_moves(c: &Configuration) -> Vec<ElementaryMove> {
    let g = c.graph();
    let n = g.vertex_count();
    let occupied: Vec<bool> = (0..=n).map(|v| c.is_occupied(v)).collect();
    let mut out = Vec::new();
    let mut on_path = vec![false; n + 1];
    let mut path = Vec::with_capacity(n);

    // cycles: the start is the smallest vertex of the cycle
    for start in 1..=n {
        if !occupied[start] {
            continue;
        }
        path.push(start);
        on_path[start] = true;
        extend_cycles(g, &occupied, start, &mut path, &mut on_path, &mut out);
        on_path[start] = false;
        path.pop();
    }

    // paths from each empty vertex
    let mut mask = occupied.clone();
    for start in 1..=n {
        if occupied[start] {
            continue;
        }
        path.push(start);
        on_path[start] = true;
        mask[start] = true;
        extend_paths(g, &occupied, &mut mask, &mut path, &mut on_path, &mut out);
        mask[start] = false;
        on_path[start] = false;
        path.pop();
    }
    out.sort();
    out
}

fn extend_cycles(
    g: &Graph,
    occupied: &[bool],
    start: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<ElementaryMove>,
) {
    let last = *path.last().expect("non-empty");
    for &w in g.neighbors(last) {
        if w == start && path.len() >= 3 {
            out.push(ElementaryMove::cycle(path.clone()));
        } else if w > start && occupied[w] && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            extend_cycles(g, occupied, start, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

fn extend_paths(
    g: &Graph,
    occupied: &[bool],
    mask: &mut [bool],
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<ElementaryMove>,
) {
    let last = *path.last().expect("non-empty");
    for &w in g.neighbors(last) {
        if !occupied[w] || on_path[w] {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        mask[w] = false;
        if g.is_connected_mask(mask) {
            out.push(ElementaryMove::path(path.clone()));
        }
        mask[w] = true;
        extend_paths(g, occupied, mask, path, on_path, out);
        on_path[w] = false;
        path.pop();
    }
}

/// A source configuration and the elementary moves applied to it in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSequence {
    pub source: Configuration,
    pub moves: Vec<ElementaryMove>,
}

impl MoveSequence {
    pub fn new(source: Configuration, moves: Vec<ElementaryMove>) -> MoveSequence {
        MoveSequence { source, moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the sequence, checking every step, and returns the final
    /// configuration with the composite movement `σ = σ_1 ∘ σ_2 ∘ ... ∘ σ_t`,
    /// so that `final = source ∘ σ`.
    pub fn apply(&self) -> Result<(Configuration, VertexPermutation), MoveError> {
        let mut current = self.source.clone();
        let mut sigma = VertexPermutation::identity();
        for (i, m) in self.moves.iter().enumerate() {
            let step = |reason: String| MoveError::InvalidStep { index: i + 1, reason };
            match is_valid(&current, m) {
                Ok(true) => {}
                Ok(false) => return Err(step(format!("{m} disconnects the swarm"))),
                Err(e) => return Err(step(e.to_string())),
            }
            current = apply_unchecked(&current, m);
            sigma = sigma.compose(&m.induced_permutation());
        }
        Ok((current, sigma))
    }

    /// The sequence that undoes this one, starting from its final configuration.
    pub fn reversed(&self) -> Result<MoveSequence, MoveError> {
        let (end, _) = self.apply()?;
        let moves = self.moves.iter().rev().map(ElementaryMove::reversed).collect();
        Ok(MoveSequence { source: end, moves })
    }
}

pub fn apply_sequence(s: &MoveSequence) -> Result<(Configuration, VertexPermutation), MoveError> {
    s.apply()
}
