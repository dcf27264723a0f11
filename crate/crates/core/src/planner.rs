//! Moving a swarm onto another support, and turning group elements into
//! explicit move sequences.

use std::collections::VecDeque;

use crate::config::Configuration;
use crate::error::PlanError;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::moves::{apply_unchecked, ElementaryMove, MoveSequence};
use crate::oracle::{shortest_plan_with, SearchOptions};
use crate::perm::VertexPermutation;

/// BFS spanning tree of `G[set]`, seeded from `roots` in order. Returns the
/// parent table (`0` for roots and vertices outside `set`).
fn spanning_tree(g: &Graph, set: &VertexSet, roots: &[Vertex]) -> Vec<Vertex> {
    let mut parent = vec![0; g.vertex_count() + 1];
    let mut seen = vec![false; g.vertex_count() + 1];
    let mut queue = VecDeque::new();
    for &r in roots {
        seen[r] = true;
        queue.push_back(r);
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] && set.contains(&w) {
                seen[w] = true;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    parent
}

/// Tree path from the root down to `leaf`.
fn root_path(parent: &[Vertex], leaf: Vertex) -> Vec<Vertex> {
    let mut path = vec![leaf];
    let mut cur = leaf;
    while parent[cur] != 0 {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

fn leaves(set: &VertexSet, parent: &[Vertex]) -> VertexSet {
    let mut has_child = VertexSet::new();
    for &v in set {
        if parent[v] != 0 {
            has_child.insert(parent[v]);
        }
    }
    set.iter().copied().filter(|v| !has_child.contains(v)).collect()
}

/// Largest component of `G[set]`, ties to the one holding the smallest vertex.
fn largest_component(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut best = VertexSet::new();
    let mut seen = VertexSet::new();
    for &v in set {
        if seen.contains(&v) {
            continue;
        }
        let comp = g.component_of(v, |w| set.contains(&w));
        seen.extend(comp.iter().copied());
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best
}

/// One relocation step: shift the swarm one vertex closer to `target`, or grow
/// its overlap with `target` by one vertex.
fn relocation_step(g: &Graph, current: &VertexSet, target: &VertexSet) -> ElementaryMove {
    let overlap: VertexSet = current.intersection(target).copied().collect();
    if overlap.is_empty() {
        let geo = g.geodesic(current, target).expect("graph is connected");
        let (x0, x1) = (geo[0], geo[1]);
        let parent = spanning_tree(g, current, &[x0]);
        let leaf = leaves(current, &parent).into_iter().find(|&y| y != x0).unwrap_or(x0);
        let mut path = vec![x1];
        path.extend(root_path(&parent, leaf));
        return ElementaryMove::path(path);
    }
    let core = largest_component(g, &overlap);
    // an empty target vertex hanging off the overlap component, and its anchor
    let (x, anchor) = target
        .iter()
        .filter(|v| !core.contains(v))
        .find_map(|&x| g.neighbors(x).iter().find(|w| core.contains(w)).map(|&w| (x, w)))
        .expect("target support is connected");
    // grow the tree through the overlap first so that a leaf outside it exists
    let mut parent = spanning_tree(g, &core, &[anchor]);
    let seeds: Vec<Vertex> = core.iter().copied().collect();
    let rest = spanning_tree(g, current, &seeds);
    for &v in current {
        if !core.contains(&v) {
            parent[v] = rest[v];
        }
    }
    let leaf =
        leaves(current, &parent).into_iter().find(|y| !core.contains(y)).expect("swarm is not inside the overlap");
    let mut path = vec![x];
    path.extend(root_path(&parent, leaf));
    ElementaryMove::path(path)
}

/// A valid sequence taking `f0` to some configuration supported on
/// `target_support`. Labels land wherever the construction puts them.
pub fn relocate(f0: &Configuration, target_support: &VertexSet) -> Result<MoveSequence, PlanError> {
    let g = f0.graph();
    let bad = || PlanError::BadSupport { support: target_support.iter().copied().collect(), expected: f0.k() };
    if target_support.len() != f0.k()
        || !target_support.iter().all(|&v| g.contains_vertex(v))
        || !g.is_connected_subset(target_support)
    {
        return Err(bad());
    }
    let mut current = f0.clone();
    let mut moves = Vec::new();
    loop {
        let support = current.occupied();
        if &support == target_support {
            break;
        }
        let m = relocation_step(g, &support, target_support);
        current = apply_unchecked(&current, &m);
        moves.push(m);
    }
    Ok(MoveSequence::new(f0.clone(), moves))
}

/// `f ∘ π` for a permutation of the occupied set.
pub fn permuted(f0: &Configuration, pi: &VertexPermutation) -> Result<Configuration, PlanError> {
    let support = f0.occupied();
    let outside: Vec<Vertex> = pi.support().into_iter().filter(|v| !support.contains(v)).collect();
    if !outside.is_empty() {
        return Err(PlanError::OutsideSupport { outside });
    }
    let mut labels = f0.label_table().to_vec();
    for v in pi.support() {
        labels[v] = f0.label(pi.apply(v));
    }
    Ok(Configuration::from_parts(f0.graph_arc().clone(), labels, f0.k()))
}

/// A shortest valid sequence from `f0` to `f0 ∘ pi`, by exhaustive search.
pub fn realize(f0: &Configuration, pi: &VertexPermutation, max_states: usize) -> Result<MoveSequence, PlanError> {
    realize_with(f0, pi, SearchOptions::with_budget(max_states))
}

pub fn realize_with(
    f0: &Configuration,
    pi: &VertexPermutation,
    options: SearchOptions,
) -> Result<MoveSequence, PlanError> {
    let target = permuted(f0, pi)?;
    shortest_plan_with(f0, &target, options)?.ok_or(PlanError::NotInGroup)
}
