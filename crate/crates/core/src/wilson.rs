//! Symbolic Wilson groups.
//!
//! Saturated configurations decompose over edge-blocks: a block that is a
//! cycle rotates, a weak block whose cycles are all odd gives the alternating
//! group, any other non-trivial block the symmetric group.
//!
//! Non-saturated configurations give a product of symmetric groups on the
//! exchange classes `C_v` times the symmetric group on the empty vertices.
//! Exchange classes are grown per block-tree node from the direction counts
//! `b_pivot(toward)` and then merged wherever they overlap.

use std::collections::BTreeMap;

use crate::config::Configuration;
use crate::error::{AnalysisError, ConfigError};
use crate::graph::{EdgeBlockPartition, Graph, Vertex, VertexSet};
use crate::perm::{Factor, GroupDescriptor, VertexPermutation};
use crate::planner;

/// Weakness of a non-singleton edge-block: every biconnected component is a
/// simple cycle, and whether all those cycles are odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weakness {
    pub is_weak: bool,
    pub all_odd: bool,
}

pub fn weakness(g: &Graph, block: &VertexSet) -> Weakness {
    let parts = g.biconnected_parts(block);
    let is_weak = parts.iter().all(|(vs, e)| vs.len() >= 3 && *e == vs.len());
    let all_odd = is_weak && parts.iter().all(|(vs, _)| vs.len() % 2 == 1);
    Weakness { is_weak, all_odd }
}

/// The cycle through every vertex of `block`, starting at its smallest vertex
/// and heading to the smaller neighbour, if the block is exactly a cycle.
fn block_as_cycle(g: &Graph, block: &VertexSet) -> Option<Vec<Vertex>> {
    if block.len() < 3 {
        return None;
    }
    let inner = |v: Vertex| g.neighbors(v).iter().copied().filter(|w| block.contains(w)).collect::<Vec<_>>();
    if block.iter().any(|&v| inner(v).len() != 2) {
        return None;
    }
    let start = *block.iter().next()?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = inner(start)[0];
    while cur != start {
        order.push(cur);
        let next = inner(cur).into_iter().find(|&w| w != prev)?;
        prev = cur;
        cur = next;
    }
    (order.len() == block.len()).then_some(order)
}

pub fn analyze_saturated(c: &Configuration) -> Result<GroupDescriptor, AnalysisError> {
    if !c.is_saturated() {
        return Err(AnalysisError::NotSaturated);
    }
    let g = c.graph();
    let partition = g.edge_blocks();
    let mut factors = Vec::new();
    let mut fixed = VertexSet::new();
    for block in &partition.blocks {
        if block.len() == 1 {
            fixed.extend(block.iter().copied());
        } else if let Some(cycle) = block_as_cycle(g, block) {
            factors.push(Factor::Cyclic(cycle));
        } else if weakness(g, block).all_odd {
            factors.push(Factor::Alternating(block.clone()));
        } else {
            factors.push(Factor::Symmetric(block.clone()));
        }
    }
    Ok(GroupDescriptor::new(factors, fixed, VertexSet::new()))
}

/// An exchange class contributed by one block-tree node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet {
    /// Index of the edge-block (block-tree node) the set is grown from.
    pub class: usize,
    pub set: VertexSet,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExchangeAnalysis {
    pub centers: Vec<ClassSet>,
    /// Overlap-closure of `centers`; ids are the smallest class merged in.
    pub merged: Vec<ClassSet>,
}

/// Occupied vertices reachable from `start` (entered from `from`) along
/// bridges through occupied vertices only, with their distance counted from
/// `from` (`start` is at distance 1).
fn occupied_bridge_chain(
    c: &Configuration,
    partition: &EdgeBlockPartition,
    from: Vertex,
    start: Vertex,
) -> Vec<(Vertex, usize)> {
    let g = c.graph();
    let mut out = Vec::new();
    if !c.is_occupied(start) {
        return out;
    }
    let mut stack = vec![(start, from, 1usize)];
    while let Some((x, prev, dist)) = stack.pop() {
        out.push((x, dist));
        for &y in g.neighbors(x) {
            if y != prev && c.is_occupied(y) && partition.is_bridge(x, y) {
                stack.push((y, x, dist + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exchange classes `C_[v]` of every block-tree node, dropping those with at
/// most one vertex.
///
/// A block containing a cycle seeds its class with its occupied vertices; an
/// occupied `x` hanging off block vertex `v1` through the bridge `v1 v2` at
/// distance `r` joins when `b_{v2}(v1) >= r`. A singleton block `{v}` of
/// degree at least 3 admits an occupied `x` at distance `d` behind neighbour
/// `u` when `b_u(v) >= d + 1`, and admits `v` itself when two of its branches
/// hold empty vertices.
pub fn compute_c_sets(c: &Configuration) -> Vec<ClassSet> {
    let g = c.graph();
    let partition = g.edge_blocks();
    let mut out = Vec::new();
    for (class, block) in partition.blocks.iter().enumerate() {
        let mut set = VertexSet::new();
        if block.len() > 1 {
            set.extend(block.iter().copied().filter(|&v| c.is_occupied(v)));
            for &v1 in block {
                if !c.is_occupied(v1) {
                    continue;
                }
                for &v2 in g.neighbors(v1) {
                    if !partition.is_bridge(v1, v2) {
                        continue;
                    }
                    let budget = c.empty_count_in_direction(v2, v1);
                    for (x, r) in occupied_bridge_chain(c, &partition, v1, v2) {
                        if budget >= r {
                            set.insert(x);
                        }
                    }
                }
            }
        } else {
            let v = *block.iter().next().expect("non-empty block");
            if g.degree(v) < 3 {
                continue;
            }
            if c.is_occupied(v) {
                let branches_with_empties =
                    g.neighbors(v).iter().filter(|&&u| c.empty_count_in_direction(v, u) > 0).count();
                if branches_with_empties >= 2 {
                    set.insert(v);
                }
            }
            for &u in g.neighbors(v) {
                let budget = c.empty_count_in_direction(u, v);
                for (x, d) in occupied_bridge_chain(c, &partition, v, u) {
                    // b_u(v) >= d + 1
                    if budget > d {
                        set.insert(x);
                    }
                }
            }
        }
        if set.len() >= 2 {
            out.push(ClassSet { class, set });
        }
    }
    out
}

/// Merges classes that share a vertex until all merged sets are disjoint.
pub fn merge_c_sets(sets: Vec<ClassSet>) -> ExchangeAnalysis {
    let m = sets.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..m {
        for j in i + 1..m {
            if !sets[i].set.is_disjoint(&sets[j].set) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, ClassSet> = BTreeMap::new();
    for i in 0..m {
        let root = find(&mut parent, i);
        let entry = groups.entry(root).or_insert_with(|| ClassSet { class: sets[root].class, set: VertexSet::new() });
        entry.class = entry.class.min(sets[i].class);
        entry.set.extend(sets[i].set.iter().copied());
    }
    let mut merged: Vec<ClassSet> = groups.into_values().collect();
    merged.sort_by(|a, b| a.set.cmp(&b.set));
    ExchangeAnalysis { centers: sets, merged }
}

pub fn exchange_analysis(c: &Configuration) -> ExchangeAnalysis {
    merge_c_sets(compute_c_sets(c))
}

pub fn analyze_nonsaturated(c: &Configuration) -> Result<GroupDescriptor, AnalysisError> {
    if c.is_saturated() {
        return Err(AnalysisError::Saturated);
    }
    let g = c.graph();
    let occupied = c.occupied();
    let empties = c.empties();
    if g.is_cycle() || g.is_path() {
        return Ok(GroupDescriptor::new(vec![], occupied, empties));
    }
    let partition = g.edge_blocks();
    if partition.blocks.len() == 1 {
        return Ok(GroupDescriptor::new(vec![Factor::Symmetric(occupied)], VertexSet::new(), empties));
    }
    let analysis = exchange_analysis(c);
    let mut fixed = occupied;
    let mut factors = Vec::new();
    for class in analysis.merged {
        for v in &class.set {
            fixed.remove(v);
        }
        factors.push(Factor::Symmetric(class.set));
    }
    Ok(GroupDescriptor::new(factors, fixed, empties))
}

pub fn wilson_group(c: &Configuration) -> GroupDescriptor {
    if c.is_saturated() {
        analyze_saturated(c).expect("saturated")
    } else {
        analyze_nonsaturated(c).expect("not saturated")
    }
}

pub fn orbits(d: &GroupDescriptor) -> Vec<VertexSet> {
    d.orbits()
}

/// Outcome of a reachability decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub reachable: bool,
    /// The permutation `π` with `target = (f0 ∘ σ) ∘ π`, where `σ` relocates
    /// `f0` onto the target support. Reported whether or not it is in the group.
    pub residual: VertexPermutation,
    /// The relocating movement `σ`.
    pub relocation: VertexPermutation,
    pub group: GroupDescriptor,
}

impl Decision {
    pub fn witness(&self) -> Option<&VertexPermutation> {
        self.reachable.then_some(&self.residual)
    }
}

/// Decides whether `target` can be reached from `f0`: relocate `f0` onto the
/// target support, then test whether the remaining relabelling lies in the
/// Wilson group at the target.
pub fn decide_reachable(f0: &Configuration, target: &Configuration) -> Result<Decision, ConfigError> {
    f0.check_compatible(target)?;
    let plan = planner::relocate(f0, &target.occupied()).expect("supports of equal size are always connected");
    let (moved, sigma) = plan.apply().expect("relocation plans replay");
    // target(v) = moved(π(v)), so π(v) is where moved keeps target's label
    let pairs = target.assignments().map(|(v, label)| (v, moved.position(label).expect("same label set")));
    let residual = VertexPermutation::from_pairs(pairs).expect("labels are a bijection");
    let group = wilson_group(target);
    Ok(Decision { reachable: group.contains(&residual), residual, relocation: sigma, group })
}
