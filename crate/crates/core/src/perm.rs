//! Vertex permutations and the symbolic product groups that describe Wilson
//! groups.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::graph::{Vertex, VertexSet};

/// A bijection on vertex ids with finite support. Fixed points are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPermutation {
    map: BTreeMap<Vertex, Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl VertexPermutation {
    pub fn identity() -> VertexPermutation {
        VertexPermutation::default()
    }

    /// Builds a permutation from `(v, image)` pairs; pairs with `v == image`
    /// may be included or omitted. Returns `None` if the pairs are not a bijection.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Option<VertexPermutation> {
        let mut map = BTreeMap::new();
        for (v, w) in pairs {
            if map.insert(v, w).is_some() {
                return None;
            }
        }
        let mut images: Vec<Vertex> = map.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != map.len() || images.iter().any(|w| !map.contains_key(w)) {
            return None;
        }
        map.retain(|v, w| v != w);
        Some(VertexPermutation { map })
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[r-1] -> c[0]`.
    pub fn cycle(c: &[Vertex]) -> VertexPermutation {
        let r = c.len();
        let pairs = (0..r).map(|i| (c[i], c[(i + 1) % r]));
        VertexPermutation::from_pairs(pairs).expect("cycle vertices must be distinct")
    }

    pub fn from_cycles(cycles: &[&[Vertex]]) -> VertexPermutation {
        cycles.iter().fold(VertexPermutation::identity(), |acc, c| acc.compose(&VertexPermutation::cycle(c)))
    }

    pub fn transposition(a: Vertex, b: Vertex) -> VertexPermutation {
        VertexPermutation::cycle(&[a, b])
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.map.get(&v).copied().unwrap_or(v)
    }

    /// `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        let mut keys: VertexSet = self.map.keys().copied().collect();
        keys.extend(other.map.keys().copied());
        let map = keys.into_iter().map(|v| (v, self.apply(other.apply(v)))).filter(|(v, w)| v != w).collect();
        VertexPermutation { map }
    }

    pub fn inverse(&self) -> VertexPermutation {
        VertexPermutation { map: self.map.iter().map(|(&v, &w)| (w, v)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Vertices moved by the permutation.
    pub fn support(&self) -> VertexSet {
        self.map.keys().copied().collect()
    }

    /// Non-trivial cycles, each starting at its smallest vertex, ordered by that vertex.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut c = vec![start];
            seen.insert(start);
            let mut cur = self.apply(start);
            while cur != start {
                seen.insert(cur);
                c.push(cur);
                cur = self.apply(cur);
            }
            out.push(c);
        }
        out
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Conjugate `sigma ∘ self ∘ sigma⁻¹`.
    pub fn conjugate_by(&self, sigma: &VertexPermutation) -> VertexPermutation {
        sigma.compose(self).compose(&sigma.inverse())
    }
}

impl fmt::Display for VertexPermutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// Rotations of the listed vertices; the list order is the generating rotation.
    Cyclic(Vec<Vertex>),
    Alternating(VertexSet),
    Symmetric(VertexSet),
}

impl Factor {
    pub fn support(&self) -> VertexSet {
        match self {
            Factor::Cyclic(c) => c.iter().copied().collect(),
            Factor::Alternating(s) | Factor::Symmetric(s) => s.clone(),
        }
    }

    pub fn order(&self) -> BigUint {
        match self {
            Factor::Cyclic(c) => BigUint::from(c.len()),
            Factor::Alternating(s) => factorial(s.len()) / 2u32,
            Factor::Symmetric(s) => factorial(s.len()),
        }
    }

    fn min_vertex(&self) -> Vertex {
        self.support().into_iter().next().unwrap_or(0)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Cyclic(c) => write!(f, "Cyclic[{}]", join(c.iter(), ">")),
            Factor::Alternating(s) => write!(f, "Alt{{{}}}", join(s.iter(), ",")),
            Factor::Symmetric(s) => write!(f, "Sym{{{}}}", join(s.iter(), ",")),
        }
    }
}

fn join<'a>(it: impl Iterator<Item = &'a Vertex>, sep: &str) -> String {
    it.map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

/// A direct product of cyclic, alternating and symmetric factors on disjoint
/// vertex sets, with the full symmetric group on the empty vertices kept as a
/// separate field. Every vertex of the graph is in exactly one factor, in
/// `fixed`, or in `empty_support`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    factors: Vec<Factor>,
    fixed: VertexSet,
    empty_support: VertexSet,
}

impl GroupDescriptor {
    /// Normalizes degenerate factors (cyclic on fewer than 3, symmetric on
    /// fewer than 2, alternating on fewer than 3 vertices) into fixed points
    /// and sorts factors by smallest vertex.
    pub fn new(factors: Vec<Factor>, fixed: VertexSet, empty_support: VertexSet) -> GroupDescriptor {
        let mut fixed = fixed;
        let mut kept = Vec::new();
        for factor in factors {
            let degenerate = match &factor {
                Factor::Cyclic(c) => c.len() < 3,
                Factor::Alternating(s) => s.len() < 3,
                Factor::Symmetric(s) => s.len() < 2,
            };
            if degenerate {
                fixed.extend(factor.support());
            } else {
                kept.push(factor);
            }
        }
        kept.sort_by_key(Factor::min_vertex);
        GroupDescriptor { factors: kept, fixed, empty_support }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn fixed(&self) -> &VertexSet {
        &self.fixed
    }

    pub fn empty_support(&self) -> &VertexSet {
        &self.empty_support
    }

    /// Full group order, including the `|V_∅|!` contributed by empty vertices.
    pub fn order(&self) -> BigUint {
        self.label_order() * factorial(self.empty_support.len())
    }

    /// Order of the action on labels, `order / |V_∅|!`.
    pub fn label_order(&self) -> BigUint {
        self.factors.iter().fold(BigUint::from(1u32), |acc, f| acc * f.order())
    }

    pub fn contains(&self, p: &VertexPermutation) -> bool {
        if p.support().iter().any(|v| self.fixed.contains(v)) {
            return false;
        }
        let stable = |set: &VertexSet| set.iter().all(|&v| set.contains(&p.apply(v)));
        if !stable(&self.empty_support) {
            return false;
        }
        let mut covered = self.empty_support.clone();
        for factor in &self.factors {
            let support = factor.support();
            if !stable(&support) {
                return false;
            }
            covered.extend(support.iter().copied());
            match factor {
                Factor::Symmetric(_) => {}
                Factor::Alternating(s) => {
                    let restricted =
                        VertexPermutation::from_pairs(s.iter().map(|&v| (v, p.apply(v)))).expect("stable set");
                    if restricted.parity() != Parity::Even {
                        return false;
                    }
                }
                Factor::Cyclic(c) => {
                    let r = c.len();
                    let target = p.apply(c[0]);
                    let shift = c.iter().position(|&v| v == target).expect("stable set");
                    if (0..r).any(|i| p.apply(c[i]) != c[(i + shift) % r]) {
                        return false;
                    }
                }
            }
        }
        // vertices outside every declared set must not move
        p.support().iter().all(|v| covered.contains(v))
    }

    /// Orbits of the action on vertices: factor supports, fixed singletons and
    /// the empty set as one orbit, ordered by smallest vertex.
    pub fn orbits(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self.factors.iter().map(Factor::support).collect();
        out.extend(self.fixed.iter().map(|&v| VertexSet::from([v])));
        if !self.empty_support.is_empty() {
            out.push(self.empty_support.clone());
        }
        out.sort();
        out
    }

    /// The image of the group under conjugation by `sigma`, i.e. the group
    /// `{ sigma ∘ g ∘ sigma⁻¹ }` with every support relabelled through `sigma`.
    pub fn conjugate_by(&self, sigma: &VertexPermutation) -> GroupDescriptor {
        let map_set = |s: &VertexSet| s.iter().map(|&v| sigma.apply(v)).collect::<VertexSet>();
        let factors = self
            .factors
            .iter()
            .map(|f| match f {
                Factor::Cyclic(c) => Factor::Cyclic(c.iter().map(|&v| sigma.apply(v)).collect()),
                Factor::Alternating(s) => Factor::Alternating(map_set(s)),
                Factor::Symmetric(s) => Factor::Symmetric(map_set(s)),
            })
            .collect();
        GroupDescriptor::new(factors, map_set(&self.fixed), map_set(&self.empty_support))
    }
}

impl fmt::Display for GroupDescriptor {
    /// Canonical form, e.g. `Cyclic[1>2>3>4>5] * Sym{∅:6,7}`; `Trivial` when
    /// there is nothing to print.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        if !self.empty_support.is_empty() {
            parts.push(format!("Sym{{∅:{}}}", join(self.empty_support.iter(), ",")));
        }
        if parts.is_empty() {
            f.write_str("Trivial")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}
