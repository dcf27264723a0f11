//! Graph generators and the analyzer-versus-oracle comparison harness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{make_config, Configuration};
use crate::error::SearchError;
use crate::fixtures;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle::{explore_with, SearchOptions};
use crate::perm::{Factor, GroupDescriptor, Parity, VertexPermutation};
use crate::wilson::wilson_group;

/// Index of the pair `i < j` (0-based) in a strict upper triangle.
fn pair_bit(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

fn to_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_bit(i, j) & 1 == 1 {
                edges.push((i + 1, j + 1));
            }
        }
    }
    Graph::new(n, edges).expect("generated graphs are connected")
}

/// Smallest relabelled edge mask over all vertex orders.
fn canonical(n: usize, mask: u64, perms: &[Vec<usize>]) -> u64 {
    let pairs: Vec<(usize, usize)> =
        (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|&(i, j)| mask >> pair_bit(i, j) & 1 == 1).collect();
    perms
        .iter()
        .map(|p| {
            pairs.iter().fold(0u64, |acc, &(i, j)| {
                let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                acc | 1 << pair_bit(a, b)
            })
        })
        .min()
        .unwrap_or(0)
}

/// One representative of every isomorphism class of connected graphs on `n`
/// vertices, `1 <= n <= 8`. Built by attaching a new vertex to every
/// connected graph on `n - 1` vertices; every connected graph has a vertex
/// whose removal keeps it connected, so nothing is missed.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "generation is limited to n <= 8");
    let mut classes: BTreeSet<u64> = BTreeSet::from([0]);
    for m in 2..=n {
        let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
        let mut next = BTreeSet::new();
        for &mask in &classes {
            for nbrs in 1u64..(1 << (m - 1)) {
                let mut grown = mask;
                for i in 0..m - 1 {
                    if nbrs >> i & 1 == 1 {
                        grown |= 1 << pair_bit(i, m - 1);
                    }
                }
                next.insert(canonical(m, grown, &perms));
            }
        }
        classes = next;
    }
    classes.into_iter().enumerate().map(|(i, mask)| to_graph(n, mask).with_name(&format!("n{n}g{i}"))).collect()
}

pub fn trees(n: usize) -> Vec<Graph> {
    connected_graphs(n).into_iter().filter(|g| g.edge_count() + 1 == n).collect()
}

/// Every `k`-subset of the vertices inducing a connected subgraph, in
/// lexicographic order.
pub fn connected_supports(g: &Graph, k: usize) -> Vec<VertexSet> {
    g.vertices()
        .combinations(k)
        .map(|c| c.into_iter().collect::<VertexSet>())
        .filter(|s| g.is_connected_subset(s))
        .collect()
}

/// A random cactus: starting from one vertex, repeatedly hang a pendant edge
/// or a new cycle off a random existing vertex.
pub fn random_cactus(rng: &mut impl Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let anchor = rng.gen_range(1..=count);
        let room = n - count;
        if room >= 2 && rng.gen_bool(0.6) {
            let len = rng.gen_range(3..=room + 1);
            let mut prev = anchor;
            for _ in 1..len {
                count += 1;
                edges.push((prev, count));
                prev = count;
            }
            edges.push((prev, anchor));
        } else {
            count += 1;
            edges.push((anchor, count));
        }
    }
    Graph::new(n, edges).expect("cacti are connected")
}

/// A random connected graph with exactly one cycle, of length `3..=n`.
pub fn random_unicyclic(rng: &mut impl Rng, n: usize) -> Graph {
    assert!(n >= 3);
    let len = rng.gen_range(3..=n);
    let mut edges: Vec<(Vertex, Vertex)> = (1..=len).map(|i| (i, i % len + 1)).collect();
    for v in len + 1..=n {
        edges.push((rng.gen_range(1..v), v));
    }
    Graph::new(n, edges).expect("unicyclic graphs are connected")
}

/// A random connected graph: a random spanning tree plus each remaining pair
/// as an edge with probability `extra`.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: f64) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 2..=n {
        edges.insert((rng.gen_range(1..v), v));
    }
    for v in 2..=n {
        for u in 1..v {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.insert((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("spanning tree keeps it connected")
}

/// A random connected support of size `k`, grown one neighbour at a time.
pub fn random_support(rng: &mut impl Rng, g: &Graph, k: usize) -> VertexSet {
    let mut set = VertexSet::from([rng.gen_range(1..=g.vertex_count())]);
    while set.len() < k {
        let frontier: Vec<Vertex> = set
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|w| !set.contains(w))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        set.insert(frontier[rng.gen_range(0..frontier.len())]);
    }
    set
}

/// A random configuration with `k` robots and shuffled labels.
pub fn random_configuration(rng: &mut impl Rng, g: &Arc<Graph>, k: usize) -> Configuration {
    let support = random_support(rng, g, k);
    let mut labels: Vec<usize> = (1..=k).collect();
    labels.shuffle(rng);
    make_config(g, support.into_iter().zip(labels)).expect("support is connected")
}

fn random_perm_of(rng: &mut impl Rng, vs: &[Vertex]) -> VertexPermutation {
    let mut image = vs.to_vec();
    image.shuffle(rng);
    VertexPermutation::from_pairs(vs.iter().copied().zip(image)).expect("shuffle is a bijection")
}

/// A uniformly random element of the label action of `d` (empty vertices fixed).
pub fn random_element(rng: &mut impl Rng, d: &GroupDescriptor) -> VertexPermutation {
    let mut out = VertexPermutation::identity();
    for factor in d.factors() {
        let p = match factor {
            Factor::Symmetric(s) => random_perm_of(rng, &s.iter().copied().collect::<Vec<_>>()),
            Factor::Alternating(s) => {
                let vs: Vec<Vertex> = s.iter().copied().collect();
                let p = random_perm_of(rng, &vs);
                if p.parity() == Parity::Even {
                    p
                } else {
                    p.compose(&VertexPermutation::transposition(vs[0], vs[1]))
                }
            }
            Factor::Cyclic(c) => {
                let shift = rng.gen_range(0..c.len());
                VertexPermutation::from_pairs((0..c.len()).map(|i| (c[i], c[(i + shift) % c.len()])))
                    .expect("rotation is a bijection")
            }
        };
        out = out.compose(&p);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ExhaustiveSaturated,
    Fixtures,
    RandomCacti,
    RandomUnicyclic,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::ExhaustiveSaturated, Family::Fixtures, Family::RandomCacti, Family::RandomUnicyclic];

    pub fn name(self) -> &'static str {
        match self {
            Family::ExhaustiveSaturated => "exhaustive-saturated",
            Family::Fixtures => "fixtures",
            Family::RandomCacti => "random-cacti",
            Family::RandomUnicyclic => "random-unicyclic",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Random instances per vertex count in the random families.
pub const RANDOM_PER_SIZE: usize = 4;

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub config: Configuration,
}

fn saturated(g: Graph) -> Instance {
    let name = format!("{} sat", g.name());
    Instance { name, config: Configuration::saturated(&Arc::new(g)) }
}

fn on(g: Graph, support: &[Vertex]) -> Instance {
    let set: VertexSet = support.iter().copied().collect();
    let name = format!("{} {:?}", g.name(), support);
    Instance { name, config: Configuration::from_support(&Arc::new(g), &set).expect("curated supports are valid") }
}

/// The non-saturated instances with a known label group.
pub fn curated_nonsaturated() -> Vec<Instance> {
    vec![
        on(fixtures::spider(), &[1, 2, 3]),
        on(fixtures::pendant4(), &[1, 2, 3]),
        on(fixtures::theta5_pendant(), &[1, 2, 3, 4, 5]),
        on(fixtures::p5(), &[1, 2, 3]),
        on(fixtures::star4(), &[1, 2]),
        on(fixtures::tree7(), &[2, 4, 5]),
        on(fixtures::g12(), &[1, 2, 7, 8, 11]),
        on(fixtures::tri_sq_pendant(), &[1, 2, 3, 4, 5, 6]),
    ]
}

pub fn instances(family: Family, max_n: usize, seed: u64) -> Vec<Instance> {
    match family {
        Family::ExhaustiveSaturated => (1..=max_n.min(8)).flat_map(connected_graphs).map(saturated).collect(),
        Family::Fixtures => {
            let mut out: Vec<Instance> =
                fixtures::all().into_iter().filter(|g| g.vertex_count() <= max_n).map(saturated).collect();
            out.extend(curated_nonsaturated().into_iter().filter(|i| i.config.graph().vertex_count() <= max_n));
            out
        }
        Family::RandomCacti | Family::RandomUnicyclic => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            for n in 3..=max_n {
                for i in 0..RANDOM_PER_SIZE {
                    let g = match family {
                        Family::RandomCacti => random_cactus(&mut rng, n),
                        _ => random_unicyclic(&mut rng, n),
                    };
                    let name = format!("{}-n{n}-{i}", family.name());
                    out.push(saturated(g.with_name(&name)));
                }
            }
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Match,
    Mismatch,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Match => "MATCH",
            Outcome::Mismatch => "MISMATCH",
            Outcome::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub instance: String,
    pub descriptor: String,
    pub predicted: BigUint,
    pub oracle: Option<BigUint>,
    pub outcome: Outcome,
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let oracle = self.oracle.as_ref().map_or("-".to_string(), |o| o.to_string());
        write!(
            f,
            "{}\tpredicted {}\toracle {}\t{}\t{}",
            self.instance, self.predicted, oracle, self.outcome, self.descriptor
        )
    }
}

/// Compares the predicted label-group order with the exhaustive one.
pub fn check(instance: &Instance, options: SearchOptions) -> Row {
    let d = wilson_group(&instance.config);
    let predicted = d.label_order();
    let (oracle, outcome) = match explore_with(&instance.config, options) {
        Ok(space) => {
            let found = BigUint::from(space.label_group().len());
            let outcome = if found == predicted { Outcome::Match } else { Outcome::Mismatch };
            (Some(found), outcome)
        }
        Err(SearchError::BudgetExceeded { .. }) => (None, Outcome::Skipped),
        Err(e) => panic!("instances are well-formed: {e}"),
    };
    Row { instance: instance.name.clone(), descriptor: d.to_string(), predicted, oracle, outcome }
}

pub fn run(family: Family, max_n: usize, seed: u64, options: SearchOptions) -> Vec<Row> {
    instances(family, max_n, seed).iter().map(|i| check(i, options)).collect()
}

/// Row counts per outcome.
pub fn tally(rows: &[Row]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for r in rows {
        *out.entry(r.outcome.to_string()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        // connected graphs up to isomorphism: OEIS A001349
        let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
        let tree_counts: Vec<usize> = (1..=7).map(|n| trees(n).len()).collect();
        assert_eq!(tree_counts, vec![1, 1, 1, 2, 3, 6, 11]);
    }

    #[test]
    fn supports() {
        let p5 = fixtures::p5();
        assert_eq!(connected_supports(&p5, 3).len(), 3);
        assert_eq!(connected_supports(&fixtures::c5(), 2).len(), 5);
        assert_eq!(connected_supports(&fixtures::star4(), 2).len(), 3);
    }

    #[test]
    fn random_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=12 {
            let g = random_unicyclic(&mut rng, n);
            assert_eq!(g.edge_count(), n);
            let c = random_cactus(&mut rng, n);
            assert_eq!(c.vertex_count(), n);
            // cactus: every biconnected part is an edge or a cycle
            let all: VertexSet = c.vertices().collect();
            for (part, edges) in c.biconnected_parts(&all) {
                assert!(edges == 1 || edges == part.len());
            }
        }
    }

    #[test]
    fn random_elements_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in [fixtures::bowtie(), fixtures::pendant4(), fixtures::tri_sq()] {
            let d = wilson_group(&Configuration::saturated(&Arc::new(g)));
            for _ in 0..50 {
                assert!(d.contains(&random_element(&mut rng, &d)));
            }
        }
        for _ in 0..50 {
            let g = Arc::new(random_connected_graph(&mut rng, 6, 0.3));
            let c = random_configuration(&mut rng, &g, 4);
            assert!(g.is_connected_subset(&c.occupied()));
        }
    }

    #[test]
    fn deterministic_instances() {
        let a: Vec<String> = instances(Family::RandomCacti, 9, 7)
            .iter()
            .map(|i| format!("{:?}", i.config.graph().edges().collect::<Vec<_>>()))
            .collect();
        let b: Vec<String> = instances(Family::RandomCacti, 9, 7)
            .iter()
            .map(|i| format!("{:?}", i.config.graph().edges().collect::<Vec<_>>()))
            .collect();
        assert_eq!(a, b);
    }
}
