//! Finite simple connected graphs over dense vertex ids `1..=n`, plus the
//! structural decompositions the group analysis consumes: bridges,
//! edge-blocks (2-edge-connected classes), the block tree, vertex-biconnected
//! components and direction components.

use std::collections::{BTreeSet, VecDeque};

use crate::error::GraphError;

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// Undirected edge stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    name: String,
    n: usize,
    edges: BTreeSet<Edge>,
    // adj[v] sorted ascending; adj[0] unused
    adj: Vec<Vec<Vertex>>,
    matrix: Vec<bool>,
}

impl PartialEq for Graph {
    /// Structural equality; the display name is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Validates and builds a graph. Errors carry `line: 0` since there is no
    /// source text; the `.wg` parser reports real line numbers itself.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph, GraphError> {
        Graph::named("", n, edges)
    }

    pub fn named(name: &str, n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::MalformedLine { line: 0, text: "vertex count must be positive".into() });
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange { line: 0, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line: 0, vertex: u });
            }
            if !set.insert(edge(u, v)) {
                return Err(GraphError::DuplicateEdge { line: 0, u, v });
            }
        }
        let g = Graph::build(name, n, set);
        let reach = g.component_of(1, |_| true);
        if reach.len() != n {
            let unreachable = (1..=n).filter(|v| !reach.contains(v)).collect();
            return Err(GraphError::Disconnected { unreachable });
        }
        Ok(g)
    }

    fn build(name: &str, n: usize, edges: BTreeSet<Edge>) -> Graph {
        let mut adj = vec![Vec::new(); n + 1];
        let mut matrix = vec![false; (n + 1) * (n + 1)];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
            matrix[u * (n + 1) + v] = true;
            matrix[v * (n + 1) + u] = true;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { name: name.to_string(), n, edges, adj, matrix }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Graph {
        self.name = name.to_string();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.contains_vertex(u) && self.contains_vertex(v) && self.matrix[u * (self.n + 1) + v]
    }

    /// Vertices reachable from `start` while staying inside `keep`.
    pub(crate) fn component_of(&self, start: Vertex, keep: impl Fn(Vertex) -> bool) -> VertexSet {
        let mut seen = vec![false; self.n + 1];
        let mut out = VertexSet::new();
        if !keep(start) {
            return out;
        }
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            out.insert(u);
            for &w in &self.adj[u] {
                if !seen[w] && keep(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Whether `set` is non-empty and induces a connected subgraph.
    pub fn is_connected_subset(&self, set: &VertexSet) -> bool {
        match set.iter().next() {
            None => false,
            Some(&start) => self.component_of(start, |v| set.contains(&v)).len() == set.len(),
        }
    }

    /// Same as [`Graph::is_connected_subset`] for a membership mask indexed by vertex.
    pub(crate) fn is_connected_mask(&self, mask: &[bool]) -> bool {
        let total = mask.iter().filter(|&&b| b).count();
        match (1..=self.n).find(|&v| mask[v]) {
            None => false,
            Some(start) => self.component_of(start, |v| mask[v]).len() == total,
        }
    }

    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.edges.len() == self.n && self.vertices().all(|v| self.degree(v) == 2)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && self.vertices().all(|v| self.degree(v) <= 2)
    }

    /// Edges whose removal disconnects the graph (iterative lowlink DFS).
    pub fn find_bridges(&self) -> BTreeSet<Edge> {
        let n = self.n;
        let mut disc = vec![0usize; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut bridges = BTreeSet::new();
        let mut timer = 1;
        for root in 1..=n {
            if disc[root] != 0 {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            // (vertex, parent, next neighbor index)
            let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, 0, 0)];
            while let Some(top) = stack.last_mut() {
                let (u, parent, idx) = *top;
                if idx < self.adj[u].len() {
                    top.2 += 1;
                    let w = self.adj[u][idx];
                    if w == parent {
                        continue;
                    }
                    if disc[w] == 0 {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, u, 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != 0 {
                        low[parent] = low[parent].min(low[u]);
                        if low[u] > disc[parent] {
                            bridges.insert(edge(parent, u));
                        }
                    }
                }
            }
        }
        bridges
    }

    /// Partition into edge-blocks: components after deleting every bridge.
    /// Blocks are ordered by their smallest vertex.
    pub fn edge_blocks(&self) -> EdgeBlockPartition {
        let bridges = self.find_bridges();
        let mut block_of = vec![usize::MAX; self.n + 1];
        let mut blocks = Vec::new();
        for v in 1..=self.n {
            if block_of[v] != usize::MAX {
                continue;
            }
            let comp = self.component_of_without(v, &bridges);
            for &u in &comp {
                block_of[u] = blocks.len();
            }
            blocks.push(comp);
        }
        EdgeBlockPartition { blocks, bridges, block_of }
    }

    fn component_of_without(&self, start: Vertex, removed: &BTreeSet<Edge>) -> VertexSet {
        let mut seen = vec![false; self.n + 1];
        let mut out = VertexSet::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            out.insert(u);
            for &w in &self.adj[u] {
                if !seen[w] && !removed.contains(&edge(u, w)) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Contract every edge-block to a node; tree edges are the bridges.
    pub fn block_tree(&self, partition: &EdgeBlockPartition) -> BlockTree {
        let edges = partition
            .bridges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (partition.block_of[u], partition.block_of[v]);
                let (a, b, bridge) = if a <= b { (a, b, (u, v)) } else { (b, a, (u, v)) };
                BlockTreeEdge { a, b, bridge }
            })
            .collect();
        BlockTree { node_count: partition.blocks.len(), edges }
    }

    /// Vertex-biconnected components of the subgraph induced by `block`,
    /// each sorted, the list ordered by smallest vertex.
    pub fn biconnected_components(&self, block: &VertexSet) -> Vec<VertexSet> {
        self.biconnected_parts(block).into_iter().map(|(vs, _)| vs).collect()
    }

    /// Biconnected components of `G[block]` together with their edge counts.
    pub(crate) fn biconnected_parts(&self, block: &VertexSet) -> Vec<(VertexSet, usize)> {
        let n = self.n;
        let inside = |v: Vertex| block.contains(&v);
        let mut disc = vec![0usize; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut timer = 1;
        let mut parts: Vec<(VertexSet, usize)> = Vec::new();
        let mut edge_stack: Vec<Edge> = Vec::new();
        for &root in block {
            if disc[root] != 0 {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut isolated = true;
            let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, 0, 0)];
            while let Some(top) = stack.last_mut() {
                let (u, parent, idx) = *top;
                if idx < self.adj[u].len() {
                    top.2 += 1;
                    let w = self.adj[u][idx];
                    if !inside(w) || w == parent {
                        continue;
                    }
                    isolated = false;
                    if disc[w] == 0 {
                        edge_stack.push(edge(u, w));
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, u, 0));
                    } else if disc[w] < disc[u] {
                        edge_stack.push(edge(u, w));
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != 0 {
                        low[parent] = low[parent].min(low[u]);
                        if low[u] >= disc[parent] {
                            let target = edge(parent, u);
                            let mut vs = VertexSet::new();
                            let mut count = 0;
                            while let Some(e) = edge_stack.pop() {
                                vs.insert(e.0);
                                vs.insert(e.1);
                                count += 1;
                                if e == target {
                                    break;
                                }
                            }
                            parts.push((vs, count));
                        }
                    }
                }
            }
            if isolated {
                parts.push((VertexSet::from([root]), 0));
            }
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        parts
    }

    /// Vertex set of the component of `G - pivot` containing `toward`.
    pub fn direction_component(&self, pivot: Vertex, toward: Vertex) -> Result<VertexSet, GraphError> {
        if !self.adjacent(pivot, toward) {
            return Err(GraphError::NotAdjacent { pivot, toward });
        }
        Ok(self.component_of(toward, |v| v != pivot))
    }

    /// Shortest path between two vertex sets, as the vertex list from a vertex
    /// of `from` to a vertex of `to`. Ties resolve towards smaller ids.
    pub(crate) fn geodesic(&self, from: &VertexSet, to: &VertexSet) -> Option<Vec<Vertex>> {
        let mut prev = vec![usize::MAX; self.n + 1];
        let mut queue = VecDeque::new();
        for &s in from {
            prev[s] = 0;
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            if to.contains(&u) {
                let mut path = vec![u];
                let mut cur = u;
                while prev[cur] != 0 {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.adj[u] {
                if prev[w] == usize::MAX {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBlockPartition {
    pub blocks: Vec<VertexSet>,
    pub bridges: BTreeSet<Edge>,
    /// Indexed by vertex; entry 0 is unused.
    pub block_of: Vec<usize>,
}

impl EdgeBlockPartition {
    pub fn block_of(&self, v: Vertex) -> usize {
        self.block_of[v]
    }

    pub fn is_bridge(&self, u: Vertex, v: Vertex) -> bool {
        self.bridges.contains(&edge(u, v))
    }

    /// Edges of `g` with both endpoints in block `i`.
    pub fn internal_edge_count(&self, g: &Graph, i: usize) -> usize {
        g.edges().filter(|&(u, v)| self.block_of[u] == i && self.block_of[v] == i).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockTreeEdge {
    pub a: usize,
    pub b: usize,
    pub bridge: Edge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    pub node_count: usize,
    pub edges: Vec<BlockTreeEdge>,
}

impl BlockTree {
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.node_count {
            return false;
        }
        let mut adj = vec![Vec::new(); self.node_count];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.node_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(vs: &[Vertex]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop { vertex: 1, .. })));
        assert!(matches!(Graph::new(3, [(1, 2), (2, 1), (2, 3)]), Err(GraphError::DuplicateEdge { .. })));
        assert!(matches!(Graph::new(3, [(1, 4)]), Err(GraphError::VertexOutOfRange { vertex: 4, .. })));
        assert_eq!(Graph::new(4, [(1, 2), (3, 4)]), Err(GraphError::Disconnected { unreachable: vec![3, 4] }));
        assert!(Graph::new(1, []).is_ok());
    }

    #[test]
    fn bridges_of_fixtures() {
        assert!(fixtures::c5().find_bridges().is_empty());
        assert_eq!(fixtures::p5().find_bridges().len(), 4);
        assert_eq!(fixtures::pendant4().find_bridges(), BTreeSet::from([(3, 4)]));
    }

    #[test]
    fn bridges_match_deletion_check() {
        // every graph on 5 labelled vertices that happens to be connected
        let pairs: Vec<Edge> = (1..=5).flat_map(|u| (u + 1..=5).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let es: Vec<Edge> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let Ok(g) = Graph::new(5, es.clone()) else { continue };
            let brute: BTreeSet<Edge> = es
                .iter()
                .copied()
                .filter(|&e| Graph::new(5, es.iter().copied().filter(|&f| f != e)).is_err())
                .collect();
            assert_eq!(g.find_bridges(), brute, "{es:?}");
        }
    }

    #[test]
    fn edge_blocks_of_fixtures() {
        let bowtie = fixtures::bowtie().edge_blocks();
        assert_eq!(bowtie.blocks, vec![set(&[1, 2, 3, 4, 5])]);
        let p3 = fixtures::p3().edge_blocks();
        assert_eq!(p3.blocks, vec![set(&[1]), set(&[2]), set(&[3])]);
        assert_eq!(p3.bridges, BTreeSet::from([(1, 2), (2, 3)]));
        let pendant = fixtures::pendant4().edge_blocks();
        assert_eq!(pendant.blocks, vec![set(&[1, 2, 3]), set(&[4])]);
        assert_eq!(pendant.bridges, BTreeSet::from([(3, 4)]));
    }

    #[test]
    fn block_trees() {
        let g = fixtures::pendant4();
        let t = g.block_tree(&g.edge_blocks());
        assert_eq!(t.node_count, 2);
        assert_eq!(t.edges, vec![BlockTreeEdge { a: 0, b: 1, bridge: (3, 4) }]);
        let g = fixtures::c5();
        let t = g.block_tree(&g.edge_blocks());
        assert_eq!((t.node_count, t.edges.len()), (1, 0));
        let g = fixtures::p5();
        let t = g.block_tree(&g.edge_blocks());
        assert_eq!((t.node_count, t.edges.len()), (5, 4));
        assert!(t.is_tree());
    }

    #[test]
    fn biconnected() {
        let g = fixtures::bowtie();
        assert_eq!(g.biconnected_components(&set(&[1, 2, 3, 4, 5])), vec![set(&[1, 2, 3]), set(&[3, 4, 5])]);
        let g = fixtures::theta5();
        assert_eq!(g.biconnected_components(&set(&[1, 2, 3, 4, 5])), vec![set(&[1, 2, 3, 4, 5])]);
        assert_eq!(g.biconnected_components(&set(&[4])), vec![set(&[4])]);
        let g = fixtures::tri_sq();
        let parts = g.biconnected_parts(&set(&[1, 2, 3, 4, 5, 6]));
        assert_eq!(parts, vec![(set(&[1, 2, 3]), 3), (set(&[3, 4, 5, 6]), 4)]);
    }

    #[test]
    fn directions() {
        assert_eq!(fixtures::p5().direction_component(3, 4).unwrap(), set(&[4, 5]));
        assert_eq!(fixtures::c5().direction_component(1, 2).unwrap(), set(&[2, 3, 4, 5]));
        assert_eq!(fixtures::spider().direction_component(1, 2).unwrap(), set(&[2, 3]));
        assert_eq!(fixtures::p5().direction_component(1, 3), Err(GraphError::NotAdjacent { pivot: 1, toward: 3 }));
    }

    #[test]
    fn shapes() {
        assert!(fixtures::c5().is_cycle());
        assert!(!fixtures::c5().is_path());
        assert!(fixtures::p5().is_path());
        assert!(fixtures::star4().is_tree());
        assert!(!fixtures::star4().is_path());
    }
}
