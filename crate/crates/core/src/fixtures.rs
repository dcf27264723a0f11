//! Named graphs used throughout the tests, the verification harness and the
//! shipped `.wg` files.

use crate::graph::{Graph, Vertex};

fn named(name: &str, n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::named(name, n, edges.iter().copied()).expect("fixture graphs are valid")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    named(&format!("P{n}"), n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
    named(&format!("C{n}"), n, &edges)
}

pub fn p3() -> Graph {
    path(3)
}

pub fn p5() -> Graph {
    path(5)
}

pub fn c5() -> Graph {
    cycle(5)
}

pub fn star4() -> Graph {
    named("STAR4", 4, &[(1, 2), (1, 3), (1, 4)])
}

pub fn spider() -> Graph {
    named("SPIDER", 7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)])
}

pub fn bowtie() -> Graph {
    named("BOWTIE", 5, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)])
}

pub fn tri_sq() -> Graph {
    named("TRI_SQ", 6, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 3)])
}

pub fn theta5() -> Graph {
    named("THETA5", 5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)])
}

pub fn pendant4() -> Graph {
    named("PENDANT4", 4, &[(1, 2), (2, 3), (3, 1), (3, 4)])
}

/// THETA5 with a pendant vertex 6 hanging off vertex 5.
pub fn theta5_pendant() -> Graph {
    named("THETA5_PENDANT", 6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3), (5, 6)])
}

/// TRI_SQ with a pendant vertex 7 hanging off vertex 6.
pub fn tri_sq_pendant() -> Graph {
    named("TRI_SQ_PENDANT", 7, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 3), (6, 7)])
}

/// Twelve-vertex workstation graph on which 5-8-7-2-1 and 7-8-11 are valid
/// moves for the standard configuration and 3-2-7 is not.
pub fn g12() -> Graph {
    named(
        "G12",
        12,
        &[(1, 2), (2, 7), (7, 8), (8, 5), (8, 11), (11, 7), (2, 3), (3, 4), (4, 9), (9, 10), (10, 12), (12, 6), (6, 5)],
    )
}

pub fn tree7() -> Graph {
    named("TREE7", 7, &[(2, 4), (3, 4), (4, 5), (3, 6), (1, 2), (6, 7)])
}

/// Every named fixture, in a fixed order.
pub fn all() -> Vec<Graph> {
    vec![
        p3(),
        p5(),
        c5(),
        star4(),
        spider(),
        bowtie(),
        tri_sq(),
        theta5(),
        pendant4(),
        theta5_pendant(),
        tri_sq_pendant(),
        g12(),
        tree7(),
    ]
}

pub fn by_name(name: &str) -> Option<Graph> {
    all().into_iter().find(|g| g.name().eq_ignore_ascii_case(name))
}
