//! The `.wg` text format for a graph with an optional configuration, and
//! plan files.
//!
//! ```text
//! graph STAR4
//! vertices 4
//! edge 1 2
//! edge 1 3
//! edge 1 4
//! config
//! occupy 1 1
//! occupy 2 2
//! end
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::config::{make_config, Configuration, Label};
use crate::error::{ConfigError, FormatError, GraphError};
use crate::graph::{edge, Graph, Vertex};
use crate::moves::{ElementaryMove, MoveSequence};

#[derive(Debug, Clone)]
pub struct WgFile {
    pub graph: Arc<Graph>,
    pub config: Option<Configuration>,
}

impl WgFile {
    pub fn require_config(&self) -> Result<&Configuration, FormatError> {
        self.config.as_ref().ok_or(FormatError::MissingConfig)
    }
}

fn malformed(line: usize, text: &str) -> FormatError {
    GraphError::MalformedLine { line, text: text.to_string() }.into()
}

/// Non-blank lines with comments stripped, numbered from 1.
fn directives(text: &str) -> impl Iterator<Item = (usize, &str, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then(|| (i + 1, raw.trim(), body.split_whitespace().collect()))
    })
}

fn number(line: usize, raw: &str, word: &str) -> Result<usize, FormatError> {
    word.parse().map_err(|_| malformed(line, raw))
}

pub fn parse_wg(text: &str) -> Result<WgFile, FormatError> {
    let mut name = String::new();
    let mut n: Option<usize> = None;
    let mut edges = BTreeSet::new();
    let mut occupy: Vec<(usize, Vertex, Label)> = Vec::new();
    let mut in_config = false;
    let mut has_config = false;
    let mut ended = false;
    let mut last_line = 0;
    for (line, raw, words) in directives(text) {
        last_line = line;
        if ended {
            return Err(malformed(line, raw));
        }
        match (words[0], words.len()) {
            ("graph", 2) if n.is_none() && name.is_empty() => name = words[1].to_string(),
            ("vertices", 2) if n.is_none() => {
                let count = number(line, raw, words[1])?;
                if count == 0 {
                    return Err(malformed(line, raw));
                }
                n = Some(count);
            }
            ("edge", 3) if !in_config => {
                let n = n.ok_or_else(|| malformed(line, raw))?;
                let (u, v) = (number(line, raw, words[1])?, number(line, raw, words[2])?);
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(GraphError::VertexOutOfRange { line, vertex: w, n }.into());
                    }
                }
                if u == v {
                    return Err(GraphError::SelfLoop { line, vertex: u }.into());
                }
                if !edges.insert(edge(u, v)) {
                    return Err(GraphError::DuplicateEdge { line, u, v }.into());
                }
            }
            ("config", 1) if n.is_some() && !has_config => {
                in_config = true;
                has_config = true;
            }
            ("occupy", 3) if in_config => {
                occupy.push((line, number(line, raw, words[1])?, number(line, raw, words[2])?));
            }
            ("end", 1) => {
                in_config = false;
                ended = true;
            }
            _ => return Err(malformed(line, raw)),
        }
    }
    let n = n.ok_or_else(|| malformed(last_line, "missing vertices directive"))?;
    let graph = Arc::new(Graph::named(&name, n, edges.iter().copied())?);
    if !has_config {
        return Ok(WgFile { graph, config: None });
    }
    // per-directive checks carry the line of the offending occupy
    let mut vertices = BTreeSet::new();
    let mut labels = BTreeSet::new();
    for &(line, v, l) in &occupy {
        let err = if !graph.contains_vertex(v) {
            Some(ConfigError::VertexOutOfRange { vertex: v, n })
        } else if !vertices.insert(v) {
            Some(ConfigError::DuplicateVertex { vertex: v })
        } else if !labels.insert(l) {
            Some(ConfigError::DuplicateLabel { label: l })
        } else {
            None
        };
        if let Some(source) = err {
            return Err(FormatError::Config { line, source });
        }
    }
    let config = make_config(&graph, occupy.iter().map(|&(_, v, l)| (v, l)))
        .map_err(|source| FormatError::Config { line: last_line, source })?;
    Ok(WgFile { graph, config: Some(config) })
}

pub fn write_graph(out: &mut String, g: &Graph) {
    let name = if g.name().is_empty() { "G" } else { g.name() };
    writeln!(out, "graph {name}").unwrap();
    writeln!(out, "vertices {}", g.vertex_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
}

pub fn write_wg(c: &Configuration) -> String {
    let mut out = String::new();
    write_graph(&mut out, c.graph());
    out.push_str("config\n");
    for (v, l) in c.assignments() {
        writeln!(out, "occupy {v} {l}").unwrap();
    }
    out.push_str("end\n");
    out
}

pub fn write_plan(plan: &MoveSequence) -> String {
    let name = plan.source.graph().name();
    let mut out = format!("plan {}\n", if name.is_empty() { "G" } else { name });
    for m in &plan.moves {
        writeln!(out, "{m}").unwrap();
    }
    out
}

/// Reads a plan file as a sequence starting at `source`. Moves are checked
/// for syntax only; replay them with [`MoveSequence::apply`].
pub fn parse_plan(text: &str, source: &Configuration) -> Result<MoveSequence, FormatError> {
    let mut moves = Vec::new();
    let mut header = false;
    for (line, raw, words) in directives(text) {
        if !header {
            if words.len() != 2 || words[0] != "plan" {
                return Err(malformed(line, raw));
            }
            let expected = source.graph().name();
            if !expected.is_empty() && words[1] != expected {
                return Err(FormatError::PlanGraphMismatch {
                    expected: expected.to_string(),
                    found: words[1].to_string(),
                });
            }
            header = true;
            continue;
        }
        let m: ElementaryMove = words.join(" ").parse().map_err(|source| FormatError::Move { line, source })?;
        moves.push(m);
    }
    if !header {
        return Err(malformed(0, "missing plan header"));
    }
    Ok(MoveSequence::new(source.clone(), moves))
}
