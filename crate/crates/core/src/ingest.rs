//! Edge-list ingestion and normalization to a connected simple graph.
//!
//! Accepted input: one edge per line, fields separated by whitespace or
//! commas, `#` and `%` comment lines, any columns after the second ignored.
//! A leading `% asym` header (KONECT convention) marks the source as directed;
//! direction is discarded either way.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::scaling_ratio;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Relabel};
use crate::resistance::{resistance_table, Method};
use crate::walks::{mc_graph_cover, WalkConfig};

/// How labels in an edge list are interpreted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    /// Labels must parse as non-negative integers.
    Integer,
    /// Any whitespace- and comma-free token.
    #[default]
    Token,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListFormat {
    pub labels: LabelKind,
}

/// Parsed but not yet cleaned edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdgeList {
    /// Original labels, indexed by dense id in first-appearance order.
    pub labels: Vec<String>,
    /// May contain self-loops and duplicates.
    pub edges: Vec<(NodeId, NodeId)>,
    pub directed: bool,
}

pub fn parse_edge_list(text: &str, format: EdgeListFormat) -> Result<RawEdgeList> {
    let mut ids: HashMap<&str, NodeId> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut directed = false;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('%') {
            if edges.is_empty() && rest.split_whitespace().next() == Some("asym") {
                directed = true;
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let mut fields = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|f| !f.is_empty());
        let (Some(a), Some(b)) = (fields.next(), fields.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two node labels, found {line:?}"),
            });
        };
        let mut pair = [0; 2];
        for (slot, token) in pair.iter_mut().zip([a, b]) {
            if format.labels == LabelKind::Integer && token.parse::<u64>().is_err() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("label {token:?} is not a non-negative integer"),
                });
            }
            let next = labels.len();
            let id = *ids.entry(token).or_insert(next);
            if id == next {
                labels.push(token.to_string());
            }
            *slot = id;
        }
        edges.push((pair[0], pair[1]));
    }
    if edges.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    Ok(RawEdgeList {
        labels,
        edges,
        directed,
    })
}

pub fn read_edge_list(path: impl AsRef<Path>, format: EdgeListFormat) -> Result<RawEdgeList> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text, format)
}

/// A normalized graph together with where its nodes came from.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub graph: Graph,
    /// Original label of each node of `graph`.
    pub labels: Vec<String>,
    /// Raw nodes outside the largest component (or left only with self-loops).
    pub dropped_nodes: usize,
    pub self_loops: usize,
}

/// Cleans a raw edge list into a connected simple graph: drops self-loops,
/// merges duplicate and reciprocal edges, keeps the largest component and
/// relabels it in breadth-first order from its smallest node.
///
/// Breadth-first labels make the written form canonical: re-reading the
/// output of [`write_edge_list`] assigns every node its current id again.
pub fn normalize_with_report(raw: &RawEdgeList) -> Result<Normalized> {
    let n = raw.labels.len();
    let self_loops = raw.edges.iter().filter(|(u, v)| u == v).count();
    let graph = Graph::from_edges(n, raw.edges.iter().copied().filter(|(u, v)| u != v))?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let (lcc, to_lcc) = graph.largest_connected_component();
    let (canonical, to_bfs) = bfs_relabel(&lcc);
    let relabel = to_lcc.then(&to_bfs);
    Ok(Normalized {
        labels: relabel
            .retained()
            .iter()
            .map(|&old| raw.labels[old].clone())
            .collect(),
        dropped_nodes: relabel.dropped(),
        graph: canonical,
        self_loops,
    })
}

pub fn normalize(raw: &RawEdgeList) -> Result<Graph> {
    normalize_with_report(raw).map(|n| n.graph)
}

fn bfs_relabel(g: &Graph) -> (Graph, Relabel) {
    let n = g.node_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    if n > 0 {
        seen[0] = true;
        order.push(0);
    }
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    g.induced(&order)
}

/// Normalized edge-list format: `#` header with `N` and `E`, then one
/// `u v` line per edge with `u < v`, ascending.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * g.edge_count() + 32);
    writeln!(out, "# N={} E={}", g.node_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// One row of dataset statistics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetReport {
    pub name: String,
    pub n: usize,
    pub e: usize,
    pub d_avg: f64,
    /// Hop diameter.
    pub delta: usize,
    /// Resistance diameter.
    pub r: f64,
    pub c_mc: f64,
    pub c_ci95: f64,
    pub worst_start: NodeId,
    pub ratio: f64,
}

impl DatasetReport {
    pub const CSV_HEADER: &'static str = "name,N,E,d_avg,delta,R,C_mc,ratio";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.2},{},{:.4},{:.2},{:.4}",
            self.name, self.n, self.e, self.d_avg, self.delta, self.r, self.c_mc, self.ratio
        )
    }
}

/// Structural, resistance and cover statistics of a normalized graph.
pub fn summarize(
    g: &Graph,
    name: &str,
    walk: &WalkConfig,
    method: Method,
) -> Result<DatasetReport> {
    let delta = g.hop_diameter()?;
    let table = resistance_table(g, method)?;
    let cover = mc_graph_cover(g, walk)?;
    Ok(DatasetReport {
        name: name.to_string(),
        n: g.node_count(),
        e: g.edge_count(),
        d_avg: g.average_degree(),
        delta,
        r: table.diameter(),
        c_mc: cover.worst.mean,
        c_ci95: cover.worst.ci95_halfwidth,
        worst_start: cover.worst_start,
        ratio: scaling_ratio(cover.worst.mean, g.node_count())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RawEdgeList> {
        parse_edge_list(text, EdgeListFormat::default())
    }

    #[test]
    fn parses_plain_and_commented() {
        let raw = parse("1 2\n2 3\n").unwrap();
        assert_eq!(raw.labels, vec!["1", "2", "3"]);
        assert_eq!(raw.edges, vec![(0, 1), (1, 2)]);

        let raw = parse("% comment\n1 2 0.5\n").unwrap();
        assert_eq!(raw.edges.len(), 1);

        let raw = parse("1 1\n1 2\n").unwrap();
        assert_eq!(raw.edges, vec![(0, 0), (0, 1)]);

        let raw = parse("# x\n a,b, 3\n\nb\tc\n").unwrap();
        assert_eq!(raw.labels, vec!["a", "b", "c"]);
        assert!(!raw.directed);
        assert!(parse("% asym unweighted\n1 2\n").unwrap().directed);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("# nothing\n"), Err(Error::EmptyEdgeSet)));
        assert!(matches!(
            parse("1 2\n3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        let ints = EdgeListFormat {
            labels: LabelKind::Integer,
        };
        assert!(matches!(
            parse_edge_list("1 2\nx 3\n", ints),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_edge_list("1 2\n", ints).is_ok());
    }

    #[test]
    fn normalization_cleans() {
        let tri = normalize(&parse("0 0\n0 1\n1 2\n2 0\n").unwrap()).unwrap();
        assert_eq!((tri.node_count(), tri.edge_count()), (3, 3));

        let pair = normalize(&parse("1 2\n2 1\n").unwrap()).unwrap();
        assert_eq!(pair.edge_count(), 1);

        let report = normalize_with_report(&parse("a b\nb c\nc a\nx y\nz z\n").unwrap()).unwrap();
        assert_eq!(report.graph.node_count(), 3);
        assert_eq!(report.dropped_nodes, 3);
        assert_eq!(report.self_loops, 1);
        assert_eq!(report.labels, vec!["a", "b", "c"]);

        assert!(matches!(
            normalize(&parse("1 1\n").unwrap()),
            Err(Error::EmptyEdgeSet)
        ));
    }

    #[test]
    fn written_form_is_canonical() {
        let g = normalize(&parse("5 9\n9 2\n2 7\n7 5\n9 7\n3 2\n").unwrap()).unwrap();
        let text = write_edge_list(&g);
        assert!(text.starts_with("# N=5 E=6\n"));
        let again = normalize(&parse(&text).unwrap()).unwrap();
        assert_eq!(again, g);
    }
}
