//! Directed graphs with indegree bounded by one.
//!
//! Every node has at most one in-neighbor (its *parent*), so each weakly
//! connected component is either an out-tree or a single directed cycle with
//! out-trees hanging off it. Nodes are dense indices in `0..n`. Removal is
//! logical: nodes are flagged dead and all queries skip them, which keeps ids
//! stable while a solver repeatedly shrinks the graph.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Node index, dense in `0..n` for the owning graph.
pub type NodeId = usize;

/// Errors raised while building or parsing a graph.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// A node would receive a second in-edge.
    #[error("node {0} has more than one in-edge")]
    IndegreeViolation(NodeId),
    /// The same directed edge was given twice.
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    /// A node id is not in `0..n`.
    #[error("node id {0} out of range")]
    NodeOutOfRange(NodeId),
    /// The text input could not be read as a graph.
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
}

/// A directed graph in which every node has indegree at most one.
///
/// Edge `(u, v)` means `u` dominates `v`; `v`'s unique in-neighbor is its
/// parent. A self-loop `(v, v)` is allowed and makes `v` its own parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    /// Unique in-neighbor per node, as given at construction.
    parent: Vec<Option<NodeId>>,
    /// Out-neighbors per node, sorted ascending.
    out: Vec<Vec<NodeId>>,
    alive: Vec<bool>,
    alive_count: usize,
}

impl Digraph {
    /// Builds a graph from `n` nodes and directed `(u, v)` edge pairs,
    /// validating the indegree bound, node ranges, and duplicate edges.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        let mut parent: Vec<Option<NodeId>> = vec![None; n];
        let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::NodeOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::NodeOutOfRange(v));
            }
            match parent[v] {
                Some(p) if p == u => return Err(GraphError::DuplicateEdge(u, v)),
                Some(_) => return Err(GraphError::IndegreeViolation(v)),
                None => parent[v] = Some(u),
            }
            out[u].push(v);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        Ok(Digraph {
            parent,
            out,
            alive: vec![true; n],
            alive_count: n,
        })
    }

    /// Parses the edge-list text format.
    ///
    /// Lines starting with `#` and blank lines are ignored. The first
    /// remaining line is `n m`; exactly `m` lines `u v` follow, with 0-based
    /// whitespace-separated ids.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(GraphError::ParseError {
            line: 1,
            message: "missing header line \"n m\"".into(),
        })?;
        let mut it = header.split_whitespace();
        let n = parse_count(it.next(), header_line, "node count")?;
        let m = parse_count(it.next(), header_line, "edge count")?;
        if it.next().is_some() {
            return Err(GraphError::ParseError {
                line: header_line,
                message: "header must be exactly \"n m\"".into(),
            });
        }

        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, text) = lines.next().ok_or_else(|| GraphError::ParseError {
                line: 0,
                message: format!("expected {m} edge lines, found {}", edges.len()),
            })?;
            let mut it = text.split_whitespace();
            let u = parse_count(it.next(), line, "edge source")?;
            let v = parse_count(it.next(), line, "edge target")?;
            if it.next().is_some() {
                return Err(GraphError::ParseError {
                    line,
                    message: "edge line must be exactly \"u v\"".into(),
                });
            }
            edges.push((u, v));
        }
        if let Some((line, _)) = lines.next() {
            return Err(GraphError::ParseError {
                line,
                message: format!("unexpected content after {m} edges"),
            });
        }
        Self::from_edges(n, edges)
    }

    /// Serializes to the text format: `n m` header, then alive edges sorted
    /// by `(u, v)`, one per line, LF endings. `Digraph::parse` inverts this
    /// for graphs with no removed nodes.
    pub fn to_text(&self) -> String {
        let edges: Vec<(NodeId, NodeId)> = self.edges().collect();
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.node_count(), edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Total number of nodes the graph was built with, dead or alive.
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Number of nodes not yet removed.
    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn is_alive(&self, v: NodeId) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    /// Alive nodes in ascending order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).filter(|&v| self.alive[v])
    }

    /// Alive edges `(u, v)` sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes()
            .flat_map(move |u| self.out_neighbors(u).into_iter().map(move |v| (u, v)))
    }

    fn assert_alive(&self, v: NodeId) {
        assert!(v < self.node_count(), "node id {v} out of range");
        assert!(self.alive[v], "node {v} has been removed");
    }

    /// Alive out-neighbors of `v` in ascending order.
    ///
    /// Panics if `v` is out of range or removed.
    pub fn out_neighbors(&self, v: NodeId) -> Vec<NodeId> {
        self.assert_alive(v);
        self.out[v]
            .iter()
            .copied()
            .filter(|&w| self.alive[w])
            .collect()
    }

    /// The unique alive in-neighbor of `v`, if any.
    ///
    /// Panics if `v` is out of range or removed.
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.assert_alive(v);
        self.parent[v].filter(|&p| self.alive[p])
    }

    /// All alive nodes within `d` hops of `u` along out-edges, including `u`
    /// itself, via breadth-first search truncated at depth `d`. Sorted
    /// ascending.
    ///
    /// Panics if `u` is out of range or removed.
    pub fn reachable_within(&self, u: NodeId, d: usize) -> Vec<NodeId> {
        self.assert_alive(u);
        let mut seen: HashSet<NodeId> = HashSet::new();
        seen.insert(u);
        let mut frontier = vec![u];
        let mut result = vec![u];
        for _ in 0..d {
            if frontier.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for &x in &frontier {
                for &w in &self.out[x] {
                    if self.alive[w] && seen.insert(w) {
                        next.push(w);
                        result.push(w);
                    }
                }
            }
            frontier = next;
        }
        result.sort_unstable();
        result
    }

    /// Marks every node in `s` dead, dropping all incident edges.
    ///
    /// Panics if any node is out of range or already removed.
    pub fn remove_nodes(&mut self, s: &[NodeId]) {
        for &v in s {
            self.assert_alive(v);
            self.alive[v] = false;
            self.alive_count -= 1;
        }
    }

    /// Checks the structural invariants of the alive subgraph: indegree at
    /// most one, parent/out-list consistency, sorted duplicate-free out
    /// lists. Used by tests and debug assertions.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut indegree = vec![0usize; self.node_count()];
        for u in self.nodes() {
            let mut prev: Option<NodeId> = None;
            for v in self.out_neighbors(u) {
                if prev == Some(v) {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
                prev = Some(v);
                indegree[v] += 1;
                if indegree[v] > 1 {
                    return Err(GraphError::IndegreeViolation(v));
                }
                if self.parent(v) != Some(u) {
                    return Err(GraphError::ParseError {
                        line: 0,
                        message: format!("parent of {v} does not match edge ({u}, {v})"),
                    });
                }
            }
        }
        for v in self.nodes() {
            if let Some(p) = self.parent(v) {
                if !self.out_neighbors(p).contains(&v) {
                    return Err(GraphError::ParseError {
                        line: 0,
                        message: format!("edge ({p}, {v}) missing from out list"),
                    });
                }
            }
        }
        Ok(())
    }
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let token = token.ok_or_else(|| GraphError::ParseError {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| GraphError::ParseError {
        line,
        message: format!("invalid {what} {token:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Digraph {
        Digraph::from_edges(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn build_path() {
        let g = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.parent(1), Some(0));
        assert_eq!(g.parent(2), Some(1));
        assert_eq!(g.parent(0), None);
        g.validate().unwrap();
    }

    #[test]
    fn build_rejects_second_in_edge() {
        let err = Digraph::from_edges(3, [(0, 2), (1, 2)]).unwrap_err();
        assert_eq!(err, GraphError::IndegreeViolation(2));
    }

    #[test]
    fn build_accepts_self_loop() {
        let g = Digraph::from_edges(1, [(0, 0)]).unwrap();
        assert_eq!(g.parent(0), Some(0));
        assert_eq!(g.out_neighbors(0), vec![0]);
        g.validate().unwrap();
    }

    #[test]
    fn build_rejects_out_of_range_and_duplicates() {
        assert_eq!(
            Digraph::from_edges(2, [(0, 5)]).unwrap_err(),
            GraphError::NodeOutOfRange(5)
        );
        assert_eq!(
            Digraph::from_edges(2, [(0, 1), (0, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
    }

    #[test]
    fn parse_path() {
        let g = Digraph::parse("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_skips_comments() {
        let g = Digraph::parse("# comment\n1 1\n0 0\n").unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.parent(0), Some(0));
    }

    #[test]
    fn parse_reports_out_of_range() {
        assert_eq!(
            Digraph::parse("2 1\n0 5\n").unwrap_err(),
            GraphError::NodeOutOfRange(5)
        );
    }

    #[test]
    fn parse_reports_malformed_lines() {
        assert!(matches!(
            Digraph::parse("junk\n"),
            Err(GraphError::ParseError { line: 1, .. })
        ));
        assert!(matches!(
            Digraph::parse("2 2\n0 1\n"),
            Err(GraphError::ParseError { .. })
        ));
        assert!(matches!(
            Digraph::parse("2 1\n0 1\n1 0\n"),
            Err(GraphError::ParseError { line: 3, .. })
        ));
        assert!(matches!(
            Digraph::parse("2 1\n0 1 9\n"),
            Err(GraphError::ParseError { line: 2, .. })
        ));
    }

    #[test]
    fn out_neighbors_examples() {
        let g = path(3);
        assert_eq!(g.out_neighbors(0), vec![1]);
        assert_eq!(g.out_neighbors(2), Vec::<NodeId>::new());
        let star = Digraph::from_edges(4, [(0, 3), (0, 1), (0, 2)]).unwrap();
        assert_eq!(star.out_neighbors(0), vec![1, 2, 3]);
    }

    #[test]
    fn parent_examples() {
        let g = path(3);
        assert_eq!(g.parent(2), Some(1));
        assert_eq!(g.parent(0), None);
    }

    #[test]
    fn reachable_within_truncates_depth() {
        let g = path(5);
        assert_eq!(g.reachable_within(2, 2), vec![2, 3, 4]);
        assert_eq!(g.reachable_within(2, 0), vec![2]);
    }

    #[test]
    fn reachable_within_saturates_cycle() {
        let g = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.reachable_within(0, 5), vec![0, 1, 2]);
    }

    #[test]
    fn remove_path_suffix() {
        let mut g = path(5);
        g.remove_nodes(&[2, 3, 4]);
        assert_eq!(g.alive_count(), 2);
        assert_eq!(g.out_neighbors(1), Vec::<NodeId>::new());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        g.validate().unwrap();
    }

    #[test]
    fn remove_cycle_node_orphans_successor() {
        let mut g = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        g.remove_nodes(&[0]);
        assert_eq!(g.parent(1), None);
        assert_eq!(g.parent(2), Some(1));
        g.validate().unwrap();
    }

    #[test]
    fn remove_nothing_is_identity() {
        let mut g = path(3);
        let before = g.clone();
        g.remove_nodes(&[]);
        assert_eq!(g, before);
    }

    #[test]
    #[should_panic(expected = "has been removed")]
    fn double_removal_panics() {
        let mut g = path(3);
        g.remove_nodes(&[1]);
        g.remove_nodes(&[1]);
    }

    #[test]
    #[should_panic(expected = "has been removed")]
    fn querying_removed_node_panics() {
        let mut g = path(3);
        g.remove_nodes(&[1]);
        g.out_neighbors(1);
    }

    #[test]
    fn reachable_on_path_has_closed_form() {
        let g = path(7);
        for u in 0..7 {
            for d in 0..10 {
                assert_eq!(g.reachable_within(u, d).len(), (d + 1).min(7 - u));
            }
        }
    }

    #[test]
    fn empty_graph_round_trips() {
        let g = Digraph::parse("0 0\n").unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.to_text(), "0 0\n");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Arbitrary valid graph: each node gets an optional parent.
        fn arb_graph() -> impl Strategy<Value = Digraph> {
            (1usize..16).prop_flat_map(|n| {
                proptest::collection::vec(proptest::option::of(0..n), n).prop_map(move |parents| {
                    let edges = parents
                        .iter()
                        .enumerate()
                        .filter_map(|(v, p)| p.map(|u| (u, v)));
                    Digraph::from_edges(n, edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn invariants_survive_removals(g in arb_graph(), mask in proptest::collection::vec(any::<bool>(), 16)) {
                let mut g = g;
                let doomed: Vec<NodeId> = g.nodes().filter(|&v| mask[v]).collect();
                g.remove_nodes(&doomed);
                prop_assert!(g.validate().is_ok());
                for v in g.nodes() {
                    match g.parent(v) {
                        Some(p) => prop_assert!(g.out_neighbors(p).contains(&v)),
                        None => prop_assert!(g.nodes().all(|u| !g.out_neighbors(u).contains(&v))),
                    }
                }
            }

            #[test]
            fn reachable_is_monotone_in_d(g in arb_graph(), d in 0usize..6) {
                for u in g.nodes() {
                    let narrow = g.reachable_within(u, d);
                    let wide = g.reachable_within(u, d + 1);
                    prop_assert!(narrow.iter().all(|v| wide.contains(v)));
                    prop_assert_eq!(g.reachable_within(u, 0), vec![u]);
                }
            }

            #[test]
            fn text_round_trip(g in arb_graph()) {
                let text = g.to_text();
                let back = Digraph::parse(&text).unwrap();
                prop_assert_eq!(back, g);
            }
        }
    }
}
