//! Structure of indegree-bounded digraphs: weak components, the unique cycle
//! of each component, component classification, depths, and farthest leaves.
//!
//! Because indegree is at most one, every weakly connected component is
//! either an out-tree (one parentless root) or exactly one directed cycle
//! with out-trees attached to cycle nodes. No node of a cycle can have an
//! in-edge from outside the cycle.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};

use crate::graph::{Digraph, NodeId};

/// Shape of a weakly connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// Acyclic: a rooted tree with all edges pointing away from the root.
    OutTree,
    /// Exactly one directed cycle and nothing else.
    PureCycle,
    /// One directed cycle with at least one tree node attached.
    CycleWithTrees,
}

/// A classified weakly connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Member nodes, ascending.
    pub nodes: Vec<NodeId>,
    pub kind: ComponentKind,
    /// The unique directed cycle in edge order, starting at its smallest
    /// node id. Empty for `OutTree`.
    pub cycle: Vec<NodeId>,
    /// The unique parentless node. `None` for cycle kinds.
    pub root: Option<NodeId>,
}

impl Component {
    /// Smallest member id; used as the component's stable name in output.
    pub fn anchor(&self) -> NodeId {
        self.nodes[0]
    }
}

/// Hop depth per component node: distance from the root for out-trees,
/// distance from the nearest cycle node otherwise (cycle nodes have depth 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthMap {
    depths: HashMap<NodeId, usize>,
}

impl DepthMap {
    pub fn depth(&self, v: NodeId) -> Option<usize> {
        self.depths.get(&v).copied()
    }

    pub fn max_depth(&self) -> usize {
        self.depths.values().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.depths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depths.is_empty()
    }
}

/// Weakly connected components of the alive subgraph, each sorted ascending,
/// ordered by smallest member id.
pub fn weakly_connected_components(g: &Digraph) -> Vec<Vec<NodeId>> {
    let all: Vec<NodeId> = g.nodes().collect();
    weakly_connected_within(g, &all)
}

/// Weak components restricted to `nodes`, which must be closed under alive
/// edges (true of full components and of survivors of a component after
/// removals). Same ordering contract as [`weakly_connected_components`].
pub fn weakly_connected_within(g: &Digraph, nodes: &[NodeId]) -> Vec<Vec<NodeId>> {
    let mut seen: HashSet<NodeId> = HashSet::with_capacity(nodes.len());
    let mut comps = Vec::new();
    for &start in nodes {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let mut visit = |w: NodeId| {
                if seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            };
            if let Some(p) = g.parent(v) {
                visit(p);
            }
            for w in g.out_neighbors(v) {
                visit(w);
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

/// Strongly connected components of the alive subgraph via Tarjan's
/// algorithm (iterative), linear in nodes plus edges. Each component is
/// sorted ascending and the list is ordered by smallest member id.
pub fn strongly_connected_components(g: &Digraph) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut index: Vec<Option<usize>> = vec![None; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<NodeId> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<NodeId>> = Vec::new();

    // explicit DFS frames: (node, out-neighbor cursor)
    let mut frames: Vec<(NodeId, usize)> = Vec::new();
    for root in g.nodes() {
        if index[root].is_some() {
            continue;
        }
        frames.push((root, 0));
        index[root] = Some(next_index);
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut cursor)) = frames.last_mut() {
            let succs = g.out_neighbors(v);
            if *cursor < succs.len() {
                let w = succs[*cursor];
                *cursor += 1;
                match index[w] {
                    None => {
                        index[w] = Some(next_index);
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    }
                    Some(wi) => {
                        if on_stack[w] {
                            low[v] = low[v].min(wi);
                        }
                    }
                }
            } else {
                frames.pop();
                if let Some(&mut (p, _)) = frames.last_mut() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v].unwrap() {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

/// The unique directed cycle inside one weak component, if any, in edge
/// order starting at its smallest node id.
///
/// Walks parent links from any member: with indegree at most one the
/// backward walk is functional, so it either ends at a parentless node (no
/// cycle) or revisits a node, which must lie on the component's one cycle.
pub fn find_cycle(g: &Digraph, comp: &[NodeId]) -> Option<Vec<NodeId>> {
    let start = *comp.first()?;
    let mut seen: HashSet<NodeId> = HashSet::new();
    let mut cur = start;
    while seen.insert(cur) {
        cur = g.parent(cur)?;
    }
    // `cur` is on the cycle; walk it once. Parent links traverse the cycle
    // against edge direction, so reverse before rotating.
    let mut cycle = vec![cur];
    let mut v = g.parent(cur).expect("cycle node must have a parent");
    while v != cur {
        cycle.push(v);
        v = g.parent(v).expect("cycle node must have a parent");
    }
    cycle.reverse();
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(min_pos);
    Some(cycle)
}

/// Classifies one weak component of `g`.
///
/// Panics on structural impossibilities (two parentless nodes, a cycle not
/// covering itself): those indicate a defect in the graph construction, not
/// a user error.
pub fn classify_component(g: &Digraph, comp: &[NodeId]) -> Component {
    assert!(!comp.is_empty(), "cannot classify an empty component");
    let mut nodes = comp.to_vec();
    nodes.sort_unstable();
    match find_cycle(g, &nodes) {
        Some(cycle) => {
            let kind = if cycle.len() == nodes.len() {
                ComponentKind::PureCycle
            } else {
                ComponentKind::CycleWithTrees
            };
            Component {
                nodes,
                kind,
                cycle,
                root: None,
            }
        }
        None => {
            let roots: Vec<NodeId> = nodes
                .iter()
                .copied()
                .filter(|&v| g.parent(v).is_none())
                .collect();
            assert!(
                roots.len() == 1,
                "acyclic component must have exactly one parentless node, found {roots:?}"
            );
            Component {
                nodes,
                kind: ComponentKind::OutTree,
                cycle: Vec::new(),
                root: Some(roots[0]),
            }
        }
    }
}

/// Breadth-first depths over one classified component: from the root for an
/// out-tree, from all cycle nodes simultaneously otherwise.
pub fn depth_map(g: &Digraph, comp: &Component) -> DepthMap {
    let sources: Vec<NodeId> = match comp.kind {
        ComponentKind::OutTree => vec![comp.root.expect("out-tree has a root")],
        _ => comp.cycle.clone(),
    };
    let mut depths: HashMap<NodeId, usize> = HashMap::with_capacity(comp.nodes.len());
    let mut frontier = sources;
    for &s in &frontier {
        depths.insert(s, 0);
    }
    let mut d = 0usize;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for w in g.out_neighbors(v) {
                if let Entry::Vacant(e) = depths.entry(w) {
                    e.insert(d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    debug_assert_eq!(
        depths.len(),
        comp.nodes.len(),
        "depth map must cover the component"
    );
    DepthMap { depths }
}

/// The deepest leaf of a component: among nodes with no alive out-edge, the
/// one of maximum depth, ties broken by smallest id. `None` for a pure cycle
/// (no leaves exist). A singleton out-tree is its own farthest leaf.
pub fn farthest_leaf(g: &Digraph, comp: &Component) -> Option<NodeId> {
    let depths = depth_map(g, comp);
    comp.nodes
        .iter()
        .copied()
        .filter(|&v| g.out_neighbors(v).is_empty())
        .max_by_key(|&v| (depths.depth(v).unwrap(), std::cmp::Reverse(v)))
}
