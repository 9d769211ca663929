//! Greedy solver for minimum d-hop dominating sets on indegree-bounded
//! digraphs.
//!
//! Per weakly connected component the greedy repeatedly picks the farthest
//! leaf, places a dominator as many hops above it as the radius allows, and
//! strips everything the dominator covers. That step is an exact exchange
//! as long as the leaf is deeper than `d`: the dominator is then a tree
//! node and the removed set is its whole subtree, which cannot dominate any
//! survivor. Components that are exactly one directed cycle are solved by
//! arithmetic placement instead: dominators spaced every `d + 1` nodes
//! around the cycle.
//!
//! The delicate case is a cycle component whose remaining leaves are all
//! within `d` of the cycle. Continuing the leaf rule there can delete a
//! cycle node that other branches still depend on and lose optimality (see
//! `shallow_trees_on_cycle_need_joint_placement` in the tests). In the
//! default `Optimal` mode the solver instead finishes such a component as a
//! minimum circular covering over the cycle positions ([`min_cycle_cover`]),
//! which is exact. `PaperLiteral` mode keeps the literal published behavior
//! for fidelity: the leaf rule runs to the bitter end and pure cycles get
//! `ceil(n / d)` dominators, both of which can overshoot the minimum.
//!
//! Every decision is recorded in a [`SolveTrace`] so a run can be audited
//! step by step.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use serde::Serialize;

use crate::decompose::{find_cycle, weakly_connected_components, weakly_connected_within};
use crate::graph::{Digraph, NodeId};

/// How components containing a cycle are dominated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleMode {
    /// Exact everywhere. Pure cycles get `ceil(n / (d + 1))` dominators
    /// spaced `d + 1` apart (each covers itself plus its next `d`
    /// successors, so that count is the minimum), and a cycle component
    /// whose remnant fits inside the radius is finished by joint placement
    /// ([`min_cycle_cover`]).
    Optimal,
    /// Fidelity with the published greedy this solver is checked against:
    /// pure cycles get `ceil(n / d)` dominators spaced `d` apart, and the
    /// leaf rule runs unconditionally, cutting cycles and re-fragmenting.
    /// Both choices can exceed the minimum.
    PaperLiteral,
}

/// Solver parameters: the hop radius and the cycle placement mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub d: usize,
    pub cycle_mode: CycleMode,
}

impl SolveConfig {
    /// Radius `d` with the default `Optimal` cycle mode. Panics if `d == 0`.
    pub fn new(d: usize) -> Self {
        Self::with_mode(d, CycleMode::Optimal)
    }

    pub fn with_mode(d: usize, cycle_mode: CycleMode) -> Self {
        assert!(d >= 1, "hop radius d must be at least 1");
        SolveConfig { d, cycle_mode }
    }
}

/// A set of dominator nodes together with the radius it was computed for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominatingSet {
    /// Member ids, ascending.
    pub members: Vec<NodeId>,
    /// Hop radius this set certifies.
    pub d: usize,
}

impl DominatingSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One recorded solver decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TraceStep {
    /// A greedy step: `leaf` was the farthest leaf of the component whose
    /// smallest member at the time of the step was `anchor`, `dominator`
    /// the node picked above it, and `removed` the covered nodes stripped
    /// from the graph (ascending, includes both).
    Leaf {
        anchor: NodeId,
        leaf: NodeId,
        dominator: NodeId,
        removed: Vec<NodeId>,
    },
    /// Joint placement around a component's cycle: `placed` dominators
    /// (ascending, all on the cycle) cover all `removed` nodes. Emitted for
    /// components that are exactly one cycle, and in `Optimal` mode also
    /// for a cycle-component remnant that fits inside the radius, where
    /// `removed` additionally holds the hanging tree nodes.
    Cycle {
        cycle_len: usize,
        placed: Vec<NodeId>,
        removed: Vec<NodeId>,
    },
    /// Witness found by exhaustive search; produced by the brute-force
    /// oracle, never by the greedy solver.
    Exhaustive { members: Vec<NodeId> },
}

/// Ordered record of every decision a solve made.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveTrace {
    pub steps: Vec<TraceStep>,
}

/// A dominating set plus the trace that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub set: DominatingSet,
    pub trace: SolveTrace,
}

/// Ancestor of `v` to place a dominator at: walks parent links from `v` for
/// up to `d` steps, stopping early at a parentless node or when the walk
/// would revisit a node (cycle wrap), and returns the last node reached.
pub fn pick_dominator(g: &Digraph, v: NodeId, d: usize) -> NodeId {
    let mut walked: HashSet<NodeId> = HashSet::new();
    walked.insert(v);
    let mut cur = v;
    for _ in 0..d {
        match g.parent(cur) {
            Some(p) if !walked.contains(&p) => {
                walked.insert(p);
                cur = p;
            }
            _ => break,
        }
    }
    cur
}

/// Everything a dominator at `u` covers: alias of
/// [`Digraph::reachable_within`], named for its role as the removal set.
pub fn covered_set(g: &Digraph, u: NodeId, d: usize) -> Vec<NodeId> {
    g.reachable_within(u, d)
}

/// Dominators for a component that is exactly one directed cycle, given in
/// edge order. Places `ceil(n / stride)` nodes at positions `0, stride,
/// 2*stride, ...` where the stride is `d + 1` (`Optimal`) or `d`
/// (`PaperLiteral`). Valid for the whole cycle in both modes.
pub fn solve_pure_cycle(cycle: &[NodeId], d: usize, mode: CycleMode) -> Vec<NodeId> {
    assert!(!cycle.is_empty(), "cycle must be nonempty");
    assert!(d >= 1, "hop radius d must be at least 1");
    let stride = match mode {
        CycleMode::Optimal => d + 1,
        CycleMode::PaperLiteral => d,
    };
    let k = cycle.len().div_ceil(stride);
    let mut placed: Vec<NodeId> = (0..k).map(|i| cycle[i * stride]).collect();
    placed.sort_unstable();
    placed
}

/// Minimum dominator positions on a cycle whose hanging trees all fit
/// inside the radius. `slack[i]` is how many positions behind cycle
/// position `i` a dominator may sit and still cover position `i` together
/// with its whole hanging tree (the radius minus the tree's depth; the bare
/// radius for a treeless position). Returns the positions of a smallest set
/// such that every position `j` has a chosen position at most `slack[j]`
/// steps before it along the cycle.
///
/// Any valid set must hit the allowed window of the tightest position, so
/// each member of that window is tried as a fixed first pick and the rest
/// of the circle is swept greedily, re-placing at each uncovered position
/// (the far end of its own window); the best attempt is a minimum.
pub fn min_cycle_cover(slack: &[usize]) -> Vec<usize> {
    assert!(!slack.is_empty(), "cycle must be nonempty");
    let l = slack.len();
    let tightest = (0..l)
        .min_by_key(|&j| (slack[j], j))
        .expect("cycle is nonempty");
    let width = slack[tightest].min(l - 1);
    let mut best: Option<Vec<usize>> = None;
    for c in 0..=width {
        let start = (tightest + l - width + c) % l;
        let mut placed = vec![start];
        let mut last = start;
        for step in 1..l {
            let j = (start + step) % l;
            if (j + l - last) % l > slack[j] {
                placed.push(j);
                last = j;
            }
        }
        if best.as_ref().is_none_or(|b| placed.len() < b.len()) {
            best = Some(placed);
        }
    }
    best.expect("at least one candidate start")
}

/// Computes a d-hop dominating set of `g` with the farthest-leaf greedy.
///
/// Works on a private copy of the graph; the input is untouched. Components
/// are processed to completion in order of smallest member id. In `Optimal`
/// mode the result is minimum: leaf steps run while they are exact and a
/// cycle component whose remnant fits inside the radius is finished by
/// [`min_cycle_cover`]. In `PaperLiteral` mode the leaf rule runs
/// unconditionally; fragments created when a dominator lands on a
/// component's cycle are re-split and processed the same way. The returned
/// trace partitions all alive nodes across its steps' removal sets.
pub fn solve(g: &Digraph, cfg: SolveConfig) -> Solution {
    assert!(cfg.d >= 1, "hop radius d must be at least 1");
    let mut greedy = Greedy {
        g: g.clone(),
        d: cfg.d,
        cycle_mode: cfg.cycle_mode,
        depth: vec![0; g.node_count()],
        alive_children: vec![0; g.node_count()],
        dominators: Vec::new(),
        steps: Vec::new(),
    };
    for v in greedy.g.nodes() {
        greedy.alive_children[v] = greedy.g.out_neighbors(v).len();
    }
    for comp in weakly_connected_components(&greedy.g) {
        greedy.process_component(&comp);
    }
    greedy.dominators.sort_unstable();
    Solution {
        set: DominatingSet {
            members: greedy.dominators,
            d: cfg.d,
        },
        trace: SolveTrace {
            steps: greedy.steps,
        },
    }
}

/// Max-heap entries ordered by depth, ties broken towards the smallest id.
type LeafHeap = BinaryHeap<(usize, Reverse<NodeId>)>;

struct Greedy {
    g: Digraph,
    d: usize,
    cycle_mode: CycleMode,
    /// Hop depth within the component currently being processed.
    depth: Vec<usize>,
    /// Alive out-degree, kept current across removals so leaves can be
    /// recognized without rescans.
    alive_children: Vec<usize>,
    dominators: Vec<NodeId>,
    steps: Vec<TraceStep>,
}

impl Greedy {
    /// Solves one weakly connected node set (all members alive, sorted).
    fn process_component(&mut self, nodes: &[NodeId]) {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        match find_cycle(&self.g, nodes) {
            Some(cycle) if cycle.len() == nodes.len() => self.cycle_step(&cycle),
            cycle => self.leaf_phase(nodes, cycle),
        }
    }

    /// Arithmetic placement on a component that is exactly one cycle.
    fn cycle_step(&mut self, cycle: &[NodeId]) {
        let placed = solve_pure_cycle(cycle, self.d, self.cycle_mode);
        self.dominators.extend_from_slice(&placed);
        let mut removed = cycle.to_vec();
        removed.sort_unstable();
        self.remove(&removed, None);
        self.steps.push(TraceStep::Cycle {
            cycle_len: cycle.len(),
            placed,
            removed,
        });
    }

    /// The greedy loop over leaves of one component.
    ///
    /// While the farthest leaf is deeper than `d`, its dominator sits
    /// strictly inside the tree part and the covered set is the dominator's
    /// whole subtree, so the component stays connected and all remaining
    /// depths stay valid; the leaf heap carries the state across steps with
    /// no rescan. Once the farthest leaf is within `d` of a component's
    /// cycle the two modes diverge. `Optimal` hands the whole remnant to
    /// [`Greedy::cycle_cover_phase`], which is exact. `PaperLiteral` keeps
    /// taking leaf steps: the dominator lands on the cycle and cuts it, and
    /// the survivors are re-fragmented into out-trees. A component with no
    /// cycle never fragments, and if the leaf phase strips every tree node
    /// of a cycle component, the intact cycle remains and is finished
    /// arithmetically.
    fn leaf_phase(&mut self, nodes: &[NodeId], cycle: Option<Vec<NodeId>>) {
        // Steps record the smallest node still alive in the component at the
        // time they are taken. Within a phase the remnant only shrinks, so a
        // monotone scan over the sorted node list tracks it.
        let mut anchor_idx = 0usize;
        self.compute_depths(nodes, cycle.as_deref());

        let mut heap: LeafHeap = nodes
            .iter()
            .copied()
            .filter(|&v| self.alive_children[v] == 0)
            .map(|v| (self.depth[v], Reverse(v)))
            .collect();

        while let Some((leaf_depth, Reverse(leaf))) = heap.pop() {
            if !self.g.is_alive(leaf) {
                continue;
            }
            debug_assert_eq!(self.alive_children[leaf], 0);
            debug_assert_eq!(self.depth[leaf], leaf_depth);

            let reaches_cycle = cycle.is_some() && leaf_depth <= self.d;
            if reaches_cycle && self.cycle_mode == CycleMode::Optimal {
                // The heap pops depths in decreasing order, so every
                // remaining node now sits within d of the cycle. Another
                // leaf step could strip a cycle node that a different
                // branch still needs; place the remaining dominators
                // jointly instead.
                self.cycle_cover_phase(cycle.as_deref().expect("checked above"), nodes);
                return;
            }

            while !self.g.is_alive(nodes[anchor_idx]) {
                anchor_idx += 1;
            }
            let anchor = nodes[anchor_idx];
            let dominator = pick_dominator(&self.g, leaf, self.d);
            let removed = covered_set(&self.g, dominator, self.d);
            self.dominators.push(dominator);
            self.remove(&removed, Some(&mut heap));
            self.steps.push(TraceStep::Leaf {
                anchor,
                leaf,
                dominator,
                removed,
            });
            self.debug_check_invariants();

            if reaches_cycle {
                // The dominator reached the cycle; what survives is a forest.
                let survivors: Vec<NodeId> = nodes
                    .iter()
                    .copied()
                    .filter(|&v| self.g.is_alive(v))
                    .collect();
                for fragment in weakly_connected_within(&self.g, &survivors) {
                    self.process_component(&fragment);
                }
                return;
            }
        }

        // All leaves consumed. For a cycle component this means every tree
        // node is gone and the untouched cycle remains.
        if let Some(cycle) = cycle {
            debug_assert!(cycle.iter().all(|&v| self.g.is_alive(v)));
            self.cycle_step(&cycle);
        }
    }

    /// Exact finish for a cycle component whose remnant fits inside the
    /// radius (every remaining depth is at most `d`).
    ///
    /// In that regime a dominating set never needs tree nodes: the cycle
    /// node at the base of a branch covers everything the branch's nodes
    /// could, plus more of the cycle. The nearest chosen cycle node at most
    /// `d - depth(tree at j)` positions behind `j` covers position `j` and
    /// its whole tree, so the minimum placement is [`min_cycle_cover`] over
    /// those slacks, and it covers the remnant in one step.
    fn cycle_cover_phase(&mut self, cycle: &[NodeId], nodes: &[NodeId]) {
        let l = cycle.len();
        let mut slack = vec![0usize; l];
        let mut removed: Vec<NodeId> = Vec::new();
        for (i, &c) in cycle.iter().enumerate() {
            let succ = cycle[(i + 1) % l];
            let mut deepest = 0usize;
            removed.push(c);
            let mut stack: Vec<NodeId> = self
                .g
                .out_neighbors(c)
                .into_iter()
                .filter(|&w| w != succ)
                .collect();
            while let Some(w) = stack.pop() {
                deepest = deepest.max(self.depth[w]);
                removed.push(w);
                stack.extend(self.g.out_neighbors(w));
            }
            debug_assert!(deepest <= self.d, "remnant must fit inside the radius");
            slack[i] = self.d - deepest;
        }
        debug_assert_eq!(
            removed.len(),
            nodes.iter().filter(|&&v| self.g.is_alive(v)).count(),
            "cover phase must consume the whole remnant"
        );
        let mut placed: Vec<NodeId> = min_cycle_cover(&slack)
            .into_iter()
            .map(|i| cycle[i])
            .collect();
        placed.sort_unstable();
        removed.sort_unstable();
        self.dominators.extend_from_slice(&placed);
        self.remove(&removed, None);
        self.steps.push(TraceStep::Cycle {
            cycle_len: l,
            placed,
            removed,
        });
        self.debug_check_invariants();
    }

    /// Depths from the out-tree root, or from all cycle nodes at once.
    fn compute_depths(&mut self, nodes: &[NodeId], cycle: Option<&[NodeId]>) {
        let sources: Vec<NodeId> = match cycle {
            Some(cycle) => cycle.to_vec(),
            None => {
                let roots: Vec<NodeId> = nodes
                    .iter()
                    .copied()
                    .filter(|&v| self.g.parent(v).is_none())
                    .collect();
                assert!(
                    roots.len() == 1,
                    "acyclic component must have exactly one parentless node, found {roots:?}"
                );
                roots
            }
        };
        let mut seen: HashSet<NodeId> = sources.iter().copied().collect();
        for &s in &sources {
            self.depth[s] = 0;
        }
        let mut frontier = sources;
        let mut d = 0usize;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for w in self.g.out_neighbors(v) {
                    if seen.insert(w) {
                        self.depth[w] = d;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        debug_assert_eq!(
            seen.len(),
            nodes.len(),
            "depth search must cover the component"
        );
    }

    /// Marks `removed` dead and maintains alive out-degrees. Surviving
    /// parents that lose their last child become leaves; with a heap handy
    /// they are pushed at their (unchanged) depth.
    fn remove(&mut self, removed: &[NodeId], mut heap: Option<&mut LeafHeap>) {
        let parents: Vec<Option<NodeId>> = removed.iter().map(|&v| self.g.parent(v)).collect();
        self.g.remove_nodes(removed);
        for p in parents.into_iter().flatten() {
            if self.g.is_alive(p) {
                self.alive_children[p] -= 1;
                if self.alive_children[p] == 0 {
                    if let Some(heap) = heap.as_deref_mut() {
                        heap.push((self.depth[p], Reverse(p)));
                    }
                }
            }
        }
    }

    /// Full structural re-validation after each step; quadratic, so only on
    /// graphs small enough for test corpora. The cutoff also keeps debug
    /// builds honest when timing moderate sizes.
    fn debug_check_invariants(&self) {
        if cfg!(debug_assertions) && self.g.node_count() <= 512 {
            self.g.validate().expect("removal broke graph invariants");
            for v in self.g.nodes() {
                assert_eq!(self.alive_children[v], self.g.out_neighbors(v).len());
            }
        }
    }
}
