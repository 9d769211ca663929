//! Minimum d-hop dominating sets for directed graphs with indegree at most
//! one.
//!
//! A node `u` dominates `v` when a directed path of at most `d` hops leads
//! from `u` to `v`; dominators cover themselves at distance zero. On general
//! digraphs finding a minimum d-hop dominating set is hard, but when every
//! node has at most one in-edge each weakly connected component is an
//! out-tree or a cycle with out-trees attached, and the problem is solved
//! exactly in polynomial time: a greedy repeatedly dominates the farthest
//! leaf from `d` hops above it while that is provably safe, and finishes
//! each cycle component with a joint placement around its cycle.
//!
//! The crate provides:
//!
//! * [`graph`] — the [`Digraph`] type: construction with invariant checking,
//!   a text format, hop-bounded reachability, and logical node removal;
//! * [`decompose`] — weak and strong components, cycle finding,
//!   classification, depths, farthest leaves;
//! * [`solver`] — the greedy ([`solve`]) with full decision traces and both
//!   cycle-placement modes;
//! * [`oracle`] — a verifier and an exhaustive-search minimum for small
//!   instances, used as ground truth in tests;
//! * [`generator`] — seeded, reproducible instance generators;
//! * [`cli`] — the `dhop` binary's subcommands as a testable function.
//!
//! ```
//! use dhop::{solve, Digraph, SolveConfig};
//!
//! let g = Digraph::parse("5 4\n0 1\n1 2\n2 3\n3 4\n").unwrap();
//! let sol = solve(&g, SolveConfig::new(2));
//! assert_eq!(sol.set.members, vec![0, 2]);
//! ```

pub mod cli;
pub mod decompose;
pub mod generator;
pub mod graph;
pub mod oracle;
pub mod solver;

pub use decompose::{classify_component, Component, ComponentKind};
pub use generator::{corpus, generate, GenSpec, Shape};
pub use graph::{Digraph, GraphError, NodeId};
pub use oracle::{brute_force_min, verify, OracleError, VerifyReport};
pub use solver::{solve, CycleMode, DominatingSet, Solution, SolveConfig, SolveTrace, TraceStep};
