//! Ground truth for small instances: a verifier that checks any candidate
//! set, and an exhaustive search that finds a true minimum dominating set by
//! trying subsets in order of size. The search is exponential and guarded by
//! a node cap; it exists to validate the greedy solver, not to be fast.

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Digraph, NodeId};
use crate::solver::{DominatingSet, Solution, SolveTrace, TraceStep};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    /// The instance has more alive nodes than the search cap allows.
    #[error("instance has {nodes} alive nodes, above the exhaustive search cap of {cap}")]
    CapExceeded { nodes: usize, cap: usize },
}

/// Outcome of checking a candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    /// Alive nodes no member reaches within `d` hops, ascending. Empty
    /// exactly when `valid`.
    pub uncovered: Vec<NodeId>,
}

/// Checks whether `set` d-hop dominates every alive node of `g`: each alive
/// node must be reachable from some member by a directed path of at most
/// `set.d` hops (members cover themselves at distance zero).
///
/// Panics if `set.d == 0` or if any member is out of range or removed.
pub fn verify(g: &Digraph, set: &DominatingSet) -> VerifyReport {
    assert!(set.d >= 1, "hop radius d must be at least 1");
    let mut covered = vec![false; g.node_count()];
    for &m in &set.members {
        assert!(g.is_alive(m), "set member {m} is not an alive node");
        for v in g.reachable_within(m, set.d) {
            covered[v] = true;
        }
    }
    let uncovered: Vec<NodeId> = g.nodes().filter(|&v| !covered[v]).collect();
    VerifyReport {
        valid: uncovered.is_empty(),
        uncovered,
    }
}

/// Finds a minimum d-hop dominating set by exhaustive search: subset sizes
/// in increasing order, subsets of each size in lexicographic order, first
/// valid subset wins. The witness is therefore deterministic. Instances
/// with more than `cap` alive nodes are refused.
pub fn brute_force_min(g: &Digraph, d: usize, cap: usize) -> Result<Solution, OracleError> {
    assert!(d >= 1, "hop radius d must be at least 1");
    let nodes: Vec<NodeId> = g.nodes().collect();
    if nodes.len() > cap {
        return Err(OracleError::CapExceeded {
            nodes: nodes.len(),
            cap,
        });
    }

    // No subset smaller than alive_count / max ball size can work; start
    // there instead of at zero and use it as a cross-check on the answer.
    let max_ball = nodes
        .iter()
        .map(|&v| g.reachable_within(v, d).len())
        .max()
        .unwrap_or(1);
    let floor = g.alive_count().div_ceil(max_ball);

    for k in floor..=nodes.len() {
        for subset in nodes.iter().copied().combinations(k) {
            let candidate = DominatingSet { members: subset, d };
            if verify(g, &candidate).valid {
                return Ok(Solution {
                    trace: SolveTrace {
                        steps: vec![TraceStep::Exhaustive {
                            members: candidate.members.clone(),
                        }],
                    },
                    set: candidate,
                });
            }
        }
    }
    unreachable!("the full node set always dominates");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve, CycleMode, SolveConfig};

    fn path(n: usize) -> Digraph {
        Digraph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle(n: usize) -> Digraph {
        Digraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn set(members: Vec<NodeId>, d: usize) -> DominatingSet {
        DominatingSet { members, d }
    }

    #[test]
    fn verify_accepts_covering_set() {
        let report = verify(&path(5), &set(vec![0, 2], 2));
        assert!(report.valid);
        assert!(report.uncovered.is_empty());
    }

    #[test]
    fn verify_reports_uncovered_nodes() {
        let report = verify(&path(5), &set(vec![0], 2));
        assert!(!report.valid);
        assert_eq!(report.uncovered, vec![3, 4]);
    }

    #[test]
    fn verify_empty_set() {
        let report = verify(&path(3), &set(vec![], 1));
        assert_eq!(report.uncovered, vec![0, 1, 2]);
        let empty = Digraph::from_edges(0, []).unwrap();
        assert!(verify(&empty, &set(vec![], 1)).valid);
    }

    #[test]
    fn verify_ignores_removed_nodes() {
        let mut g = path(5);
        g.remove_nodes(&[3, 4]);
        assert!(verify(&g, &set(vec![0], 2)).valid);
    }

    #[test]
    #[should_panic(expected = "not an alive node")]
    fn verify_rejects_removed_member() {
        let mut g = path(3);
        g.remove_nodes(&[2]);
        let _ = verify(&g, &set(vec![2], 1));
    }

    #[test]
    fn brute_force_path5() {
        let sol = brute_force_min(&path(5), 2, 20).unwrap();
        assert_eq!(sol.set.members, vec![0, 2]);
        assert_eq!(
            sol.trace.steps,
            vec![TraceStep::Exhaustive {
                members: vec![0, 2]
            }]
        );
    }

    #[test]
    fn brute_force_cycle3_d1() {
        let sol = brute_force_min(&cycle(3), 1, 20).unwrap();
        assert_eq!(sol.set.members, vec![0, 1]);
    }

    #[test]
    fn brute_force_single_and_empty() {
        let one = Digraph::from_edges(1, []).unwrap();
        assert_eq!(brute_force_min(&one, 3, 20).unwrap().set.members, vec![0]);
        let empty = Digraph::from_edges(0, []).unwrap();
        assert!(brute_force_min(&empty, 1, 20).unwrap().set.is_empty());
    }

    #[test]
    fn brute_force_respects_cap() {
        let g = path(21);
        assert_eq!(
            brute_force_min(&g, 1, 20),
            Err(OracleError::CapExceeded { nodes: 21, cap: 20 })
        );
        assert!(brute_force_min(&g, 1, 21).is_ok());
    }

    #[test]
    fn brute_force_is_deterministic() {
        let g = Digraph::from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (5, 6)]).unwrap();
        let a = brute_force_min(&g, 2, 20).unwrap();
        let b = brute_force_min(&g, 2, 20).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn minimum_shrinks_as_radius_grows() {
        let g = path(9);
        let mut last = usize::MAX;
        for d in 1..=4 {
            let k = brute_force_min(&g, d, 20).unwrap().set.len();
            assert!(k <= last, "d={d}: {k} > {last}");
            last = k;
        }
    }

    #[test]
    fn greedy_matches_oracle_on_smoke_cases() {
        let cases = [
            path(6),
            cycle(5),
            Digraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (0, 5)]).unwrap(),
            Digraph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
        ];
        for g in &cases {
            for d in [1, 2, 3] {
                let greedy = solve(g, SolveConfig::new(d));
                let oracle = brute_force_min(g, d, 20).unwrap();
                assert_eq!(greedy.set.len(), oracle.set.len());
                assert!(verify(g, &greedy.set).valid);
            }
        }
    }

    #[test]
    fn paper_mode_is_never_better_than_oracle() {
        for n in 2..=8 {
            for d in [1, 2, 3] {
                let g = cycle(n);
                let paper = solve(&g, SolveConfig::with_mode(d, CycleMode::PaperLiteral));
                let oracle = brute_force_min(&g, d, 20).unwrap();
                assert!(paper.set.len() >= oracle.set.len());
                assert!(verify(&g, &paper.set).valid);
            }
        }
    }
}
