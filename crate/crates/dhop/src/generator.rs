//! Reproducible instance generators for tests and benchmarks.
//!
//! Random graphs are built by the reverse functional-graph construction:
//! each node independently receives, with probability `p`, one parent drawn
//! uniformly from all nodes (itself included, which makes a self-loop). The
//! indegree bound holds by construction, so every sample is a valid graph,
//! and the model produces the full shape taxonomy: out-trees, pure cycles,
//! and cycles with trees attached.
//!
//! All randomness comes from ChaCha8 seeded with the 64-bit spec seed, so a
//! `(shape, n, seed)` triple names one graph, bit for bit, on any platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Digraph, NodeId};

/// Family of graphs to generate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// Each node gets a uniformly random parent with probability `p`.
    Random { p: f64 },
    /// The path `0 -> 1 -> ... -> n-1`.
    Path,
    /// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    Cycle,
    /// Node 0 pointing at every other node.
    Star,
    /// A canonical cycle of `cycle_len` nodes with `n - cycle_len` tree
    /// nodes attached at seeded random points.
    Rho { cycle_len: usize },
    /// `components` disjoint random out-trees of near-equal size.
    Forest { components: usize },
}

impl Shape {
    /// Lowercase name used in CLI output and generated file headers.
    pub fn name(&self) -> &'static str {
        match self {
            Shape::Random { .. } => "random",
            Shape::Path => "path",
            Shape::Cycle => "cycle",
            Shape::Star => "star",
            Shape::Rho { .. } => "rho",
            Shape::Forest { .. } => "forest",
        }
    }
}

/// A fully determined generation request: identical specs yield identical
/// graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub shape: Shape,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("parent probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("{shape} graphs need at least one node")]
    TooFewNodes { shape: &'static str },
    #[error("rho shape needs 1 <= cycle_len <= n, got cycle_len={cycle_len} with n={n}")]
    BadCycleLength { cycle_len: usize, n: usize },
    #[error("forest shape needs 1 <= components <= n, got components={components} with n={n}")]
    BadComponentCount { components: usize, n: usize },
}

/// Builds the graph a spec describes. Deterministic: the same spec always
/// yields the same edge list.
pub fn generate(spec: &GenSpec) -> Result<Digraph, GenError> {
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges: Vec<(NodeId, NodeId)> = match spec.shape {
        Shape::Random { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenError::InvalidProbability(p));
            }
            let mut edges = Vec::new();
            for v in 0..n {
                if rng.gen_bool(p) {
                    edges.push((rng.gen_range(0..n), v));
                }
            }
            edges
        }
        Shape::Path => {
            require_nodes(n, "path")?;
            (0..n - 1).map(|i| (i, i + 1)).collect()
        }
        Shape::Cycle => {
            require_nodes(n, "cycle")?;
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        Shape::Star => {
            require_nodes(n, "star")?;
            (1..n).map(|v| (0, v)).collect()
        }
        Shape::Rho { cycle_len } => {
            if cycle_len < 1 || cycle_len > n {
                return Err(GenError::BadCycleLength { cycle_len, n });
            }
            let mut edges: Vec<(NodeId, NodeId)> =
                (0..cycle_len).map(|i| (i, (i + 1) % cycle_len)).collect();
            for v in cycle_len..n {
                edges.push((rng.gen_range(0..v), v));
            }
            edges
        }
        Shape::Forest { components } => {
            if components < 1 || components > n {
                return Err(GenError::BadComponentCount { components, n });
            }
            let mut edges = Vec::with_capacity(n - components);
            let (base, extra) = (n / components, n % components);
            let mut start = 0;
            for b in 0..components {
                let len = base + usize::from(b < extra);
                for v in start + 1..start + len {
                    edges.push((rng.gen_range(start..v), v));
                }
                start += len;
            }
            edges
        }
    };
    Ok(Digraph::from_edges(n, edges).expect("generated edges satisfy the indegree bound"))
}

fn require_nodes(n: usize, shape: &'static str) -> Result<(), GenError> {
    if n == 0 {
        Err(GenError::TooFewNodes { shape })
    } else {
        Ok(())
    }
}

/// The seeded random corpus used by the acceptance tests: for each size,
/// `per_size` Random instances with the seed schedule `size * 10000 + index`.
pub fn corpus(
    sizes: &[usize],
    per_size: usize,
    p: f64,
) -> Result<Vec<(GenSpec, Digraph)>, GenError> {
    let mut out = Vec::with_capacity(sizes.len() * per_size);
    for &n in sizes {
        for index in 0..per_size {
            let spec = GenSpec {
                shape: Shape::Random { p },
                n,
                seed: n as u64 * 10_000 + index as u64,
            };
            let g = generate(&spec)?;
            out.push((spec, g));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{classify_component, weakly_connected_components, ComponentKind};

    fn gen(shape: Shape, n: usize, seed: u64) -> Digraph {
        generate(&GenSpec { shape, n, seed }).unwrap()
    }

    #[test]
    fn canonical_shapes() {
        let cycle = gen(Shape::Cycle, 4, 0);
        assert_eq!(
            cycle.edges().collect::<Vec<_>>(),
            vec![(0, 1), (1, 2), (2, 3), (3, 0)]
        );
        let path = gen(Shape::Path, 3, 0);
        assert_eq!(path.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let star = gen(Shape::Star, 4, 0);
        assert_eq!(
            star.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (0, 3)]
        );
        assert_eq!(
            gen(Shape::Cycle, 1, 0).edges().collect::<Vec<_>>(),
            vec![(0, 0)]
        );
        assert_eq!(gen(Shape::Star, 1, 0).edges().count(), 0);
    }

    #[test]
    fn generation_is_deterministic() {
        for (shape, n) in [
            (Shape::Random { p: 0.8 }, 30),
            (Shape::Rho { cycle_len: 4 }, 12),
            (Shape::Forest { components: 3 }, 17),
        ] {
            for seed in [0, 1, 99] {
                assert_eq!(gen(shape, n, seed), gen(shape, n, seed));
            }
        }
    }

    #[test]
    fn all_shapes_generate_valid_graphs() {
        let shapes = [
            Shape::Random { p: 0.0 },
            Shape::Random { p: 0.5 },
            Shape::Random { p: 1.0 },
            Shape::Path,
            Shape::Cycle,
            Shape::Star,
            Shape::Rho { cycle_len: 3 },
            Shape::Forest { components: 2 },
        ];
        for shape in shapes {
            for n in [3, 8, 20] {
                for seed in 0..5 {
                    let g = gen(shape, n, seed);
                    assert_eq!(g.node_count(), n);
                    g.validate()
                        .unwrap_or_else(|e| panic!("{shape:?} n={n} seed={seed}: {e}"));
                }
            }
        }
    }

    #[test]
    fn rho_attaches_trees_to_one_cycle() {
        let g = gen(Shape::Rho { cycle_len: 3 }, 5, 7);
        let comps = weakly_connected_components(&g);
        assert_eq!(comps.len(), 1);
        let c = classify_component(&g, &comps[0]);
        assert_eq!(c.kind, ComponentKind::CycleWithTrees);
        assert_eq!(c.cycle, vec![0, 1, 2]);
        // golden attachment points for this seed, frozen for reproducibility
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 3), (1, 2), (2, 0), (2, 4)]
        );
    }

    #[test]
    fn forest_has_requested_component_count() {
        for (n, k) in [(10, 3), (7, 7), (12, 1), (9, 2)] {
            let g = gen(Shape::Forest { components: k }, n, 11);
            let comps = weakly_connected_components(&g);
            assert_eq!(comps.len(), k, "n={n} k={k}");
            for comp in comps {
                let c = classify_component(&g, &comp);
                assert_eq!(c.kind, ComponentKind::OutTree);
            }
        }
    }

    #[test]
    fn random_corpus_covers_all_component_kinds() {
        let mut seen_tree = false;
        let mut seen_pure = false;
        let mut seen_mixed = false;
        for (_, g) in corpus(&[8, 10, 12], 40, 0.9).unwrap() {
            for comp in weakly_connected_components(&g) {
                match classify_component(&g, &comp).kind {
                    ComponentKind::OutTree => seen_tree = true,
                    ComponentKind::PureCycle => seen_pure = true,
                    ComponentKind::CycleWithTrees => seen_mixed = true,
                }
            }
        }
        assert!(seen_tree && seen_pure && seen_mixed);
    }

    #[test]
    fn corpus_follows_seed_schedule() {
        let c = corpus(&[5], 2, 0.9).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].0.seed, 50_000);
        assert_eq!(c[1].0.seed, 50_001);
        for (spec, g) in &c {
            assert_eq!(*g, generate(spec).unwrap());
        }
        assert!(corpus(&[], 100, 0.9).unwrap().is_empty());
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let bad = |shape, n| generate(&GenSpec { shape, n, seed: 0 }).unwrap_err();
        assert_eq!(
            bad(Shape::Random { p: 1.5 }, 5),
            GenError::InvalidProbability(1.5)
        );
        assert_eq!(bad(Shape::Path, 0), GenError::TooFewNodes { shape: "path" });
        assert_eq!(
            bad(Shape::Cycle, 0),
            GenError::TooFewNodes { shape: "cycle" }
        );
        assert_eq!(
            bad(Shape::Rho { cycle_len: 0 }, 5),
            GenError::BadCycleLength { cycle_len: 0, n: 5 }
        );
        assert_eq!(
            bad(Shape::Rho { cycle_len: 6 }, 5),
            GenError::BadCycleLength { cycle_len: 6, n: 5 }
        );
        assert_eq!(
            bad(Shape::Forest { components: 0 }, 5),
            GenError::BadComponentCount {
                components: 0,
                n: 5
            }
        );
        assert_eq!(
            bad(Shape::Forest { components: 9 }, 5),
            GenError::BadComponentCount {
                components: 9,
                n: 5
            }
        );
    }

    #[test]
    fn empty_random_graph_is_allowed() {
        let g = gen(Shape::Random { p: 0.9 }, 0, 3);
        assert_eq!(g.node_count(), 0);
    }
}
