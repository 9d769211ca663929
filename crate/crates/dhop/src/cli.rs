//! Command-line surface: solve, verify, oracle, compare, decompose, gen,
//! and bench subcommands over the graph text format.
//!
//! Machine-readable results go to standard output and are byte-identical
//! across runs on the same input; diagnostics and timings go to the error
//! stream (or a `--out` file for `bench`). Exit codes: 0 success, 1 invalid
//! set / solver-oracle mismatch, 2 usage or input error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde::Serialize;

use crate::decompose::{
    classify_component, depth_map, farthest_leaf, weakly_connected_components, ComponentKind,
};
use crate::generator::{corpus, generate, GenSpec, Shape};
use crate::graph::{Digraph, NodeId};
use crate::oracle::{brute_force_min, verify};
use crate::solver::{solve, CycleMode, DominatingSet, SolveConfig, TraceStep};

pub const EXIT_OK: i32 = 0;
/// An invalid candidate set, or a solver/oracle disagreement.
pub const EXIT_INVALID: i32 = 1;
/// Bad flags, unreadable or malformed input, or an instance the oracle refuses.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "dhop",
    version,
    about = "Minimum d-hop dominating sets on digraphs with indegree at most one"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CycleModeArg {
    /// exact handling of cycle components: ceil(n / (d+1)) per pure
    /// cycle, joint placement once a remnant fits inside the radius
    Optimal,
    /// literal published greedy: ceil(n / d) per pure cycle, leaf steps
    /// allowed to cut cycles; can exceed the minimum
    Paper,
}

impl CycleModeArg {
    fn mode(self) -> CycleMode {
        match self {
            CycleModeArg::Optimal => CycleMode::Optimal,
            CycleModeArg::Paper => CycleMode::PaperLiteral,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CycleModeArg::Optimal => "optimal",
            CycleModeArg::Paper => "paper",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeArg {
    Random,
    Path,
    Cycle,
    Star,
    Rho,
    Forest,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a d-hop dominating set of a graph file
    Solve {
        /// Hop radius (at least 1)
        #[arg(short = 'd', value_name = "RADIUS", value_parser = parse_positive)]
        d: usize,
        /// How cycle components are dominated
        #[arg(long, value_enum, default_value_t = CycleModeArg::Optimal)]
        cycle_mode: CycleModeArg,
        /// Print one line per greedy decision after the result
        #[arg(long)]
        trace: bool,
        /// Emit one JSON document instead of plain text
        #[arg(long)]
        json: bool,
        /// Input graph file
        file: PathBuf,
    },
    /// Check whether a candidate set d-hop dominates a graph
    Verify {
        #[arg(short = 'd', value_name = "RADIUS", value_parser = parse_positive)]
        d: usize,
        /// Comma-separated candidate dominator ids
        #[arg(long, value_name = "IDS")]
        set: String,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Exact minimum by exhaustive search (small instances only)
    Oracle {
        #[arg(short = 'd', value_name = "RADIUS", value_parser = parse_positive)]
        d: usize,
        /// Refuse instances with more alive nodes than this
        #[arg(long, default_value_t = 20)]
        cap: usize,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Run solver and oracle side by side; exit 1 on any size mismatch
    Compare {
        #[arg(short = 'd', value_name = "RADIUS", value_parser = parse_positive)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = CycleModeArg::Optimal)]
        cycle_mode: CycleModeArg,
        /// Check a seeded random corpus instead of a single file
        #[arg(long)]
        corpus: bool,
        /// Corpus node counts, comma-separated
        #[arg(long, value_name = "CSV", default_value = "4,5,6,7,8,9,10,11,12")]
        sizes: String,
        /// Corpus instances per size
        #[arg(long, default_value_t = 25, value_parser = parse_positive)]
        count: usize,
        /// Corpus parent probability
        #[arg(long, default_value_t = 0.9)]
        p: f64,
        /// Input graph file (omit with --corpus)
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
    },
    /// Describe each weakly connected component of a graph file
    Decompose { file: PathBuf },
    /// Generate a graph and print it in the text format
    Gen {
        #[arg(long, value_enum)]
        shape: ShapeArg,
        /// Node count
        #[arg(short = 'n', value_name = "NODES")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Parent probability (random shape only)
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Cycle length (rho shape only)
        #[arg(long, value_name = "LEN")]
        cycle_len: Option<usize>,
        /// Component count (forest shape only)
        #[arg(long, value_name = "COUNT")]
        components: Option<usize>,
    },
    /// Time the solver across instance sizes; timings go to stderr or --out
    Bench {
        #[arg(long, value_enum, default_value_t = ShapeArg::Random)]
        shape: ShapeArg,
        /// Node counts, comma-separated
        #[arg(long, value_name = "CSV")]
        sizes: String,
        /// Solves per instance; the result row is identical across trials
        #[arg(long, default_value_t = 3, value_parser = parse_positive)]
        trials: usize,
        #[arg(short = 'd', value_name = "RADIUS", default_value_t = 3, value_parser = parse_positive)]
        d: usize,
        /// Parent probability (random shape only)
        #[arg(long, default_value_t = 0.9)]
        p: f64,
        /// Write the timing CSV to this file instead of stderr
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Runs one invocation against explicit output streams and returns the exit
/// code. `args` includes the program name in position zero.
pub fn run_cli(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut impl Write, err: &mut impl Write) -> Result<i32, String> {
    match cmd {
        Cmd::Solve {
            d,
            cycle_mode,
            trace,
            json,
            file,
        } => cmd_solve(d, cycle_mode, trace, json, &file, out),
        Cmd::Verify { d, set, json, file } => cmd_verify(d, &set, json, &file, out),
        Cmd::Oracle { d, cap, json, file } => cmd_oracle(d, cap, json, &file, out),
        Cmd::Compare {
            d,
            cap,
            cycle_mode,
            corpus,
            sizes,
            count,
            p,
            file,
        } => cmd_compare(
            d,
            cap,
            cycle_mode,
            corpus,
            &sizes,
            count,
            p,
            file.as_deref(),
            out,
        ),
        Cmd::Decompose { file } => cmd_decompose(&file, out),
        Cmd::Gen {
            shape,
            n,
            seed,
            p,
            cycle_len,
            components,
        } => cmd_gen(shape, n, seed, p, cycle_len, components, out),
        Cmd::Bench {
            shape,
            sizes,
            trials,
            d,
            p,
            out: out_file,
        } => cmd_bench(shape, &sizes, trials, d, p, out_file.as_deref(), out, err),
    }
}

fn load(path: &Path) -> Result<Digraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Digraph::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit<W: Write>(out: &mut W, args: std::fmt::Arguments<'_>) -> Result<(), String> {
    out.write_fmt(args)
        .map_err(|e| format!("writing output: {e}"))
}

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        emit($out, format_args!("{}\n", format_args!($($arg)*)))?
    };
}

fn ids_csv(ids: &[NodeId]) -> String {
    ids.iter().join(",")
}

fn write_trace_steps(out: &mut impl Write, steps: &[TraceStep]) -> Result<(), String> {
    for (i, step) in steps.iter().enumerate() {
        let i = i + 1;
        match step {
            TraceStep::Leaf {
                leaf,
                dominator,
                removed,
                ..
            } => outln!(
                out,
                "step {i}: leaf v={leaf} dom u={dominator} removed={}",
                ids_csv(removed)
            ),
            TraceStep::Cycle {
                cycle_len,
                placed,
                removed,
            } => outln!(
                out,
                "step {i}: cycle len={cycle_len} placed={} removed={}",
                ids_csv(placed),
                ids_csv(removed)
            ),
            TraceStep::Exhaustive { members } => {
                outln!(out, "step {i}: exhaustive members={}", ids_csv(members))
            }
        }
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &mut impl Write, doc: &T) -> Result<(), String> {
    let line = serde_json::to_string(doc).map_err(|e| e.to_string())?;
    emit(out, format_args!("{line}\n"))
}

fn cmd_solve(
    d: usize,
    cycle_mode: CycleModeArg,
    trace: bool,
    json: bool,
    file: &Path,
    out: &mut impl Write,
) -> Result<i32, String> {
    let g = load(file)?;
    let sol = solve(&g, SolveConfig::with_mode(d, cycle_mode.mode()));
    if json {
        #[derive(Serialize)]
        struct Doc<'a> {
            command: &'static str,
            d: usize,
            mode: &'static str,
            k: usize,
            members: &'a [NodeId],
            trace: &'a [TraceStep],
        }
        write_json(
            out,
            &Doc {
                command: "solve",
                d,
                mode: cycle_mode.name(),
                k: sol.set.len(),
                members: &sol.set.members,
                trace: &sol.trace.steps,
            },
        )?;
    } else {
        outln!(out, "k={}", sol.set.len());
        if !sol.set.is_empty() {
            outln!(out, "{}", sol.set.members.iter().join(" "));
        }
        if trace {
            write_trace_steps(out, &sol.trace.steps)?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_set(raw: &str, g: &Digraph) -> Result<Vec<NodeId>, String> {
    let mut ids = Vec::new();
    for token in raw.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let id: NodeId = token
            .parse()
            .map_err(|_| format!("invalid node id {token:?} in --set"))?;
        if !g.is_alive(id) {
            return Err(format!("--set node {id} is not a node of the graph"));
        }
        ids.push(id);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn cmd_verify(
    d: usize,
    set: &str,
    json: bool,
    file: &Path,
    out: &mut impl Write,
) -> Result<i32, String> {
    let g = load(file)?;
    let members = parse_set(set, &g)?;
    let candidate = DominatingSet { members, d };
    let report = verify(&g, &candidate);
    if json {
        #[derive(Serialize)]
        struct Doc<'a> {
            command: &'static str,
            d: usize,
            set: &'a [NodeId],
            valid: bool,
            uncovered: &'a [NodeId],
        }
        write_json(
            out,
            &Doc {
                command: "verify",
                d,
                set: &candidate.members,
                valid: report.valid,
                uncovered: &report.uncovered,
            },
        )?;
    } else if report.valid {
        outln!(out, "valid");
    } else {
        outln!(out, "invalid");
        outln!(out, "uncovered={}", ids_csv(&report.uncovered));
    }
    Ok(if report.valid { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_oracle(
    d: usize,
    cap: usize,
    json: bool,
    file: &Path,
    out: &mut impl Write,
) -> Result<i32, String> {
    let g = load(file)?;
    let sol = brute_force_min(&g, d, cap).map_err(|e| e.to_string())?;
    if json {
        #[derive(Serialize)]
        struct Doc<'a> {
            command: &'static str,
            d: usize,
            k: usize,
            members: &'a [NodeId],
        }
        write_json(
            out,
            &Doc {
                command: "oracle",
                d,
                k: sol.set.len(),
                members: &sol.set.members,
            },
        )?;
    } else {
        outln!(out, "k={}", sol.set.len());
        if !sol.set.is_empty() {
            outln!(out, "{}", sol.set.members.iter().join(" "));
        }
    }
    Ok(EXIT_OK)
}

/// Outcome of one solver-vs-oracle check.
enum CheckOutcome {
    Ok { k: usize },
    Mismatch { solve: usize, oracle: usize },
    Invalid { uncovered: Vec<NodeId> },
}

fn check_instance(
    g: &Digraph,
    d: usize,
    cap: usize,
    mode: CycleMode,
) -> Result<CheckOutcome, String> {
    let greedy = solve(g, SolveConfig::with_mode(d, mode));
    let report = verify(g, &greedy.set);
    if !report.valid {
        return Ok(CheckOutcome::Invalid {
            uncovered: report.uncovered,
        });
    }
    let oracle = brute_force_min(g, d, cap).map_err(|e| e.to_string())?;
    if greedy.set.len() == oracle.set.len() {
        Ok(CheckOutcome::Ok {
            k: greedy.set.len(),
        })
    } else {
        Ok(CheckOutcome::Mismatch {
            solve: greedy.set.len(),
            oracle: oracle.set.len(),
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    d: usize,
    cap: usize,
    cycle_mode: CycleModeArg,
    use_corpus: bool,
    sizes: &str,
    count: usize,
    p: f64,
    file: Option<&Path>,
    out: &mut impl Write,
) -> Result<i32, String> {
    if !use_corpus {
        let file = file.expect("clap requires a file without --corpus");
        let g = load(file)?;
        return match check_instance(&g, d, cap, cycle_mode.mode())? {
            CheckOutcome::Ok { k } => {
                outln!(out, "ok n={} d={d} k={k}", g.node_count());
                Ok(EXIT_OK)
            }
            CheckOutcome::Mismatch { solve, oracle } => {
                outln!(
                    out,
                    "MISMATCH n={} d={d} solve={solve} oracle={oracle}",
                    g.node_count()
                );
                Ok(EXIT_INVALID)
            }
            CheckOutcome::Invalid { uncovered } => {
                outln!(
                    out,
                    "INVALID n={} d={d} uncovered={}",
                    g.node_count(),
                    ids_csv(&uncovered)
                );
                Ok(EXIT_INVALID)
            }
        };
    }

    let sizes = parse_sizes(sizes)?;
    let instances = corpus(&sizes, count, p).map_err(|e| e.to_string())?;
    let mut failures = 0usize;
    for (spec, g) in &instances {
        match check_instance(g, d, cap, cycle_mode.mode())? {
            CheckOutcome::Ok { .. } => {}
            CheckOutcome::Mismatch { solve, oracle } => {
                failures += 1;
                outln!(
                    out,
                    "MISMATCH n={} seed={} d={d} solve={solve} oracle={oracle}",
                    spec.n,
                    spec.seed
                );
            }
            CheckOutcome::Invalid { uncovered } => {
                failures += 1;
                outln!(
                    out,
                    "INVALID n={} seed={} d={d} uncovered={}",
                    spec.n,
                    spec.seed,
                    ids_csv(&uncovered)
                );
            }
        }
    }
    outln!(out, "checked={} failures={failures}", instances.len());
    Ok(if failures == 0 { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_decompose(file: &Path, out: &mut impl Write) -> Result<i32, String> {
    let g = load(file)?;
    for comp in weakly_connected_components(&g) {
        let c = classify_component(&g, &comp);
        let depths = depth_map(&g, &c);
        let kind = match c.kind {
            ComponentKind::OutTree => "out_tree",
            ComponentKind::PureCycle => "pure_cycle",
            ComponentKind::CycleWithTrees => "cycle_with_trees",
        };
        let anchor = c.root.unwrap_or_else(|| c.cycle[0]);
        let (leaf, leaf_depth) = match farthest_leaf(&g, &c) {
            Some(leaf) => (
                leaf.to_string(),
                depths.depth(leaf).expect("leaf has a depth").to_string(),
            ),
            None => ("-".into(), "-".into()),
        };
        outln!(
            out,
            "kind={kind} size={} cycle_len={} anchor={anchor} leaf={leaf} leaf_depth={leaf_depth}",
            c.nodes.len(),
            c.cycle.len()
        );
    }
    Ok(EXIT_OK)
}

fn cmd_gen(
    shape: ShapeArg,
    n: usize,
    seed: u64,
    p: f64,
    cycle_len: Option<usize>,
    components: Option<usize>,
    out: &mut impl Write,
) -> Result<i32, String> {
    let shape = match shape {
        ShapeArg::Random => Shape::Random { p },
        ShapeArg::Path => Shape::Path,
        ShapeArg::Cycle => Shape::Cycle,
        ShapeArg::Star => Shape::Star,
        ShapeArg::Rho => Shape::Rho {
            cycle_len: cycle_len.ok_or("--shape rho requires --cycle-len")?,
        },
        ShapeArg::Forest => Shape::Forest {
            components: components.ok_or("--shape forest requires --components")?,
        },
    };
    let spec = GenSpec { shape, n, seed };
    let g = generate(&spec).map_err(|e| e.to_string())?;
    let params = match shape {
        Shape::Random { p } => format!(" p={p}"),
        Shape::Rho { cycle_len } => format!(" cycle_len={cycle_len}"),
        Shape::Forest { components } => format!(" components={components}"),
        _ => String::new(),
    };
    outln!(out, "# shape={} n={n} seed={seed}{params}", shape.name());
    emit(out, format_args!("{}", g.to_text()))?;
    Ok(EXIT_OK)
}

fn parse_sizes(raw: &str) -> Result<Vec<usize>, String> {
    let sizes: Result<Vec<usize>, String> = raw
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("invalid size {t:?} in --sizes"))
        })
        .collect();
    let sizes = sizes?;
    if sizes.is_empty() {
        return Err("--sizes must list at least one node count".into());
    }
    Ok(sizes)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    shape: ShapeArg,
    sizes: &str,
    trials: usize,
    d: usize,
    p: f64,
    out_file: Option<&Path>,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<i32, String> {
    let shape = match shape {
        ShapeArg::Random => Shape::Random { p },
        ShapeArg::Path => Shape::Path,
        ShapeArg::Cycle => Shape::Cycle,
        ShapeArg::Star => Shape::Star,
        ShapeArg::Rho | ShapeArg::Forest => {
            return Err("bench supports shapes without extra parameters: \
                        random, path, cycle, star"
                .into())
        }
    };
    let sizes = parse_sizes(sizes)?;
    let mut timings = vec!["shape,n,d,seed,trial,wall_ms".to_string()];
    outln!(out, "shape,n,d,seed,k");
    for &n in &sizes {
        let seed = n as u64 * 10_000;
        let g = generate(&GenSpec { shape, n, seed }).map_err(|e| e.to_string())?;
        let mut k: Option<usize> = None;
        for trial in 0..trials {
            let start = Instant::now();
            let sol = solve(&g, SolveConfig::new(d));
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            timings.push(format!(
                "{},{n},{d},{seed},{trial},{wall_ms:.3}",
                shape.name()
            ));
            if let Some(prev) = k {
                assert_eq!(prev, sol.set.len(), "solver must be deterministic");
            }
            k = Some(sol.set.len());
        }
        outln!(out, "{},{n},{d},{seed},{}", shape.name(), k.unwrap());
    }
    let timing_csv = timings.join("\n") + "\n";
    match out_file {
        Some(path) => {
            std::fs::write(path, timing_csv).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => emit(err, format_args!("{timing_csv}"))?,
    }
    Ok(EXIT_OK)
}
