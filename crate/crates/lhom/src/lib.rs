//! Command-line front end for the list H-colouring solver: solve,
//! ordering checks, instance generation, the brute-force oracle,
//! differential fuzzing, and configuration-graph export.
//!
//! Exit codes: 0 a homomorphism exists (TRUE), 1 none exists (FALSE),
//! 2 the input is outside the multi-chain class, 3 usage or I/O errors.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use listhom::{
    apply_reductions, brute_force, brute_force_with_cap, build_configuration_graph, build_graph,
    configuration_count, connected_components, count_homomorphisms, find_ordering,
    induced_subgraph, is_homomorphism, lh_solve, obeys_lists, ordering_from, permutation_graph,
    random_instance, reachability, ConfigGraph, Counterexample, Error, Family, Graph, Homomorphism,
    ListMapping, MultiChainOrdering, PermutationSpec, RandomInstance, SolveResult,
    DEFAULT_SIZE_CAP,
};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_NOT_IN_CLASS: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// One self-contained problem instance.
///
/// `lists` defaults to every vertex allowing every target vertex. The
/// target is either an explicit graph or `{"k": n}` for the loopless
/// complete graph, which turns the solver into a k-list colourer.
#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub graph: GraphDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lists: Option<Vec<Vec<usize>>>,
    pub target: TargetDocument,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetDocument {
    Explicit {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
    Complete {
        k: usize,
    },
}

/// Stable shape of `solve --json` and `oracle --json` output.
#[derive(Debug, Serialize, Deserialize)]
pub struct SolveOutput {
    pub result: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

#[derive(Debug, Parser)]
#[command(
    name = "lhom",
    version,
    about = "List H-colouring of permutation and interval graphs",
    after_help = "Exit codes: 0 TRUE, 1 FALSE, 2 not in the multi-chain class, 3 usage or I/O."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide an instance and optionally print a witness homomorphism.
    Solve {
        /// Instance JSON file, or `-` for standard input.
        instance: PathBuf,
        /// Print the witness as an n-array on TRUE.
        #[arg(long)]
        witness: bool,
        /// Emit a JSON object instead of text.
        #[arg(long)]
        json: bool,
        /// Fall back to the exhaustive oracle when the input is out of
        /// class (subject to the oracle size cap).
        #[arg(long)]
        fallback_brute: bool,
    },
    /// Report multi-chain orderings of the instance graph, per component.
    CheckOrdering {
        /// Instance JSON file, or `-` for standard input.
        instance: PathBuf,
        /// Only check BFS layers from this start vertex (its component).
        #[arg(long, conflicts_with = "all_starts")]
        start: Option<usize>,
        /// Try every vertex of every component as the BFS start.
        #[arg(long)]
        all_starts: bool,
    },
    /// Write a generated instance document to standard output.
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
    /// Decide an instance by exhaustive backtracking (small inputs only).
    Oracle {
        /// Instance JSON file, or `-` for standard input.
        instance: PathBuf,
        /// Also count all list homomorphisms.
        #[arg(long)]
        count: bool,
        /// Print the witness as an n-array on TRUE.
        #[arg(long)]
        witness: bool,
        /// Emit a JSON object instead of text.
        #[arg(long)]
        json: bool,
        /// Raise or lower the input-size cap (default 20 vertices).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run seeded random instances through solver and oracle and compare.
    Fuzz(FuzzArgs),
    /// Render the configuration graph of one component as DOT.
    ExportConfigs {
        /// Instance JSON file, or `-` for standard input.
        instance: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Refuse when the configuration count would exceed this.
        #[arg(long, default_value_t = 100_000)]
        max_nodes: u128,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Permutation graph: explicit one-based permutation, or seeded random.
    Permutation(PermutationArgs),
    /// Random interval intersection graph.
    Interval(RandomArgs),
    /// The n-cycle, full lists.
    Cycle(SizedArgs),
    /// Complement of the n-cycle, full lists.
    CoCycle(SizedArgs),
    /// K_{1,3} with each edge subdivided once, full lists.
    Claw(KOnlyArgs),
    /// Complement of the subdivided claw, full lists.
    CoClaw(KOnlyArgs),
    /// Erdős–Rényi graph with edge probability 1/2 (at most 10 vertices).
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct PermutationArgs {
    /// Explicit permutation, one-based, e.g. `--pi 2,1,4,3`.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "seed", "density"])]
    pub pi: Option<Vec<usize>>,
    /// Number of elements for a seeded random permutation.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of target vertices.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// List density for the random mode; 1.0 (full lists) by default.
    #[arg(long)]
    pub density: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// List density; 1.0 (full lists) by default.
    #[arg(long)]
    pub density: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    /// Largest input graph to draw (must stay within the oracle cap).
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    /// Number of target vertices.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FamilyArg::All)]
    pub family: FamilyArg,
    /// Fixed list density; defaults to cycling 0.4 / 0.7 / 1.0.
    #[arg(long)]
    pub density: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SizedArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct KOnlyArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Permutation,
    Interval,
    Arbitrary,
    All,
}

/// Runs a parsed command, writing reports to `out` and diagnostics to
/// `err`; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let code = match cli.command {
        Command::Solve {
            instance,
            witness,
            json,
            fallback_brute,
        } => cmd_solve(&instance, witness, json, fallback_brute, out, err),
        Command::CheckOrdering {
            instance,
            start,
            all_starts,
        } => cmd_check_ordering(&instance, start, all_starts, out, err),
        Command::Gen { family } => cmd_gen(family, out, err),
        Command::Oracle {
            instance,
            count,
            witness,
            json,
            cap,
        } => cmd_oracle(&instance, count, witness, json, cap, out, err),
        Command::Fuzz(args) => cmd_fuzz(&args, out, err),
        Command::ExportConfigs {
            instance,
            dot,
            max_nodes,
        } => cmd_export_configs(&instance, dot.as_deref(), max_nodes, out, err),
    };
    let _ = out.flush();
    code
}

fn fail(err: &mut dyn Write, message: impl AsRef<str>) -> i32 {
    let _ = writeln!(err, "error: {}", message.as_ref());
    EXIT_USAGE
}

/// Reads and parses an instance document; `-` means standard input.
pub fn load_instance(path: &Path) -> Result<InstanceDocument, String> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?
    };
    serde_json::from_str(&text).map_err(|e| format!("parsing {}: {e}", path.display()))
}

/// Materializes the document into solver inputs, validating everything.
pub fn instance_parts(doc: &InstanceDocument) -> Result<(Graph, ListMapping, Graph), String> {
    let g = build_graph(doc.graph.n, &doc.graph.edges).map_err(|e| format!("graph: {e}"))?;
    let h = match &doc.target {
        TargetDocument::Complete { k } => Graph::complete(*k),
        TargetDocument::Explicit { n, edges } => {
            build_graph(*n, edges).map_err(|e| format!("target: {e}"))?
        }
    };
    let p = match &doc.lists {
        Some(lists) => {
            if lists.len() != g.vertex_count() {
                return Err(format!(
                    "lists: {} entries for {} vertices",
                    lists.len(),
                    g.vertex_count()
                ));
            }
            ListMapping::new(lists.clone())
        }
        None => ListMapping::full(g.vertex_count(), h.vertex_count()),
    };
    p.validate(h.vertex_count())
        .map_err(|e| format!("lists: {e}"))?;
    Ok((g, p, h))
}

fn load_parts(path: &Path) -> Result<(Graph, ListMapping, Graph), String> {
    instance_parts(&load_instance(path)?)
}

fn emit_answer(
    found: Option<&Homomorphism>,
    count: Option<u64>,
    witness_flag: bool,
    json: bool,
    out: &mut dyn Write,
) -> i32 {
    if json {
        let output = SolveOutput {
            result: found.is_some(),
            witness: found.map(|f| f.image.clone()),
            count,
        };
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string(&output).expect("serializable")
        );
    } else {
        let _ = writeln!(out, "{}", if found.is_some() { "TRUE" } else { "FALSE" });
        if witness_flag {
            if let Some(f) = found {
                let _ = writeln!(
                    out,
                    "witness: {}",
                    serde_json::to_string(&f.image).expect("serializable")
                );
            }
        }
        if let Some(c) = count {
            let _ = writeln!(out, "count: {c}");
        }
    }
    if found.is_some() {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

fn cmd_solve(
    path: &Path,
    witness: bool,
    json: bool,
    fallback_brute: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (g, p, h) = match load_parts(path) {
        Ok(parts) => parts,
        Err(msg) => return fail(err, msg),
    };
    match lh_solve(&g, &p, &h) {
        Ok(SolveResult::True(f)) => emit_answer(Some(&f), None, witness, json, out),
        Ok(SolveResult::False) => emit_answer(None, None, witness, json, out),
        Err(Error::NotInClass { subgraph }) => {
            if fallback_brute {
                match brute_force(&g, &p, &h) {
                    Ok(found) => emit_answer(found.as_ref(), None, witness, json, out),
                    Err(e) => fail(err, format!("brute-force fallback: {e}")),
                }
            } else {
                if json {
                    let _ = writeln!(out, "{{\"error\":\"not-in-class\"}}");
                } else {
                    let _ = writeln!(out, "NOT-IN-CLASS");
                }
                let _ = writeln!(
                    err,
                    "a connected induced subgraph on {} vertices has no multi-chain ordering; \
                     rerun with --fallback-brute to decide it exhaustively",
                    subgraph.vertex_count()
                );
                EXIT_NOT_IN_CLASS
            }
        }
        Err(e) => fail(err, e.to_string()),
    }
}

fn cmd_oracle(
    path: &Path,
    count: bool,
    witness: bool,
    json: bool,
    cap: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (g, p, h) = match load_parts(path) {
        Ok(parts) => parts,
        Err(msg) => return fail(err, msg),
    };
    let found = match brute_force_with_cap(&g, &p, &h, cap.unwrap_or(DEFAULT_SIZE_CAP)) {
        Ok(found) => found,
        Err(e) => return fail(err, e.to_string()),
    };
    let homomorphism_count = if count {
        match count_homomorphisms(&g, &p, &h) {
            Ok(c) => Some(c),
            Err(e) => return fail(err, e.to_string()),
        }
    } else {
        None
    };
    emit_answer(found.as_ref(), homomorphism_count, witness, json, out)
}

fn cmd_check_ordering(
    path: &Path,
    start: Option<usize>,
    all_starts: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (g, _, _) = match load_parts(path) {
        Ok(parts) => parts,
        Err(msg) => return fail(err, msg),
    };
    if let Some(v) = start {
        if v >= g.vertex_count() {
            return fail(err, format!("start vertex {v} out of range"));
        }
    }
    for (idx, comp) in connected_components(&g).iter().enumerate() {
        let (sub, map) = induced_subgraph(&g, comp);
        if let Some(v) = start {
            let Some(local) = map.to_new(v) else {
                continue; // --start only reports on the component holding it
            };
            match ordering_from(&sub, local) {
                Ok(Some(ordering)) => {
                    let _ = writeln!(
                        out,
                        "component {idx} ({} vertices): multi-chain ordering from vertex {v}",
                        comp.len()
                    );
                    describe_ordering(&ordering, &map.to_old, out);
                }
                Ok(None) => {
                    let _ = writeln!(
                        out,
                        "component {idx} ({} vertices): no multi-chain ordering from vertex {v}",
                        comp.len()
                    );
                }
                Err(e) => return fail(err, e.to_string()),
            }
            continue;
        }
        if all_starts {
            let mut good = Vec::new();
            for local in 0..sub.vertex_count() {
                match ordering_from(&sub, local) {
                    Ok(Some(_)) => good.push(map.to_old[local]),
                    Ok(None) => {}
                    Err(e) => return fail(err, e.to_string()),
                }
            }
            if good.is_empty() {
                let _ = writeln!(
                    out,
                    "component {idx} ({} vertices): no multi-chain ordering from any start",
                    comp.len()
                );
            } else {
                let starts: Vec<String> = good.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "component {idx} ({} vertices): orderings from starts {}",
                    comp.len(),
                    starts.join(", ")
                );
            }
            continue;
        }
        match find_ordering(&sub, None) {
            Ok(Some(ordering)) => {
                let _ = writeln!(
                    out,
                    "component {idx} ({} vertices): multi-chain ordering from vertex {}",
                    comp.len(),
                    map.to_old[ordering.layers.start]
                );
                describe_ordering(&ordering, &map.to_old, out);
            }
            Ok(None) => {
                let _ = writeln!(
                    out,
                    "component {idx} ({} vertices): no multi-chain ordering from any start",
                    comp.len()
                );
            }
            Err(e) => return fail(err, e.to_string()),
        }
    }
    EXIT_TRUE
}

fn describe_ordering(ordering: &MultiChainOrdering, to_old: &[usize], out: &mut dyn Write) {
    for (i, layer) in ordering.order.iter().enumerate() {
        let cells: Vec<String> = layer
            .iter()
            .map(|&v| {
                format!(
                    "{} [d-={} d+={}]",
                    to_old[v], ordering.d_minus[v], ordering.d_plus[v]
                )
            })
            .collect();
        let _ = writeln!(out, "  layer {i}: {}", cells.join(", "));
    }
}

fn document_for_graph(g: &Graph, k: usize) -> InstanceDocument {
    InstanceDocument {
        graph: GraphDocument {
            n: g.vertex_count(),
            edges: g.edges().to_vec(),
        },
        lists: None,
        target: TargetDocument::Complete { k },
    }
}

fn document_for_instance(inst: &RandomInstance) -> InstanceDocument {
    InstanceDocument {
        graph: GraphDocument {
            n: inst.g.vertex_count(),
            edges: inst.g.edges().to_vec(),
        },
        lists: Some(inst.lists.iter().map(<[usize]>::to_vec).collect()),
        target: TargetDocument::Explicit {
            n: inst.h.vertex_count(),
            edges: inst.h.edges().to_vec(),
        },
    }
}

fn cmd_gen(family: GenCommand, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let doc = match build_document(family) {
        Ok(doc) => doc,
        Err(msg) => return fail(err, msg),
    };
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&doc).expect("serializable")
    );
    EXIT_TRUE
}

fn build_document(family: GenCommand) -> Result<InstanceDocument, String> {
    let catalog = |which, k| -> Result<InstanceDocument, String> {
        let g = listhom::counterexample(which).map_err(|e| e.to_string())?;
        Ok(document_for_graph(&g, k))
    };
    match family {
        GenCommand::Permutation(args) => match (args.pi, args.n) {
            (Some(pi), _) => {
                let spec = PermutationSpec::from_one_based(&pi).map_err(|e| e.to_string())?;
                Ok(document_for_graph(&permutation_graph(&spec), args.k))
            }
            (None, Some(n)) => {
                let inst = random_instance(
                    args.seed,
                    n,
                    args.k,
                    args.density.unwrap_or(1.0),
                    Family::Permutation,
                )
                .map_err(|e| e.to_string())?;
                Ok(document_for_instance(&inst))
            }
            (None, None) => Err("gen permutation needs either --pi or --n".into()),
        },
        GenCommand::Interval(args) => {
            let inst = random_instance(
                args.seed,
                args.n,
                args.k,
                args.density.unwrap_or(1.0),
                Family::Interval,
            )
            .map_err(|e| e.to_string())?;
            Ok(document_for_instance(&inst))
        }
        GenCommand::Random(args) => {
            let inst = random_instance(
                args.seed,
                args.n,
                args.k,
                args.density.unwrap_or(1.0),
                Family::ArbitrarySmall,
            )
            .map_err(|e| e.to_string())?;
            Ok(document_for_instance(&inst))
        }
        GenCommand::Cycle(args) => catalog(Counterexample::Cycle(args.n), args.k),
        GenCommand::CoCycle(args) => catalog(Counterexample::CoCycle(args.n), args.k),
        GenCommand::Claw(args) => catalog(Counterexample::SubdividedClaw, args.k),
        GenCommand::CoClaw(args) => catalog(Counterexample::CoSubdividedClaw, args.k),
    }
}

fn cmd_fuzz(args: &FuzzArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let &FuzzArgs {
        trials,
        max_n,
        k,
        seed,
        family,
        density,
    } = args;
    if max_n == 0 || max_n > DEFAULT_SIZE_CAP {
        return fail(
            err,
            format!("--max-n must be between 1 and the oracle cap {DEFAULT_SIZE_CAP}"),
        );
    }
    if k == 0 {
        return fail(err, "--k must be at least 1");
    }
    if let Some(d) = density {
        if !(d > 0.0 && d <= 1.0) {
            return fail(err, "--density must be in (0, 1]");
        }
    }
    let density_cycle = [0.4, 0.7, 1.0];
    let mut true_count = 0u64;
    let mut false_count = 0u64;
    let mut skipped = 0u64;
    let mut failures: Vec<(u64, String)> = Vec::new();

    for t in 0..trials {
        // Every per-trial choice derives from the trial seed alone, so a
        // failing trial reproduces with --trials 1 --seed <trial seed>.
        let s = seed.wrapping_add(t);
        let fam = match family {
            FamilyArg::Permutation => Family::Permutation,
            FamilyArg::Interval => Family::Interval,
            FamilyArg::Arbitrary => Family::ArbitrarySmall,
            FamilyArg::All => [
                Family::Permutation,
                Family::Interval,
                Family::ArbitrarySmall,
            ][(s % 3) as usize],
        };
        let mut n = 1 + (s % max_n as u64) as usize;
        if fam == Family::ArbitrarySmall {
            n = n.min(10);
        }
        let d = density.unwrap_or(density_cycle[((s / 3) % 3) as usize]);
        let inst = match random_instance(s, n, k, d, fam) {
            Ok(inst) => inst,
            Err(e) => return fail(err, format!("trial {t}: {e}")),
        };
        let oracle = match brute_force(&inst.g, &inst.lists, &inst.h) {
            Ok(found) => found,
            Err(e) => return fail(err, format!("trial {t}: oracle: {e}")),
        };
        match lh_solve(&inst.g, &inst.lists, &inst.h) {
            Ok(SolveResult::True(f)) => {
                if oracle.is_none() {
                    failures.push((s, "solver TRUE, oracle FALSE".into()));
                } else if !is_homomorphism(&inst.g, &inst.h, &f) || !obeys_lists(&f, &inst.lists) {
                    failures.push((s, "witness failed validation".into()));
                } else {
                    true_count += 1;
                }
            }
            Ok(SolveResult::False) => {
                if oracle.is_some() {
                    failures.push((s, "solver FALSE, oracle TRUE".into()));
                } else {
                    false_count += 1;
                }
            }
            Err(Error::NotInClass { .. }) => {
                if fam == Family::ArbitrarySmall {
                    skipped += 1;
                } else {
                    failures.push((s, "generator family left the multi-chain class".into()));
                }
            }
            Err(e) => failures.push((s, format!("solver error: {e}"))),
        }
    }

    let _ = writeln!(
        out,
        "fuzz: {trials} trials, k={k}, max-n={max_n}, seed={seed}"
    );
    let _ = writeln!(
        out,
        "  {true_count} TRUE, {false_count} FALSE, {skipped} skipped (out of class)"
    );
    let _ = writeln!(out, "  {} disagreements", failures.len());
    for (s, what) in &failures {
        let _ = writeln!(out, "  seed {s}: {what}");
        let _ = writeln!(
            out,
            "    reproduce with: lhom fuzz --trials 1 --seed {s} --max-n {max_n} --k {k}{}",
            density
                .map(|d| format!(" --density {d}"))
                .unwrap_or_default()
        );
    }
    if failures.is_empty() {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

fn cmd_export_configs(
    path: &Path,
    dot: Option<&Path>,
    max_nodes: u128,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (g, p, h) = match load_parts(path) {
        Ok(parts) => parts,
        Err(msg) => return fail(err, msg),
    };
    // The configuration graph is defined after the solver's reductions.
    let (g, p, h) = apply_reductions(&g, &p, &h);
    let k = h.vertex_count();
    if g.vertex_count() == 0 {
        return fail(
            err,
            "the instance reduces to nothing; there is no configuration graph",
        );
    }
    if k < 3 {
        return fail(
            err,
            format!("after reductions the target has {k} vertices; the configuration machinery only engages for 3 or more"),
        );
    }
    let comp = connected_components(&g).remove(0);
    let (sub, _) = induced_subgraph(&g, &comp);
    let lists = {
        let (_, map) = induced_subgraph(&g, &comp);
        p.restrict_vertices(&map)
    };
    let ordering = match find_ordering(&sub, None) {
        Ok(Some(o)) => o,
        Ok(None) => {
            let _ = writeln!(
                err,
                "the first component ({} vertices) has no multi-chain ordering",
                sub.vertex_count()
            );
            return EXIT_NOT_IN_CLASS;
        }
        Err(e) => return fail(err, e.to_string()),
    };
    let mut projected: u128 = 2;
    for t in 1..=ordering.z() {
        match configuration_count(ordering.order[t].len(), k).and_then(|c| projected.checked_add(c))
        {
            Some(total) => projected = total,
            None => return fail(err, "configuration count overflows"),
        }
    }
    if projected > max_nodes {
        return fail(
            err,
            format!("refusing to build {projected} configurations (cap {max_nodes}; raise with --max-nodes)"),
        );
    }
    let cg = match build_configuration_graph(&sub, &lists, &h, &ordering) {
        Ok(cg) => cg,
        Err(e) => return fail(err, e.to_string()),
    };
    let rendered = render_dot(&cg);
    match dot {
        Some(file) => {
            if let Err(e) = fs::write(file, rendered) {
                return fail(err, format!("writing {}: {e}", file.display()));
            }
            let _ = writeln!(
                out,
                "wrote {} nodes and {} edges to {}",
                cg.node_count(),
                cg.edge_count(),
                file.display()
            );
        }
        None => {
            let _ = out.write_all(rendered.as_bytes());
        }
    }
    EXIT_TRUE
}

fn render_dot(cg: &ConfigGraph) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let last = cg.nodes.len() - 1;
    let on_path: Vec<usize> = reachability(cg).unwrap_or_default();
    s.push_str("digraph configuration_graph {\n  rankdir=LR;\n  node [shape=box];\n");
    for (t, layer) in cg.nodes.iter().enumerate() {
        for (i, cfg) in layer.iter().enumerate() {
            let label = if t == 0 {
                "S_0 (start)".to_string()
            } else if t == last {
                format!("S_{t} (end)")
            } else {
                let bounds: Vec<String> = cfg.bounds.iter().map(usize::to_string).collect();
                format!("({t}, [{}])", bounds.join(","))
            };
            let accent = if t == 0 || t == last {
                ", style=bold"
            } else {
                ""
            };
            let _ = writeln!(s, "  n{t}_{i} [label=\"{label}\"{accent}];");
        }
    }
    for (t, boundary) in cg.edges.iter().enumerate() {
        for (e_idx, e) in boundary.iter().enumerate() {
            let marker = if on_path.get(t) == Some(&e_idx) {
                " [penwidth=2]"
            } else {
                ""
            };
            let _ = writeln!(s, "  n{t}_{} -> n{}_{}{marker};", e.from, t + 1, e.to);
        }
    }
    s.push_str("}\n");
    s
}
