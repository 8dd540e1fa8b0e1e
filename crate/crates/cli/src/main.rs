//! Command-line front end: classify an edge-list graph and count its trees,
//! derive clique-level structures, generate seeded instances, and run the
//! doubling ladder for the two linear counting pipelines.
//!
//! Exit codes: 0 on success, 1 on parse or usage errors, 2 when the
//! classification differs from `--expect`.

mod dot;
mod edgelist;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cliquecount::bench::run_ladder;
use cliquecount::{
    analyze, block_graph_from_sizes, clique_intersection_graph, count_clique_trees_general,
    count_clique_trees_ktree_counted, count_spanning_trees_block_counted, cr_equals_k_line,
    enumerate_clique_trees, enumerate_spanning_trees, k_line_graph_capped, kirchhoff_count,
    random_k_tree, recognize_block_graph, recognize_k_tree, reduced_clique_graph, BigCount,
    ChordalAnalysis, ChordalError, GenSpec, Graph, KTreeDecision, OracleError, K_CLIQUE_CAP,
};

use report::{InputInfo, OpCount, ResultDocument, SeparatorEntry};

/// Kirchhoff verification builds a dense arbitrary-precision Laplacian, so
/// it is only attempted below this many nodes; larger inputs report
/// "cap-exceeded" for the determinant oracles.
const DETERMINANT_NODE_LIMIT: usize = 256;

#[derive(Parser)]
#[command(
    name = "cliquecount",
    version,
    about = "Recognize chordal graphs, k-trees and block graphs; count their clique trees and spanning trees exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a graph and count clique trees / spanning trees.
    Analyze(AnalyzeArgs),
    /// Emit a derived clique-level graph as an edge list.
    Derive(DeriveArgs),
    /// Generate a seeded instance and print it as an edge list.
    Generate(GenerateArgs),
    /// Time the two linear pipelines over a ladder of doubling sizes.
    Bench(BenchArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Edge-list file (`n m` header, one `u v` pair per line, `#` comments).
    path: PathBuf,
    /// Cross-check the counts against the slow oracles (determinants and
    /// exhaustive enumeration); verdicts land under `oracle_agreement`.
    #[arg(long)]
    verify: bool,
    /// Recursion-step budget for the enumeration oracles under --verify.
    #[arg(long, value_name = "N", default_value_t = 1_000_000_000)]
    oracle_cap: u64,
    /// Exit with code 2 unless the classification matches.
    #[arg(long, value_enum, value_name = "CLASS")]
    expect: Option<ExpectClass>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum ExpectClass {
    /// Accepted as a k-tree (any k).
    KTree,
    /// Every biconnected component is complete.
    BlockGraph,
    /// Chordal, whether or not a stricter class also applies.
    Chordal,
    /// Connected but contains a chordless cycle.
    NotChordal,
    Disconnected,
}

#[derive(Args)]
struct DeriveArgs {
    /// Edge-list file to derive from.
    path: PathBuf,
    /// Which structure to emit.
    #[arg(long, value_enum, value_name = "WHAT")]
    what: DeriveWhat,
    /// Clique size for --what kline (at least 2).
    #[arg(short, value_name = "K")]
    k: Option<usize>,
    /// Also write a Graphviz DOT rendering to this path.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum DeriveWhat {
    /// Reduced clique graph (edges are separating intersections).
    Cr,
    /// k-line graph: k-cliques joined when sharing k−1 vertices.
    Kline,
    /// A clique tree with its separators.
    CliqueTree,
    /// Biconnected components and cut vertices.
    Blocks,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GenerateFamily {
    /// Generate a k-tree.
    #[arg(long)]
    ktree: bool,
    /// Generate a connected block graph.
    #[arg(long)]
    block: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    family: GenerateFamily,
    /// Vertices to generate.
    #[arg(short, value_name = "N", default_value_t = 10)]
    n: usize,
    /// Tree width for --ktree; maximum block size for --block.
    #[arg(short, value_name = "K", default_value_t = 2)]
    k: usize,
    /// Generator seed; equal seeds give byte-identical output.
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// 0.0 grows paths/chains, 1.0 grows stars.
    #[arg(long, value_name = "B", default_value_t = 0.5)]
    bias: f64,
    /// Exact block sizes for --block (e.g. 3,3); overrides -n and -k.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    blocks: Option<Vec<usize>>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated ladder of instance sizes.
    #[arg(
        long = "bench-ladder",
        value_name = "LIST",
        value_delimiter = ',',
        default_value = "16384,32768,65536,131072,262144,524288,1048576"
    )]
    bench_ladder: Vec<usize>,
    /// Timing repetitions per point (minimum is reported).
    #[arg(long, value_name = "R", default_value_t = 5)]
    reps: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Derive(args) => cmd_derive(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (n, edges) =
        edgelist::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Graph::build(n, &edges).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Writes to stdout; a broken pipe (the consumer hung up, e.g. `| head`)
/// ends the process quietly instead of panicking.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let outcome = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    if let Err(e) = outcome {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing to stdout: {e}");
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- analyze

fn cmd_analyze(args: &AnalyzeArgs) -> Result<ExitCode> {
    let g = load_graph(&args.path)?;

    let started = Instant::now();
    let decision = recognize_k_tree(&g);
    let block = recognize_block_graph(&g);
    let chordal = analyze(&g);

    let accepted_k = match &decision {
        KTreeDecision::Accepted { k, .. } => Some(*k),
        KTreeDecision::Rejected(_) => None,
    };
    let (classification, witness_cycle) = if let Some(k) = accepted_k {
        (format!("k-tree({k})"), None)
    } else if block.is_ok() {
        ("block graph".to_string(), None)
    } else {
        match &chordal {
            Ok(_) => ("chordal".to_string(), None),
            Err(ChordalError::NotChordal(cycle)) => {
                ("not chordal".to_string(), Some(cycle.clone()))
            }
            Err(ChordalError::Disconnected) => ("disconnected".to_string(), None),
            Err(e) => bail!("unexpected analysis failure: {e}"),
        }
    };

    let mut op_count = OpCount::default();
    let mut clique_trees: Option<BigCount> = None;
    let mut separators = None;
    let mut cr_check = None;
    if let Ok(analysis) = &chordal {
        let count = if accepted_k.is_some() {
            let (count, multiplications) = count_clique_trees_ktree_counted(&analysis.table);
            op_count.clique_trees = Some(multiplications);
            cr_check =
                Some(cr_equals_k_line(&g).expect("chordal analysis already succeeded"));
            count
        } else {
            count_clique_trees_general(&g)
                .expect("chordal analysis already succeeded")
                .0
        };
        clique_trees = Some(count);
        separators = Some(
            analysis
                .table
                .entries()
                .iter()
                .map(|(s, multiplicity)| SeparatorEntry {
                    separator: s.as_slice().to_vec(),
                    multiplicity: *multiplicity,
                })
                .collect(),
        );
    }
    let mut spanning_trees: Option<BigCount> = None;
    if let Ok(decomposition) = &block {
        let (count, multiplications) = count_spanning_trees_block_counted(decomposition);
        op_count.spanning_trees = Some(multiplications);
        spanning_trees = Some(count);
    }
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    let oracle_agreement = if args.verify {
        Some(run_oracles(
            &g,
            chordal.as_ref().ok(),
            accepted_k,
            clique_trees.as_ref(),
            spanning_trees.as_ref(),
            args.oracle_cap,
        ))
    } else {
        None
    };

    let doc = ResultDocument {
        input: InputInfo {
            path: args.path.display().to_string(),
            n: g.n(),
            m: g.m(),
        },
        classification: classification.clone(),
        k: accepted_k,
        clique_trees: clique_trees.map(|c| c.to_string()),
        spanning_trees: spanning_trees.map(|c| c.to_string()),
        separators,
        cr_equals_k_line: cr_check,
        witness_cycle,
        oracle_agreement,
        op_count,
        wall_ms,
    };
    emit(&format!("{}\n", serde_json::to_string_pretty(&doc)?));

    if let Some(expect) = args.expect {
        let matches = match expect {
            ExpectClass::KTree => accepted_k.is_some(),
            ExpectClass::BlockGraph => block.is_ok(),
            ExpectClass::Chordal => chordal.is_ok(),
            ExpectClass::NotChordal => {
                matches!(chordal, Err(ChordalError::NotChordal(_)))
            }
            ExpectClass::Disconnected => {
                matches!(chordal, Err(ChordalError::Disconnected))
            }
        };
        if !matches {
            eprintln!("expectation failed: classified as {classification}");
            return Ok(ExitCode::from(2));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict(expected: &BigCount, oracle: Result<BigCount, OracleError>) -> String {
    match oracle {
        Ok(value) if &value == expected => "agree".to_string(),
        Ok(_) => "disagree".to_string(),
        Err(OracleError::CapExceeded { .. }) | Err(OracleError::TooManyEdges { .. }) => {
            "cap-exceeded".to_string()
        }
        Err(e) => format!("error: {e}"),
    }
}

/// Re-derives the reported counts along independent routes.  Each oracle
/// reports "agree", "disagree", or "cap-exceeded"; a blown cap is never
/// fatal, it just marks that oracle as unavailable for this input.
fn run_oracles(
    g: &Graph,
    chordal: Option<&ChordalAnalysis>,
    accepted_k: Option<usize>,
    clique_trees: Option<&BigCount>,
    spanning_trees: Option<&BigCount>,
    cap: u64,
) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    if let (Some(analysis), Some(count)) = (chordal, clique_trees) {
        let intersection = clique_intersection_graph(&analysis.cliques);
        out.insert(
            "clique_tree_enumeration".to_string(),
            verdict(count, enumerate_clique_trees(&intersection, cap)),
        );
        if let Some(k) = accepted_k {
            out.insert(
                "separator_factorization".to_string(),
                if count_clique_trees_general(g).map(|(c, _)| c).as_ref() == Ok(count) {
                    "agree".to_string()
                } else {
                    "disagree".to_string()
                },
            );
            let reduced = reduced_clique_graph(g, &analysis.cliques)
                .expect("chordal analysis already succeeded");
            out.insert(
                "reduced_graph_determinant".to_string(),
                if reduced.nodes().len() > DETERMINANT_NODE_LIMIT {
                    "cap-exceeded".to_string()
                } else {
                    verdict(count, kirchhoff_count(&reduced.skeleton()))
                },
            );
            let line_verdict = match k_line_graph_capped(g, k + 1, K_CLIQUE_CAP) {
                Ok(line) if line.nodes().len() > DETERMINANT_NODE_LIMIT => {
                    "cap-exceeded".to_string()
                }
                Ok(line) => verdict(count, kirchhoff_count(&line.skeleton())),
                Err(_) => "cap-exceeded".to_string(),
            };
            out.insert("line_graph_determinant".to_string(), line_verdict);
        }
    }
    if let Some(count) = spanning_trees {
        out.insert(
            "graph_determinant".to_string(),
            if g.n() > DETERMINANT_NODE_LIMIT {
                "cap-exceeded".to_string()
            } else {
                verdict(count, kirchhoff_count(g))
            },
        );
        out.insert(
            "spanning_tree_enumeration".to_string(),
            verdict(count, enumerate_spanning_trees(g, cap)),
        );
    }
    out
}

// ----------------------------------------------------------------- derive

fn write_clique_level_graph(
    graph: &cliquecount::WeightedCliqueGraph,
    name: &str,
    dot_path: Option<&Path>,
) -> Result<()> {
    let mut comments = vec![format!("{name}; node i is the i-th clique below")];
    for (i, clique) in graph.nodes().iter().enumerate() {
        let members: Vec<String> = clique.iter().map(|v| v.to_string()).collect();
        comments.push(format!("node {i}: {{{}}}", members.join(",")));
    }
    let edges: Vec<(usize, usize)> = graph.edges().iter().map(|&(a, b, _)| (a, b)).collect();
    emit(&edgelist::write(graph.nodes().len(), &edges, &comments));
    if let Some(path) = dot_path {
        fs::write(path, dot::weighted_clique_graph(name, graph))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_derive(args: &DeriveArgs) -> Result<ExitCode> {
    let g = load_graph(&args.path)?;
    match args.what {
        DeriveWhat::Cr => {
            let analysis = analyze(&g).map_err(|e| anyhow!("not applicable: {e}"))?;
            let reduced = reduced_clique_graph(&g, &analysis.cliques)
                .expect("chordal analysis already succeeded");
            write_clique_level_graph(&reduced, "reduced_clique_graph", args.dot.as_deref())?;
        }
        DeriveWhat::Kline => {
            let k = args
                .k
                .ok_or_else(|| anyhow!("--what kline needs -k (clique size, at least 2)"))?;
            let line = k_line_graph_capped(&g, k, K_CLIQUE_CAP)
                .map_err(|e| anyhow!("k-line graph: {e}"))?;
            write_clique_level_graph(&line, "k_line_graph", args.dot.as_deref())?;
        }
        DeriveWhat::CliqueTree => {
            let analysis = analyze(&g).map_err(|e| anyhow!("not applicable: {e}"))?;
            let tree = &analysis.tree;
            let mut comments =
                vec!["clique_tree; node i is the i-th clique below".to_string()];
            for (i, clique) in tree.cliques.iter().enumerate() {
                let members: Vec<String> = clique.iter().map(|v| v.to_string()).collect();
                comments.push(format!("node {i}: {{{}}}", members.join(",")));
            }
            for edge in &tree.edges {
                let members: Vec<String> =
                    edge.separator.iter().map(|v| v.to_string()).collect();
                comments.push(format!(
                    "separator {}-{}: {{{}}}",
                    edge.a,
                    edge.b,
                    members.join(",")
                ));
            }
            let edges: Vec<(usize, usize)> = tree.edges.iter().map(|e| (e.a, e.b)).collect();
            emit(&edgelist::write(tree.cliques.len(), &edges, &comments));
            if let Some(path) = &args.dot {
                fs::write(path, dot::clique_tree(tree))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        DeriveWhat::Blocks => {
            let decomposition =
                recognize_block_graph(&g).map_err(|e| anyhow!("not applicable: {e}"))?;
            let mut text = String::new();
            for (i, b) in decomposition.blocks.iter().enumerate() {
                let members: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                text.push_str(&format!("block {i}: {{{}}}\n", members.join(",")));
            }
            let cuts: Vec<String> = decomposition
                .cut_vertices
                .iter()
                .map(|v| v.to_string())
                .collect();
            text.push_str(&format!("cut vertices: {{{}}}\n", cuts.join(",")));
            emit(&text);
            if let Some(path) = &args.dot {
                fs::write(path, dot::block_cut_tree(&decomposition))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// --------------------------------------------------------------- generate

fn cmd_generate(args: &GenerateArgs) -> Result<ExitCode> {
    let (g, comment) = if args.family.ktree {
        let spec = GenSpec {
            seed: args.seed,
            n: args.n,
            k: args.k,
            shape_bias: args.bias,
        };
        let (g, _) = random_k_tree(&spec)?;
        (
            g,
            format!(
                "k-tree: n={} k={} seed={} bias={}",
                args.n, args.k, args.seed, args.bias
            ),
        )
    } else if let Some(sizes) = &args.blocks {
        let (g, _) = block_graph_from_sizes(args.seed, sizes, args.bias)?;
        let list: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        (
            g,
            format!(
                "block graph: blocks={} seed={} bias={}",
                list.join(","),
                args.seed,
                args.bias
            ),
        )
    } else {
        let spec = GenSpec {
            seed: args.seed,
            n: args.n,
            k: args.k,
            shape_bias: args.bias,
        };
        let (g, _) = random_block_graph_checked(&spec)?;
        (
            g,
            format!(
                "block graph: n={} max_block={} seed={} bias={}",
                args.n, args.k, args.seed, args.bias
            ),
        )
    };
    let edges: Vec<(usize, usize)> = g.edges().collect();
    emit(&edgelist::write(g.n(), &edges, &[comment]));
    Ok(ExitCode::SUCCESS)
}

fn random_block_graph_checked(
    spec: &GenSpec,
) -> Result<(Graph, cliquecount::BlockDecomposition)> {
    Ok(cliquecount::random_block_graph(spec)?)
}

// ------------------------------------------------------------------ bench

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode> {
    if args.bench_ladder.is_empty() {
        bail!("--bench-ladder needs at least one size");
    }
    if args.reps == 0 {
        bail!("--reps must be at least 1");
    }
    let report = run_ladder(&args.bench_ladder, args.reps);
    let mut text = format!(
        "{:>9}  {:>14} {:>7} {:>10}  {:>14} {:>7} {:>10}\n",
        "n", "clique-tree s", "ratio", "mults", "block s", "ratio", "mults"
    );
    let mut previous: Option<(f64, f64)> = None;
    for point in &report.points {
        let ratios = previous
            .map(|(kt, bl)| {
                (
                    format!("{:.2}", point.ktree_secs / kt),
                    format!("{:.2}", point.block_secs / bl),
                )
            })
            .unwrap_or(("-".to_string(), "-".to_string()));
        text.push_str(&format!(
            "{:>9}  {:>14.6} {:>7} {:>10}  {:>14.6} {:>7} {:>10}\n",
            point.n,
            point.ktree_secs,
            ratios.0,
            point.ktree_multiplications,
            point.block_secs,
            ratios.1,
            point.block_multiplications
        ));
        previous = Some((point.ktree_secs, point.block_secs));
    }
    // The doubling ratios are the headline: a linear pipeline doubles its
    // time when the input doubles.
    let fmt = |v: &Vec<f64>| {
        v.iter()
            .map(|r| format!("{r:.2}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    text.push_str(&format!(
        "clique-tree doubling ratios: [{}]\n",
        fmt(&report.ktree_ratios())
    ));
    text.push_str(&format!(
        "block doubling ratios:       [{}]\n",
        fmt(&report.block_ratios())
    ));
    emit(&text);
    Ok(ExitCode::SUCCESS)
}
