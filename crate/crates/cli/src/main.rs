//! `disimplicial` command-line tool.
//!
//! Exit codes: 0 on success, 1 when an input cannot be read or parsed, 2
//! when a well-formed input violates a precondition (for example a
//! `--matching` file whose arcs are missing from the graph or share an
//! endpoint).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use disimplicial::generate::{random_sparse_pattern, random_st_graph};
use disimplicial::io::{
    parse_bipartite_edge_list, parse_edge_list, parse_matching, parse_matrix_market, write_edge_list,
    write_matrix_market, write_scheme, SparseMatrixGraph,
};
use disimplicial::{
    all_disimplicial_arcs, classify, is_perfect_elimination_st, matched_elimination, maximal_elimination,
    zero_fill_pivots, Digraph, EliminationScheme, Matching,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "disimplicial", version, about = "Disimplicial arcs, elimination schemes and zero fill-in pivots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the disimplicial arcs (bisimplicial edges with --bipartite).
    Disimplicial(GraphArgs),
    /// Build a maximal disimplicial elimination scheme.
    Eliminate {
        #[command(flatten)]
        graph: GraphArgs,
        /// Restrict the scheme to the arcs listed in this file.
        #[arg(long, value_name = "FILE")]
        matching: Option<PathBuf>,
    },
    /// Report class membership with witnesses.
    Classify(GraphArgs),
    /// Zero fill-in pivots of Matrix Market patterns.
    Pivots {
        #[arg(required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print a random instance.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct GraphArgs {
    #[arg(required = true, value_name = "FILE")]
    files: Vec<PathBuf>,
    /// Read `left right` bipartite edge lists instead of arc lists.
    #[arg(long)]
    bipartite: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit a Matrix Market pattern instead of an ST edge list.
    #[arg(long)]
    matrix: bool,
    /// Sources, or matrix rows.
    #[arg(long, default_value_t = 10)]
    rows: usize,
    /// Sinks, or matrix columns.
    #[arg(long, default_value_t = 10)]
    cols: usize,
    /// Arc count for edge lists.
    #[arg(long, default_value_t = 20)]
    arcs: usize,
    /// Entry density for matrices.
    #[arg(long, default_value_t = 0.1)]
    density: f64,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{path}: {message}")]
    Precondition { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 1,
            CliError::Precondition { .. } | CliError::Usage(_) => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input { path: path.display().to_string(), message: e.to_string() })
}

fn input_error(path: &Path, e: impl ToString) -> CliError {
    CliError::Input { path: path.display().to_string(), message: e.to_string() }
}

/// Library errors name vertices by id; rewrite the common ones with labels.
fn precondition(path: &Path, g: &Digraph, e: disimplicial::Error) -> CliError {
    use disimplicial::Error as E;
    let l = |v: usize| g.label(v);
    let message = match e {
        E::ArcAbsent(v, w) => format!("arc {} -> {} is not in the digraph", l(v), l(w)),
        E::NotAMatching((a, b), (c, d)) => {
            format!("arcs {} -> {} and {} -> {} share an endpoint", l(a), l(b), l(c), l(d))
        }
        E::NotStGraph(v) => format!("not an ST graph: {} is neither a source nor a sink", l(v)),
        other => other.to_string(),
    };
    CliError::Precondition { path: path.display().to_string(), message }
}

fn load_graph(path: &Path, bipartite: bool) -> Result<Digraph, CliError> {
    let text = read(path)?;
    if bipartite {
        let b = parse_bipartite_edge_list(&text).map_err(|e| input_error(path, e))?;
        b.to_digraph().map_err(|e| input_error(path, e))
    } else {
        parse_edge_list(&text).map_err(|e| input_error(path, e))
    }
}

fn labeled(g: &Digraph, arcs: &[(usize, usize)]) -> Vec<[String; 2]> {
    arcs.iter().map(|&(v, w)| [g.label(v), g.label(w)]).collect()
}

/// One report per input file: TSV text and its JSON form.
struct Report {
    text: String,
    json: Value,
}

fn disimplicial_report(g: &Digraph) -> Report {
    let arcs = all_disimplicial_arcs(g);
    let mut text = format!("# arcs: {}\n", arcs.len());
    for &(v, w) in &arcs {
        writeln!(text, "{}\t{}", g.label(v), g.label(w)).unwrap();
    }
    Report { text, json: json!({ "count": arcs.len(), "arcs": labeled(g, &arcs) }) }
}

fn eliminate_report(g: &Digraph, path: &Path, matching: Option<&str>) -> Result<Report, CliError> {
    let scheme: EliminationScheme = match matching {
        Some(text) => {
            let arcs = parse_matching(text, g).map_err(|e| input_error(path, format!("matching: {e}")))?;
            let m = Matching::new(arcs).map_err(|e| precondition(path, g, e))?;
            matched_elimination(g, &m).map_err(|e| precondition(path, g, e))?
        }
        None => maximal_elimination(g),
    };
    let decision = if g.is_st_graph() {
        Some(is_perfect_elimination_st(g).map_err(|e| precondition(path, g, e))?.0)
    } else {
        None
    };
    let mut text = String::new();
    if let Some(d) = decision {
        writeln!(text, "# perfect-elimination-st: {d}").unwrap();
    }
    text.push_str(&write_scheme(g, &scheme));
    let json = json!({
        "perfect": scheme.perfect,
        "steps": labeled(g, &scheme.steps),
        "residual_arcs": scheme.residual.m(),
        "perfect_elimination_st": decision,
    });
    Ok(Report { text, json })
}

fn classify_report(g: &Digraph) -> Report {
    let r = classify(g);
    let flags = [
        ("st", r.is_st),
        ("twin_free", r.is_twin_free),
        ("reflexive", r.is_reflexive),
        ("oriented", r.is_oriented),
        ("transitive", r.is_transitive),
        ("order", r.is_order),
        ("dedekind", r.is_dedekind),
        ("wdi", r.is_wdi),
        ("di", r.is_di),
    ];
    let mut text = String::new();
    for (name, value) in flags {
        writeln!(text, "{name}\t{value}").unwrap();
    }
    let described: Vec<String> = r.witness.iter().map(|w| w.describe(g)).collect();
    for d in &described {
        writeln!(text, "witness\t{d}").unwrap();
    }
    let mut json = serde_json::to_value(&r).expect("report serializes");
    json["witness_text"] = json!(described);
    Report { text, json }
}

fn pivots_report(m: &SparseMatrixGraph) -> Report {
    let p = zero_fill_pivots(m);
    let one_based: Vec<[usize; 2]> = p.pivots.iter().map(|&(r, c)| [r + 1, c + 1]).collect();
    let mut text = format!("# perfect: {}\n# pivots: {}\n", p.perfect, one_based.len());
    for [r, c] in &one_based {
        writeln!(text, "{r}\t{c}").unwrap();
    }
    Report { text, json: json!({ "perfect": p.perfect, "pivots": one_based }) }
}

/// Prints the reports in input order; several files get a `## path` header
/// in TSV mode and become a JSON array of `{file, report}` objects.
fn emit(reports: Vec<(PathBuf, Report)>, as_json: bool) {
    let many = reports.len() > 1;
    if as_json {
        let value = if many {
            Value::Array(
                reports
                    .into_iter()
                    .map(|(p, r)| json!({ "file": p.display().to_string(), "report": r.json }))
                    .collect(),
            )
        } else {
            reports.into_iter().next().map(|(_, r)| r.json).unwrap_or(Value::Null)
        };
        println!("{}", serde_json::to_string_pretty(&value).expect("json serializes"));
    } else {
        for (p, r) in reports {
            if many {
                println!("## {}", p.display());
            }
            print!("{}", r.text);
        }
    }
}

fn per_graph(
    args: &GraphArgs,
    mut f: impl FnMut(&Digraph, &Path) -> Result<Report, CliError>,
) -> Result<(), CliError> {
    let mut reports = Vec::with_capacity(args.files.len());
    for path in &args.files {
        let g = load_graph(path, args.bipartite)?;
        reports.push((path.clone(), f(&g, path)?));
    }
    emit(reports, args.json);
    Ok(())
}

fn generate(args: &GenerateArgs) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    if args.matrix {
        if !(0.0..=1.0).contains(&args.density) {
            return Err(CliError::Usage(format!("density {} is outside [0, 1]", args.density)));
        }
        let entries = random_sparse_pattern(&mut rng, args.rows, args.cols, args.density);
        print!("{}", write_matrix_market(&SparseMatrixGraph::new(args.rows, args.cols, entries)));
    } else {
        let g = random_st_graph(&mut rng, args.rows, args.cols, args.arcs);
        let labels = (0..args.rows).map(|i| format!("s{i}")).chain((0..args.cols).map(|j| format!("t{j}")));
        let g = g.with_labels(labels.collect()).expect("distinct labels");
        print!("{}", write_edge_list(&g));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Disimplicial(args) => per_graph(&args, |g, _| Ok(disimplicial_report(g))),
        Command::Eliminate { graph, matching } => {
            let matching = matching.as_deref().map(read).transpose()?;
            per_graph(&graph, |g, path| eliminate_report(g, path, matching.as_deref()))
        }
        Command::Classify(args) => per_graph(&args, |g, _| Ok(classify_report(g))),
        Command::Pivots { files, json } => {
            let mut reports = Vec::with_capacity(files.len());
            for path in files {
                let m = parse_matrix_market(&read(&path)?).map_err(|e| input_error(&path, e))?;
                reports.push((path, pivots_report(&m)));
            }
            emit(reports, json);
            Ok(())
        }
        Command::Generate(args) => generate(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
