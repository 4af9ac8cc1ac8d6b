//! `rchrom`: restrained chromatic polynomials from the command line.
//!
//! Exit codes: 0 success, 2 bad input, 3 a size cap was hit, 4 a theorem
//! check found a violation.

mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rchrom_core::catalog::{connected_bipartite_catalog, connected_catalog, NamedGraph};
use rchrom_core::coefficients::{coeff_n3, signed_coefficient, CoefficientBreakdown};
use rchrom_core::extremal::{
    check_conjecture, find_extremal_with, verify_a7_condition, verify_bipartite_max, verify_min_theorem,
    verify_properness, ExtremalReport, SearchOptions, VerifyReport, Violation,
};
use rchrom_core::io::{parse_graph6_lines, to_graph6};
use rchrom_core::oracle::{count_colourings_with, OracleBudget};
use rchrom_core::restraint::{enumerate_k_restraints_with, is_proper, EnumerationCaps};
use rchrom_core::store::ResultStore;
use rchrom_core::{ChromaEngine, Error, Graph, Restraint};

use input::{resolve_graph, resolve_restraint, GraphFormat};

#[derive(Parser, Debug)]
#[command(name = "rchrom", version, about = "Restrained chromatic polynomials and extremal restraints")]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel enumeration and search (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Raise the enumeration and automorphism caps to allow this many vertices.
    #[arg(long, global = true, value_name = "N")]
    cap_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Family name (P5, C4, K3, K2,3, S4, E3), file path, or inline text.
    #[arg(long, short = 'g')]
    graph: String,

    #[arg(long, value_enum, default_value_t = GraphFormat::Auto)]
    format: GraphFormat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Restrained chromatic polynomial of a graph.
    Poly {
        #[command(flatten)]
        graph: GraphArgs,
        /// Restraint literal like [{1},{2},{3}] or a file; empty if omitted.
        #[arg(long, short = 'r')]
        restraint: Option<String>,
        /// Also evaluate at this point.
        #[arg(long)]
        x: Option<u64>,
    },
    /// Brute-force count of permitted colourings.
    Count {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, short = 'r')]
        restraint: Option<String>,
        #[arg(long)]
        x: u64,
        /// Largest x^n the counter may explore for n above 8.
        #[arg(long, default_value_t = 1_000_000_000)]
        max_work: u128,
    },
    /// Closed-form top coefficients and their individual terms.
    Coeffs {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, short = 'r')]
        restraint: Option<String>,
    },
    /// k-restraint classes up to equivalence.
    Classes {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, short = 'k', default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Include each class polynomial.
        #[arg(long)]
        poly: bool,
    },
    /// Minimizing and maximizing restraint classes.
    Extremal {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, short = 'k', default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Directory for the resumable result store.
        #[arg(long)]
        results_dir: Option<PathBuf>,
    },
    /// Check a theorem on a catalog of graphs.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, short = 'k', default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Catalog of all connected graphs on 1..=N vertices (N <= 7).
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Use the graphs in this graph6 file instead of the generated catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        results_dir: Option<PathBuf>,
    },
    /// Compare the conjectured odd-cycle maximizer with exhaustive search.
    Conjecture {
        #[arg(long, short = 'n')]
        n: usize,
        #[arg(long)]
        results_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Min,
    Proper,
    Bipartite,
    A7,
}

enum Failure {
    Core(Error),
    Violations(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: cannot start {w} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli);
    match &result {
        Ok(out) | Err(Failure::Violations(out)) => print!("{out}"),
        Err(Failure::Core(e)) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&result))
}

fn exit_code(result: &Outcome) -> u8 {
    match result {
        Ok(_) => 0,
        Err(Failure::Core(e)) if e.is_cap() => 3,
        Err(Failure::Core(_)) => 2,
        Err(Failure::Violations(_)) => 4,
    }
}

fn caps(cli: &Cli) -> EnumerationCaps {
    match cli.cap_n {
        Some(n) => EnumerationCaps::default().allowing(n),
        None => EnumerationCaps::default(),
    }
}

fn options(cli: &Cli, results_dir: Option<&PathBuf>) -> std::result::Result<SearchOptions, Error> {
    let store = results_dir.map(ResultStore::open).transpose()?.map(Arc::new);
    Ok(SearchOptions {
        caps: caps(cli),
        store,
        ..SearchOptions::default()
    })
}

fn render(cli: &Cli, value: Value, text: String) -> String {
    if cli.json {
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    } else {
        text
    }
}

fn graph_json(g: &Graph) -> std::result::Result<Value, Error> {
    Ok(json!({ "graph6": to_graph6(g)?, "n": g.n(), "m": g.m() }))
}

fn graph_line(g: &Graph) -> std::result::Result<String, Error> {
    Ok(format!("graph: {} (n = {}, m = {})\n", to_graph6(g)?, g.n(), g.m()))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Poly { graph, restraint, x } => {
            let g = resolve_graph(&graph.graph, graph.format)?;
            let r = resolve_restraint(restraint.as_deref(), g.n())?;
            cmd_poly(cli, &g, &r, *x)
        }
        Command::Count { graph, restraint, x, max_work } => {
            let g = resolve_graph(&graph.graph, graph.format)?;
            let r = resolve_restraint(restraint.as_deref(), g.n())?;
            let budget = OracleBudget {
                max_work: *max_work,
                ..OracleBudget::default()
            };
            let count = count_colourings_with(&g, &r, *x, &budget)?;
            let value = json!({ "graph": graph_json(&g)?, "restraint": r, "x": x, "count": count });
            let text = format!("{}restraint: {r}\ncolourings at x = {x}: {count}\n", graph_line(&g)?);
            Ok(render(cli, value, text))
        }
        Command::Coeffs { graph, restraint } => {
            let g = resolve_graph(&graph.graph, graph.format)?;
            let r = resolve_restraint(restraint.as_deref(), g.n())?;
            cmd_coeffs(cli, &g, &r)
        }
        Command::Classes { graph, k, poly } => {
            let g = resolve_graph(&graph.graph, graph.format)?;
            cmd_classes(cli, &g, *k as usize, *poly)
        }
        Command::Extremal { graph, k, results_dir } => {
            let g = resolve_graph(&graph.graph, graph.format)?;
            let opts = options(cli, results_dir.as_ref())?;
            let report = find_extremal_with(&graph.graph, &g, *k as usize, &opts)?;
            Ok(render(cli, serde_json::to_value(&report).expect("serializable"), extremal_text(&report)))
        }
        Command::Verify { theorem, k, n_max, catalog, results_dir } => {
            let opts = options(cli, results_dir.as_ref())?;
            cmd_verify(cli, *theorem, *k as usize, *n_max, catalog.as_ref(), &opts)
        }
        Command::Conjecture { n, results_dir } => {
            let opts = options(cli, results_dir.as_ref())?;
            let rep = check_conjecture(*n, &opts)?;
            let mut text = format!("C{n}, k = 1: {} classes\n", rep.class_count);
            text += &format!("conjectured pattern: {:?}\n", rep.conjectured.colours);
            for issue in &rep.conjectured.issues {
                text += &format!("  pattern issue: {issue}\n");
            }
            for c in &rep.max_classes {
                text += &format!("maximizing class: {}\n", c.canon);
            }
            text += &format!("maximum polynomial: {}\n", rep.max_poly);
            text += &match rep.conjecture_holds {
                Some(true) => "conjectured class is the unique maximizer\n".to_string(),
                Some(false) => "conjectured class is NOT the unique maximizer\n".to_string(),
                None => "conjecture not testable: pattern is ill-defined for this n\n".to_string(),
            };
            if let Some(m) = rep.reference_r2_matches {
                text += &format!("winner equals class of [{{1}},{{2}},{{1}},{{2}},{{3}},{{1}},{{3}}]: {m}\n");
            }
            Ok(render(cli, serde_json::to_value(&rep).expect("serializable"), text))
        }
    }
}

fn cmd_poly(cli: &Cli, g: &Graph, r: &Restraint, x: Option<u64>) -> Outcome {
    let p = ChromaEngine::new().restrained_poly(g, r)?;
    let m = r.m_value();
    let mut value = json!({
        "graph": graph_json(g)?,
        "restraint": r,
        "m_bound": m,
        "polynomial": p.to_json(),
        "rendered": p.to_string(),
    });
    let mut text = format!(
        "{}restraint: {r}\nM: {m}\npolynomial: {p}\ncoefficients: {}\n",
        graph_line(g)?,
        p.to_vector_string()
    );
    if let Some(x) = x {
        let v = p.eval_u64(x);
        value["x"] = json!(x);
        value["value"] = json!(v.to_string());
        value["valid_at_x"] = json!(x >= m);
        text += &format!("value at x = {x}: {v}\n");
        if x < m {
            text += &format!(
                "note: x = {x} is below M = {m}; the polynomial counts colourings only for x >= M (use `count` for the exact number)\n"
            );
        }
    }
    Ok(render(cli, value, text))
}

fn cmd_coeffs(cli: &Cli, g: &Graph, r: &Restraint) -> Outcome {
    let b: CoefficientBreakdown = coeff_n3(g, r)?;
    let p = ChromaEngine::new().restrained_poly(g, r)?;
    let n = g.n();
    let extracted: Vec<String> = (1..=3).map(|i| signed_coefficient(&p, n, n - i).to_string()).collect();
    let agrees = extracted == [b.a_n_1.to_string(), b.a_n_2.to_string(), b.a_n_3.to_string()];
    let t = &b.terms;
    let text = format!(
        "{}restraint: {r}\n\
         a_(n-1) = {}\na_(n-2) = {}\na_(n-3) = {}\n\
         terms: A0 = {}, A1 = {}, A2 = {}, A3 = {}, A4 = {}, A5 = {}, A6 = {}, \
         A7' = {}, A7'' = {}, A8' = {}, A8'' = {}\n\
         matches polynomial: {agrees}\n",
        graph_line(g)?,
        b.a_n_1,
        b.a_n_2,
        b.a_n_3,
        t.a0,
        t.a1,
        t.a2,
        t.a3,
        t.a4,
        t.a5,
        t.a6,
        t.a7_prime,
        t.a7_double_prime,
        t.a8_prime,
        t.a8_double_prime,
    );
    let value = json!({
        "graph": graph_json(g)?,
        "restraint": r,
        "breakdown": b,
        "extracted": extracted,
        "matches_polynomial": agrees,
    });
    Ok(render(cli, value, text))
}

fn cmd_classes(cli: &Cli, g: &Graph, k: usize, with_poly: bool) -> Outcome {
    let classes = enumerate_k_restraints_with(g, k, &caps(cli), None)?;
    let mut text = format!("{}k = {k}: {} classes\n", graph_line(g)?, classes.len());
    let mut rows = Vec::new();
    let mut engine = ChromaEngine::new();
    for (i, c) in classes.iter().enumerate() {
        let proper = is_proper(g, &c.canon);
        let mut row = json!({ "canon": c.canon, "rendered": c.canon.to_string(), "proper": proper });
        text += &format!("{:>4}  {}{}", i + 1, c.canon, if proper { "  proper" } else { "" });
        if with_poly {
            let p = engine.restrained_poly(g, &c.canon)?;
            text += &format!("  {p}");
            row["polynomial"] = p.to_json();
        }
        text.push('\n');
        rows.push(row);
    }
    let value = json!({ "graph": graph_json(g)?, "k": k, "count": classes.len(), "classes": rows });
    Ok(render(cli, value, text))
}

fn extremal_text(r: &ExtremalReport) -> String {
    let mut text = format!("graph: {} (n = {}), k = {}: {} classes\n", r.graph6, r.n, r.k, r.class_count);
    for (label, classes, poly, witnesses) in [
        ("min", &r.min_classes, &r.min_poly, &r.min_witnesses),
        ("max", &r.max_classes, &r.max_poly, &r.max_witnesses),
    ] {
        text += &format!("{label} polynomial: {poly}\n");
        for c in classes {
            text += &format!("{label} class: {}\n", c.canon);
        }
        for w in witnesses {
            text += &format!(
                "  beats {} (difference leads with {} x^{}; holds for x >= {})\n",
                w.class, w.coefficient, w.degree, w.beyond_x
            );
        }
    }
    text
}

fn cmd_verify(
    cli: &Cli,
    theorem: Theorem,
    k: usize,
    n_max: usize,
    catalog_path: Option<&PathBuf>,
    opts: &SearchOptions,
) -> Outcome {
    let catalog: Vec<NamedGraph> = match catalog_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            parse_graph6_lines(&text)?
                .into_iter()
                .map(NamedGraph::from_graph)
                .collect::<Result<_, _>>()?
        }
        None => {
            if n_max > 7 {
                return Err(Error::InvalidArgument("--n-max is limited to 7".into()).into());
            }
            if theorem == Theorem::Bipartite {
                connected_bipartite_catalog(n_max)?
            } else {
                connected_catalog(n_max)?
            }
        }
    };
    let report = match theorem {
        Theorem::Min => verify_min_theorem(&catalog, k, opts)?,
        Theorem::Proper => verify_properness(&catalog, k, opts)?,
        Theorem::Bipartite => verify_bipartite_max(&catalog, k, opts)?,
        Theorem::A7 => verify_a7(&catalog, k, opts)?,
    };
    let mut text = format!(
        "theorem {}, k = {k}: {} graphs checked, {} skipped, {} violations\n",
        report.theorem,
        report.checked,
        report.skipped.len(),
        report.violations.len()
    );
    for s in &report.skipped {
        text += &format!("skipped {s}\n");
    }
    for v in &report.violations {
        text += &format!("violation on {}: {}\n", v.graph_id, v.detail);
    }
    let out = render(cli, serde_json::to_value(&report).expect("serializable"), text);
    if report.is_clean() {
        Ok(out)
    } else {
        Err(Failure::Violations(out))
    }
}

/// The A7'' condition over a catalog, in the same report shape as the
/// other theorems.
fn verify_a7(catalog: &[NamedGraph], k: usize, opts: &SearchOptions) -> Result<VerifyReport, Error> {
    let mut report = VerifyReport::new("a7", k);
    for g in catalog {
        match verify_a7_condition(&g.id, &g.graph, k, opts) {
            Ok(a7) => {
                report.checked += 1;
                for detail in a7.violations {
                    report.violations.push(Violation {
                        graph_id: g.id.clone(),
                        expected: a7.attaining.iter().map(|r| r.to_string()).collect(),
                        found: a7.max_classes.iter().map(|r| r.to_string()).collect(),
                        detail,
                    });
                }
            }
            Err(e) if e.is_cap() => report.skipped.push(format!("{}: {e}", g.id)),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
