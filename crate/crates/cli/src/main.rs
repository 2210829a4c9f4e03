//! `bei` — Hilbert series of binomial edge ideals.
//!
//! Graphs come either from an edge-list file (`n m` header then `u v`
//! lines, `#` comments) or from a family expression such as `path:4`,
//! `wheel:5`, `lollipop:3;2,2`, `join(path:3,complete:2)` or
//! `pjoin(cycle:4,3,2)`.
//!
//! Exit codes: 0 ok, 1 usage or parse error, 2 size guard, 3 verification
//! mismatch.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bei_core::family::{self, FamilySpec};
use bei_core::formula::{self, AnalyzeOptions};
use bei_core::graph::Graph;
use bei_core::oracle::{self, MonomialOrder, SweepOptions};
use bei_core::series::{bigint_to_number, PoleSeries};

#[derive(Parser)]
#[command(
    name = "bei",
    version,
    about = "Exact Hilbert series of binomial edge ideals",
    after_help = "INPUT is an edge-list file if the path exists, otherwise a family \
expression: path:N cycle:N complete:N kpartite:P1,..,Pk lollipop:M;R1,..,Rk \
fan:P,Q multifan:P1,..,Pr wheel:N join(A,B) pjoin(A,Q,R)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Degrevlex => MonomialOrder::DegRevLex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Also print the first N+1 Hilbert function values
    #[arg(long, value_name = "N")]
    taylor: Option<usize>,
    /// Variable guard for Groebner work (a graph on n vertices needs 2n);
    /// defaults to 16, or the BEI_MAX_VARS environment variable
    #[arg(long, value_name = "K")]
    max_vars: Option<usize>,
    /// Monomial order for Groebner computations
    #[arg(long, value_enum, default_value_t = OrderArg::Degrevlex)]
    order: OrderArg,
    /// Print the derivation rule tree
    #[arg(long)]
    trace: bool,
}

impl Common {
    fn analyze_opts(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            order: self.order.into(),
            max_vars: self.max_vars.unwrap_or_else(oracle::default_max_vars),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert series via the closed-form engine (with rule trace)
    Series {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Krull dimension of S/J_G
    Dim {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Multiplicity e(S/J_G)
    Mult {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension, e_0..e_{d-1} and the Hilbert polynomial
    Hdata {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Cut-point sets T and the components of G[T-bar] (minimal primes)
    Primes {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decomposition into indecomposable pieces at free cut vertices
    Decompose {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Hilbert series recomputed from a Groebner basis
    Oracle {
        input: String,
        /// Also print the reduced Groebner basis, one polynomial per line
        #[arg(long)]
        dump_gb: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the closed-form engine against the Groebner oracle
    Verify {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Verify every connected labeled graph on up to N vertices
    Sweep {
        n: usize,
        /// Skip isomorphic duplicates (naive canonicalization, n <= 7)
        #[arg(long)]
        dedup: bool,
        #[command(flatten)]
        common: Common,
    },
}

enum CliError {
    Parse(String),
    Guard(String),
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Guard(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Guard(m) | CliError::Mismatch(m) => m,
        }
    }
}

fn graph_err(e: bei_core::graph::GraphError) -> CliError {
    match e {
        bei_core::graph::GraphError::TooLarge { .. } => CliError::Guard(e.to_string()),
        other => CliError::Parse(other.to_string()),
    }
}

fn oracle_err(e: oracle::OracleError) -> CliError {
    match e {
        oracle::OracleError::SizeGuard { .. } => CliError::Guard(e.to_string()),
        oracle::OracleError::Graph(g) => graph_err(g),
    }
}

/// Existing file path -> edge-list format; anything else -> family DSL.
fn load(input: &str) -> Result<(Graph, Option<FamilySpec>), CliError> {
    if Path::new(input).is_file() {
        let text =
            std::fs::read_to_string(input).map_err(|e| CliError::Parse(format!("{input}: {e}")))?;
        let g =
            Graph::parse_edge_list(&text).map_err(|e| CliError::Parse(format!("{input}: {e}")))?;
        return Ok((g, None));
    }
    let spec = family::parse(input).map_err(|e| {
        CliError::Parse(format!(
            "`{input}` is not an existing file and is not a family expression ({e})"
        ))
    })?;
    let g = spec.build().map_err(|e| CliError::Parse(e.to_string()))?;
    Ok((g, Some(spec)))
}

fn taylor_json(series: &PoleSeries, n: usize) -> serde_json::Value {
    serde_json::Value::Array(
        series
            .taylor(n)
            .iter()
            .map(|c| serde_json::Value::Number(bigint_to_number(c)))
            .collect(),
    )
}

fn taylor_text(series: &PoleSeries, n: usize) -> String {
    let vals: Vec<String> = series.taylor(n).iter().map(|c| c.to_string()).collect();
    format!("[{}]", vals.join(", "))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Series { input, common } => series_cmd(&input, &common),
        Cmd::Dim { input, common } => scalar_cmd(&input, &common, Scalar::Dim),
        Cmd::Mult { input, common } => scalar_cmd(&input, &common, Scalar::Mult),
        Cmd::Hdata { input, common } => hdata_cmd(&input, &common),
        Cmd::Primes { input, common } => primes_cmd(&input, &common),
        Cmd::Decompose { input, common } => decompose_cmd(&input, &common),
        Cmd::Oracle {
            input,
            dump_gb,
            common,
        } => oracle_cmd(&input, dump_gb, &common),
        Cmd::Verify { input, common } => verify_cmd(&input, &common),
        Cmd::Sweep { n, dedup, common } => sweep_cmd(n, dedup, &common),
    }
}

fn series_cmd(input: &str, common: &Common) -> Result<(), CliError> {
    let (g, _) = load(input)?;
    let derivation = formula::analyze_with(&g, &common.analyze_opts()).map_err(oracle_err)?;
    let series = &derivation.result;
    let hdata = series.hilbert_data().ok();
    if common.json {
        let mut obj = serde_json::json!({
            "graph": g,
            "series": series,
            "dim": series.pole(),
        });
        if let Some(h) = &hdata {
            obj["multiplicity"] = serde_json::Value::Number(bigint_to_number(&h.multiplicity));
        }
        if let Some(n) = common.taylor {
            obj["taylor"] = taylor_json(series, n);
        }
        if common.trace {
            obj["trace"] = serde_json::to_value(&derivation.trace).unwrap();
        }
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        println!("graph: {g}");
        println!("series: {series}");
        println!("dim: {}", series.pole());
        if let Some(h) = &hdata {
            println!("multiplicity: {}", h.multiplicity);
        }
        if let Some(n) = common.taylor {
            println!("taylor: {}", taylor_text(series, n));
        }
        if common.trace {
            print!("trace:\n{}", derivation.render_text());
        }
    }
    Ok(())
}

enum Scalar {
    Dim,
    Mult,
}

fn scalar_cmd(input: &str, common: &Common, what: Scalar) -> Result<(), CliError> {
    let (g, _) = load(input)?;
    let derivation = formula::analyze_with(&g, &common.analyze_opts()).map_err(oracle_err)?;
    let series = &derivation.result;
    let value = match what {
        Scalar::Dim => series.pole().to_string(),
        Scalar::Mult => series.num().eval_at_one().to_string(),
    };
    if common.json {
        let key = match what {
            Scalar::Dim => "dim",
            Scalar::Mult => "multiplicity",
        };
        println!(
            "{}",
            serde_json::json!({ key: serde_json::from_str::<serde_json::Number>(&value).unwrap() })
        );
    } else {
        println!("{value}");
    }
    Ok(())
}

fn hdata_cmd(input: &str, common: &Common) -> Result<(), CliError> {
    let (g, _) = load(input)?;
    let derivation = formula::analyze_with(&g, &common.analyze_opts()).map_err(oracle_err)?;
    let series = &derivation.result;
    let h = series
        .hilbert_data()
        .map_err(|e| CliError::Parse(e.to_string()))?;
    if common.json {
        let mut obj = h.to_json();
        obj["series"] = series.to_json();
        if let Some(n) = common.taylor {
            obj["taylor"] = taylor_json(series, n);
        }
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        println!("series: {series}");
        println!("dim: {}", h.dim);
        println!("multiplicity: {}", h.multiplicity);
        let e: Vec<String> = h.e.iter().map(|c| c.to_string()).collect();
        println!("e: [{}]", e.join(", "));
        println!("hilbert polynomial: P(X) = {}", h.polynomial_string());
        if let Some(n) = common.taylor {
            println!("taylor: {}", taylor_text(series, n));
        }
    }
    Ok(())
}

fn primes_cmd(input: &str, common: &Common) -> Result<(), CliError> {
    let (g, _) = load(input)?;
    let sets = g.cut_point_sets().map_err(graph_err)?;
    if common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "graph": g,
                "cut_point_sets": sets,
            }))
            .unwrap()
        );
        return Ok(());
    }
    println!("C(G): {} cut-point sets", sets.len());
    for cs in &sets {
        let t: Vec<String> = cs.t.iter().map(|v| v.to_string()).collect();
        let comps: Vec<String> = cs
            .components
            .iter()
            .map(|c| {
                let vs: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", vs.join(","))
            })
            .collect();
        println!(
            "T={{{}}} dim {}: components {}",
            t.join(","),
            g.n() - cs.t.len() + cs.components.len(),
            comps.join(" ")
        );
    }
    Ok(())
}

fn decompose_cmd(input: &str, common: &Common) -> Result<(), CliError> {
    let (g, _) = load(input)?;
    let dec = g.decompose();
    if common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "graph": g,
                "decomposition": dec,
            }))
            .unwrap()
        );
        return Ok(());
    }
    println!("{} indecomposable parts", dec.parts.len());
    for (i, part) in dec.parts.iter().enumerate() {
        let vs: Vec<String> = part.iter().map(|v| v.to_string()).collect();
        println!("part {}: {{{}}}", i + 1, vs.join(","));
    }
    for (i, j, v) in &dec.gluing {
        println!("parts {} and {} share free vertex {}", i + 1, j + 1, v);
    }
    Ok(())
}

fn oracle_cmd(input: &str, dump_gb: bool, common: &Common) -> Result<(), CliError> {
    let (g, _) = load(input)?;
    let opts = common.analyze_opts();
    let series = oracle::oracle_series_with(&g, opts.order, opts.max_vars).map_err(oracle_err)?;
    let gb_text = if dump_gb {
        let gens = oracle::binomial_generators(&g, opts.order);
        Some(oracle::render_gb(&oracle::groebner(&gens, opts.order)))
    } else {
        None
    };
    if common.json {
        let mut obj = serde_json::json!({
            "graph": g,
            "series": series,
            "dim": series.pole(),
            "multiplicity": bigint_to_number(&series.num().eval_at_one()),
        });
        if let Some(n) = common.taylor {
            obj["taylor"] = taylor_json(&series, n);
        }
        if let Some(gb) = gb_text {
            obj["groebner_basis"] =
                serde_json::Value::Array(gb.lines().map(|l| l.into()).collect());
        }
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        if let Some(gb) = gb_text {
            println!("groebner basis:");
            for line in gb.lines() {
                println!("  {line}");
            }
        }
        println!("series: {series}");
        println!("dim: {}", series.pole());
        println!("multiplicity: {}", series.num().eval_at_one());
        if let Some(n) = common.taylor {
            println!("taylor: {}", taylor_text(&series, n));
        }
    }
    Ok(())
}

fn verify_cmd(input: &str, common: &Common) -> Result<(), CliError> {
    let (g, spec) = load(input)?;
    let report = oracle::verify_with(&g, &common.analyze_opts()).map_err(oracle_err)?;
    let expected = spec.as_ref().and_then(formula::family_invariants);
    if common.json {
        let mut obj = serde_json::to_value(&report).unwrap();
        if let Some(inv) = &expected {
            obj["expected"] = serde_json::json!({
                "dim": inv.dim,
                "multiplicity": bigint_to_number(&inv.multiplicity),
            });
        }
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        println!("graph: {}", report.graph);
        println!("formula: {}", report.derivation.result);
        println!("oracle:  {}", report.oracle);
        if let Some(d) = report.dim_from_cutsets {
            println!("dim from cut-point sets: {d}");
        }
        if let Some(inv) = &expected {
            println!(
                "closed-form table: dim {} multiplicity {}",
                inv.dim, inv.multiplicity
            );
        }
        if common.trace {
            print!("trace:\n{}", report.derivation.render_text());
        }
        if report.used_fallback {
            println!("note: engine fell back to the oracle (no closed form applied)");
        }
    }
    let table_ok = expected.is_none_or(|inv| {
        inv.dim == report.oracle.pole() && inv.multiplicity == report.oracle.num().eval_at_one()
    });
    if report.matches && report.dim_consistent && table_ok {
        if !common.json {
            println!("OK (formula == oracle)");
        }
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "formula {} vs oracle {} (dim consistent: {}, table consistent: {})",
            report.derivation.result, report.oracle, report.dim_consistent, table_ok
        )))
    }
}

fn sweep_cmd(n: usize, dedup: bool, common: &Common) -> Result<(), CliError> {
    let opts = SweepOptions {
        max_n: n,
        order: common.order.into(),
        max_vars: common.max_vars.unwrap_or_else(oracle::default_max_vars),
        dedup,
    };
    let report = oracle::sweep(&opts).map_err(oracle_err)?;
    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("n  graphs  formula  fallback  mismatch");
        for row in &report.rows {
            println!(
                "{:<2} {:<7} {:<8} {:<9} {}",
                row.n, row.graphs, row.formula_checked, row.fallback, row.mismatches
            );
        }
        let mut summary = String::new();
        let _ = write!(
            summary,
            "total {} graphs, {} mismatches",
            report.total_graphs(),
            report.total_mismatches()
        );
        println!("{summary}");
    }
    if report.total_mismatches() == 0 {
        if !common.json {
            println!("all verified: OK");
        }
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "{} graphs disagree with the oracle",
            report.total_mismatches()
        )))
    }
}
