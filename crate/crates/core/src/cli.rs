//! The `treewalk` command line: analyze, gen, audit, sweep, simulate.
//!
//! Every command writes one JSON document to stdout except `sweep`, which
//! writes CSV unless `--format json` is given. Exit status is 0 on success
//! or a verified audit, 1 on usage and input errors, 2 when an audit reports
//! a refutation or a discrepancy.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::audit::{
    audit_formula, audit_proposition_barycenter_in, audit_theorem_global_in, audit_theorem_max_in,
    audit_theorem_min_in, simulate_hitting_with, AuditReport, AuditStatus, GLOBAL_AUDIT_CAP,
};
use crate::exact::{exact_json, int_json, ExactRational};
use crate::families::{closed_form, generate, Family, FamilySpec, FormulaId};
use crate::tree::{
    canonical_form, diameter_and_geodesic, parse_edge_list, to_dot, write_edge_list, TreeCatalog,
    DEFAULT_ENUMERATION_CAP,
};
use crate::walk::{barycenter, j_max, j_min, joining_times, kemeny, meeting_times, t_bestmeet, t_meet, Extremum};
use crate::{Exec, Tree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DISCREPANCY: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "treewalk", version, about = "Exact random-walk statistics on trees")]
struct Cli {
    /// Worker threads for enumeration, audits and simulation (1 = sequential).
    #[arg(long, global = true, env = "TREEWALK_THREADS")]
    threads: Option<usize>,
    /// Leave the timing field out of reports so reruns are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Walk statistics of a tree read from an edge-list file.
    Analyze(AnalyzeArgs),
    /// Generate a family member as an edge list, with ledger predictions.
    Gen(GenArgs),
    /// Check a claim: thm-min, thm-max, thm-global, prop-barycenter or formula <id>.
    Audit(AuditArgs),
    /// One exact quantity over a grid of family members or enumerated classes.
    Sweep(SweepArgs),
    /// Monte Carlo estimate of a hitting time against its exact value.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated vertex ids for the per-vertex table; all by default.
    #[arg(long, value_delimiter = ',')]
    vertices: Option<Vec<usize>>,
    /// Also write the tree in Graphviz format.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GenFamily {
    Path,
    Star,
    Lever,
    BalancedLever,
    Broom,
    DoubleBroom,
    BalancedDoubleBroom,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: Option<usize>,
    /// Fulcrum index for a lever.
    #[arg(long)]
    k: Option<usize>,
    /// Leaves at v1 for a double broom, v0 included.
    #[arg(long)]
    left: Option<usize>,
    /// Leaves at v(d-1) for a double broom, v(d) included.
    #[arg(long)]
    right: Option<usize>,
    /// Write the edge list here instead of embedding it in the report.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AuditArgs {
    claim: String,
    /// Formula id, for the `formula` claim.
    formula: Option<String>,
    /// Order or range of orders, as `8`, `3..20` or `3..=20` (both ends inclusive).
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// Largest order for prop-barycenter.
    #[arg(long, default_value_t = GLOBAL_AUDIT_CAP)]
    n_cap: usize,
    /// Enumeration cap for the extremal audits.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SweepFamily {
    Path,
    Star,
    BalancedLever,
    Broom,
    BalancedDoubleBroom,
    Enumerated,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum Quantity {
    TBestmeet,
    TMeet,
    Kemeny,
    JMin,
    JMax,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: SweepFamily,
    #[arg(long)]
    n: String,
    /// Diameters; defaults to every valid one.
    #[arg(long)]
    d: Option<String>,
    #[arg(long, value_enum)]
    quantity: Quantity,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    u: usize,
    #[arg(long)]
    w: usize,
    #[arg(long, default_value_t = 100_000)]
    walks: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn fail(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

type CliResult<T> = Result<T, CliError>;

/// What a command produced before it is wrapped in an envelope.
enum Output {
    Json { digest: String, results: Value, status: i32 },
    Text { body: String, status: i32 },
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if shown {
                let _ = write!(out, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(err, "{rendered}");
            return EXIT_ERROR;
        }
    };
    let exec = configure_threads(cli.threads);
    let started = Instant::now();
    let (name, result) = match &cli.command {
        Command::Analyze(a) => ("analyze", analyze(a)),
        Command::Gen(a) => ("gen", gen(a)),
        Command::Audit(a) => ("audit", audit(a, exec)),
        Command::Sweep(a) => ("sweep", sweep(a, exec)),
        Command::Simulate(a) => ("simulate", simulate(a, exec)),
    };
    let elapsed = started.elapsed().as_secs_f64() * 1e3;
    match result {
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
        Ok(Output::Text { body, status }) => {
            let _ = out.write_all(body.as_bytes());
            status
        }
        Ok(Output::Json { digest, results, status }) => {
            let mut envelope = Map::new();
            envelope.insert("command".into(), json!(name));
            envelope.insert("input_digest".into(), json!(digest));
            envelope.insert("results".into(), results);
            if !cli.no_timing {
                envelope.insert("timing_ms".into(), json!((elapsed * 1e3).round() / 1e3));
            }
            let text = serde_json::to_string_pretty(&Value::Object(envelope)).expect("json values serialize");
            let _ = writeln!(out, "{text}");
            status
        }
    }
}

fn configure_threads(threads: Option<usize>) -> Exec {
    match threads {
        Some(1) => Exec::Sequential,
        #[cfg(feature = "parallel")]
        Some(k) => {
            // The global pool can only be set once per process; later calls keep it.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Exec::Sequential,
        None => Exec::default(),
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_tree(path: &Path) -> CliResult<(Tree, String)> {
    let text = fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))?;
    let tree = parse_edge_list(&text).map_err(|e| fail(format!("{}: {e}", path.display())))?;
    Ok((tree, sha256_hex(text.as_bytes())))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| fail(format!("{}: {e}", path.display())))
}

/// `8`, `3..20` and `3..=20` all denote inclusive ranges.
fn parse_range(s: &str) -> CliResult<RangeInclusive<usize>> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| fail(format!("bad range {s:?}")));
    let range = match s.split_once("..") {
        None => {
            let v = num(s)?;
            v..=v
        }
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
    };
    if range.is_empty() {
        return Err(fail(format!("empty range {s:?}")));
    }
    Ok(range)
}

fn extremum_json(e: &Extremum<ExactRational>) -> Value {
    json!({ "value": exact_json(&e.value), "witness": e.witness, "ties": e.ties })
}

fn analyze(a: &AnalyzeArgs) -> CliResult<Output> {
    let (t, digest) = read_tree(&a.input)?;
    let n = t.order();
    let targets: Vec<usize> = match &a.vertices {
        Some(vs) => {
            if let Some(&v) = vs.iter().find(|&&v| v >= n) {
                return Err(fail(format!("vertex {v} out of range for n = {n}")));
            }
            vs.clone()
        }
        None => t.vertices().collect(),
    };
    let joins = joining_times(&t);
    let meets = meeting_times(&t);
    let per_vertex: Vec<Value> = targets
        .iter()
        .map(|&v| {
            json!({
                "vertex": v,
                "degree": t.degree(v),
                "joining_time": int_json(&joins[v]),
                "meeting_time": exact_json(&meets[v]),
            })
        })
        .collect();
    let (d, geodesic) = diameter_and_geodesic(&t);
    let bary = barycenter(&t);
    if let Some(path) = &a.dot {
        write_file(path, &to_dot(&t, "tree"))?;
    }
    let results = json!({
        "n": n,
        "diameter": d,
        "geodesic": geodesic,
        "canonical": canonical_form(&t).to_string(),
        "vertices": per_vertex,
        "t_meet": extremum_json(&t_meet(&t)),
        "t_bestmeet": extremum_json(&t_bestmeet(&t)),
        "kemeny": exact_json(&kemeny(&t)),
        "barycenter": { "centers": bary.centers, "component_sizes": bary.component_sizes },
    });
    Ok(Output::Json { digest, results, status: EXIT_OK })
}

fn gen_spec(a: &GenArgs) -> CliResult<FamilySpec> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| fail(format!("--{flag} is required for this family")));
    Ok(match a.family {
        GenFamily::Path => FamilySpec::path(a.n),
        GenFamily::Star => FamilySpec::star(a.n),
        GenFamily::Lever => FamilySpec::lever(a.n, need(a.d, "d")?, need(a.k, "k")?),
        GenFamily::BalancedLever => FamilySpec::balanced_lever(a.n, need(a.d, "d")?),
        GenFamily::Broom => FamilySpec::broom(a.n, need(a.d, "d")?),
        GenFamily::DoubleBroom => {
            FamilySpec::double_broom(a.n, need(a.d, "d")?, need(a.left, "left")?, need(a.right, "right")?)
        }
        GenFamily::BalancedDoubleBroom => FamilySpec::balanced_double_broom(a.n, need(a.d, "d")?),
    })
}

/// Ledger entries that describe `spec`.
fn predictions(spec: &FamilySpec) -> Vec<FormulaId> {
    let FamilySpec { family, n, d } = *spec;
    let balanced_lever = matches!(family, Family::Lever { k } if k == d / 2);
    let balanced_dbroom = matches!(family, Family::DoubleBroom { left, right }
        if left == (n - d - 1) / 2 + 1 && right == (n - d - 1).div_ceil(2) + 1);
    let mut ids = Vec::new();
    match family {
        Family::Path => ids.extend([FormulaId::JmaxPath, FormulaId::TmeetPath, FormulaId::jmin_path_for(n)]),
        Family::Star => ids.extend([FormulaId::TmeetStar, FormulaId::JmaxStarPrinted, FormulaId::JmaxStarCorrected]),
        Family::Broom => ids.push(FormulaId::JmaxBroom),
        _ => {}
    }
    if balanced_lever {
        ids.extend([FormulaId::jmin_lever_for(d), FormulaId::BestmeetLever]);
    }
    if balanced_dbroom {
        ids.extend([FormulaId::jmin_dbroom_for(n, d), FormulaId::bestmeet_dbroom_for(n, d)]);
    }
    ids.retain(|&id| closed_form(id, n, d).is_ok());
    ids
}

fn gen(a: &GenArgs) -> CliResult<Output> {
    let spec = gen_spec(a)?;
    let t = generate(&spec)?;
    let edges = write_edge_list(&t);
    let predicted: Vec<Value> = predictions(&spec)
        .into_iter()
        .map(|id| json!({ "formula": id.as_str(), "value": exact_json(&closed_form(id, spec.n, spec.d).unwrap()) }))
        .collect();
    let mut results = json!({
        "family": spec.family.to_string(),
        "n": spec.n,
        "d": spec.d,
        "geodesic": spec.geodesic(),
        "canonical": canonical_form(&t).to_string(),
        "predicted": predicted,
        "computed": {
            "j_min": int_json(&j_min(&t).value),
            "j_max": int_json(&j_max(&t).value),
            "t_bestmeet": exact_json(&t_bestmeet(&t).value),
            "t_meet": exact_json(&t_meet(&t).value),
        },
    });
    match &a.output {
        Some(path) => {
            write_file(path, &edges)?;
            results["output"] = json!(path.display().to_string());
        }
        None => results["edge_list"] = json!(edges),
    }
    if let Some(path) = &a.dot {
        write_file(path, &to_dot(&t, "tree"))?;
    }
    Ok(Output::Json { digest: sha256_hex(edges.as_bytes()), results, status: EXIT_OK })
}

fn report_status(reports: &[AuditReport]) -> i32 {
    let bad = |s| matches!(s, AuditStatus::Refuted | AuditStatus::DiscrepancyInPaper);
    if reports.iter().any(|r| bad(r.status)) {
        EXIT_DISCREPANCY
    } else {
        EXIT_OK
    }
}

fn audit(a: &AuditArgs, exec: Exec) -> CliResult<Output> {
    let catalog = TreeCatalog::new(a.cap, exec);
    let ns = a.n.as_deref().map(parse_range).transpose()?;
    let ds = a.d.as_deref().map(parse_range).transpose()?;
    let need_n = || ns.clone().ok_or_else(|| fail(format!("--n is required for {}", a.claim)));
    let mut reports = Vec::new();
    match a.claim.as_str() {
        "thm-min" | "thm-max" => {
            for n in need_n()? {
                let d_range = ds.clone().unwrap_or(2..=n.saturating_sub(1).max(2));
                for d in d_range {
                    let r = if a.claim == "thm-min" {
                        audit_theorem_min_in(&catalog, n, d)?
                    } else {
                        audit_theorem_max_in(&catalog, n, d)?
                    };
                    reports.push(r);
                }
            }
        }
        "thm-global" => {
            for n in need_n()? {
                reports.push(audit_theorem_global_in(&catalog, n, GLOBAL_AUDIT_CAP.min(a.cap))?);
            }
        }
        "prop-barycenter" => reports.push(audit_proposition_barycenter_in(&catalog, a.n_cap)?),
        "formula" => {
            let id: FormulaId = a.formula.as_deref().ok_or_else(|| fail("formula needs an id"))?.parse()?;
            let ns = need_n()?;
            let ds = ds.unwrap_or(2..=ns.end().saturating_sub(1).max(2));
            reports.push(audit_formula(id, ns, ds)?);
        }
        other => return Err(fail(format!("unknown claim {other:?}"))),
    }
    let digest = sha256_hex(format!("{} {:?} {:?} {:?}", a.claim, a.formula, a.n, a.d).as_bytes());
    let status = report_status(&reports);
    let results = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        json!({ "reports": reports.iter().map(AuditReport::to_json).collect::<Vec<_>>() })
    };
    Ok(Output::Json { digest, results, status })
}

struct Row {
    n: usize,
    d: usize,
    family: String,
    value: ExactRational,
}

fn quantity(t: &Tree, q: Quantity) -> ExactRational {
    match q {
        Quantity::TBestmeet => t_bestmeet(t).value,
        Quantity::TMeet => t_meet(t).value,
        Quantity::Kemeny => kemeny(t),
        Quantity::JMin => ExactRational::from_integer(j_min(t).value),
        Quantity::JMax => ExactRational::from_integer(j_max(t).value),
    }
}

fn sweep_rows(a: &SweepArgs, exec: Exec) -> CliResult<Vec<Row>> {
    let ns = parse_range(&a.n)?;
    let ds = a.d.as_deref().map(parse_range).transpose()?;
    let in_d = |d: usize| ds.as_ref().is_none_or(|r| r.contains(&d));
    let name = match a.family {
        SweepFamily::Path => "path",
        SweepFamily::Star => "star",
        SweepFamily::BalancedLever => "balanced-lever",
        SweepFamily::Broom => "broom",
        SweepFamily::BalancedDoubleBroom => "balanced-double-broom",
        SweepFamily::Enumerated => "enumerated",
    };
    let mut rows = Vec::new();
    if a.family == SweepFamily::Enumerated {
        let catalog = TreeCatalog::new(a.cap, exec);
        for n in ns {
            for e in catalog.trees(n)?.iter().filter(|e| in_d(e.diameter)) {
                let value = quantity(&e.tree, a.quantity);
                rows.push(Row { n, d: e.diameter, family: format!("{name}:{}", e.canonical), value });
            }
        }
        return Ok(rows);
    }
    let mut specs = Vec::new();
    for n in ns {
        let fixed = match a.family {
            SweepFamily::Path => Some(FamilySpec::path(n)),
            SweepFamily::Star => Some(FamilySpec::star(n)),
            _ => None,
        };
        if let Some(spec) = fixed {
            if spec.validate().is_ok() && in_d(spec.d) {
                specs.push(spec);
            }
            continue;
        }
        let d_range = ds.clone().unwrap_or(2..=n.saturating_sub(1));
        for d in d_range {
            let spec = match a.family {
                SweepFamily::BalancedLever => FamilySpec::balanced_lever(n, d),
                SweepFamily::Broom => FamilySpec::broom(n, d),
                _ => FamilySpec::balanced_double_broom(n, d),
            };
            if spec.validate().is_ok() {
                specs.push(spec);
            }
        }
    }
    let values = exec.map(&specs, |spec| quantity(&generate(spec).expect("validated"), a.quantity));
    for (spec, value) in specs.into_iter().zip(values) {
        rows.push(Row { n: spec.n, d: spec.d, family: name.to_string(), value });
    }
    Ok(rows)
}

fn big_str(v: &BigInt) -> String {
    v.to_string()
}

fn sweep(a: &SweepArgs, exec: Exec) -> CliResult<Output> {
    let rows = sweep_rows(a, exec)?;
    match a.format {
        Format::Csv => {
            let mut body = String::from("n,d,family,quantity_num,quantity_den\n");
            for r in &rows {
                body.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    r.d,
                    r.family,
                    big_str(r.value.numer()),
                    big_str(r.value.denom())
                ));
            }
            Ok(Output::Text { body, status: EXIT_OK })
        }
        Format::Json => {
            let quantity = a.quantity.to_possible_value().expect("no skipped variants").get_name().to_string();
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "n": r.n, "d": r.d, "family": r.family, "value": exact_json(&r.value) }))
                .collect();
            let digest = sha256_hex(format!("{:?} {} {:?} {quantity}", a.family, a.n, a.d).as_bytes());
            Ok(Output::Json { digest, results: json!({ "quantity": quantity, "rows": rows }), status: EXIT_OK })
        }
    }
}

fn simulate(a: &SimulateArgs, exec: Exec) -> CliResult<Output> {
    let (t, digest) = read_tree(&a.input)?;
    let n = t.order();
    for v in [a.u, a.w] {
        if v >= n {
            return Err(fail(format!("vertex {v} out of range for n = {n}")));
        }
    }
    if a.walks == 0 {
        return Err(fail("--walks must be at least 1"));
    }
    let s = simulate_hitting_with(&t, a.u, a.w, a.walks, a.seed, exec);
    let results = json!({
        "u": a.u,
        "w": a.w,
        "seed": s.seed,
        "walks": s.walks,
        "mean": s.mean,
        "mean_exact": exact_json(&s.mean_exact),
        "exact": exact_json(&s.exact),
        "stderr": s.stderr,
        "z": s.z,
    });
    Ok(Output::Json { digest, results, status: EXIT_OK })
}
