mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use bongle_core::bounds::{to_csv, to_json, CONJECTURE_LABEL};
use bongle_core::*;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{human_table, sig10, Format};

/// Exit statuses.
mod exit {
    pub const OTHER: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const NOT_HYPERBOLIC: u8 = 3;
    pub const OPTIMIZER: u8 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "bongle", version, about = "Hyperbolicity and hyperbolic volumes of bongles")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Projected-gradient tolerance of the optimizer.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,
    #[arg(long, default_value_t = 5000, global = true)]
    max_iter: usize,
    /// Re-run the optimizer from this many random starts and report the spread.
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Cross-check balanced closed forms against the optimizer.
    #[arg(long, global = true)]
    verify: bool,
    /// Exit 0 when only an upper bound could be computed.
    #[arg(long, global = true)]
    allow_bound: bool,
    /// Write the triangulation as JSON to PATH, or to stderr without PATH.
    #[arg(long, global = true, value_name = "PATH", num_args = 0..=1)]
    dump_triangulation: Option<Option<PathBuf>>,
    /// Largest n accepted by enumeration.
    #[arg(long, default_value_t = bongle::DEFAULT_ENUMERATION_CAP, global = true)]
    cap: usize,
}

impl GlobalOpts {
    fn optimizer(&self) -> OptimizerOptions {
        let mut o = OptimizerOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            verify: self.verify,
            ..Default::default()
        };
        if let Some(r) = self.restarts {
            o.restarts = r;
        }
        o
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternation, type and hyperbolicity of a bongle.
    Classify { spec: String },
    /// Hyperbolic volume of a bongle.
    Volume { spec: String },
    /// One canonical bongle per equivalence class.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
    },
    /// Volumes of every alternating class for n_min <= n <= n_max.
    Table { n_min: usize, n_max: usize },
    /// Balanced volumes against 5n v_tet and the (n-1) inequality.
    Bounds { n_min: u32, n_max: u32 },
    #[command(subcommand)]
    Scan(Scan),
}

#[derive(Subcommand, Debug)]
enum Scan {
    /// V_n^B / n against its limit 5 v_tet.
    Limit { n_min: u32, n_max: u32 },
    /// Volumes by innie count k for every alternating class of n-bongles.
    Korder { n: usize },
    /// The two dilogarithm terms of (2n/(n-1)) Vol(T_n) and their trends.
    Monotonicity { n_min: u32, n_max: u32 },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FilterArg {
    All,
    Alternating,
    Balanced,
}

impl From<FilterArg> for EnumerationFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => EnumerationFilter::All,
            FilterArg::Alternating => EnumerationFilter::Alternating,
            FilterArg::Balanced => EnumerationFilter::Balanced,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Classify { spec } => classify(g, spec),
        Command::Volume { spec } => volume(g, spec),
        Command::Enumerate { n, filter } => enumerate(g, *n, (*filter).into()),
        Command::Table { n_min, n_max } => table(g, *n_min, *n_max),
        Command::Bounds { n_min, n_max } => {
            let rows = bound_table(*n_min..=*n_max).map_err(|e| fail(exit::OTHER, e))?;
            emit_rows(g.format, "bounds", None, &rows, |r| {
                vec![
                    r.n.to_string(),
                    sig10(r.balanced_volume),
                    sig10(r.five_n_vtet),
                    sig10(r.per_n_minus_one),
                    sig10(r.inequality_margin),
                    yes_no(r.inequality_holds),
                    yes_no(r.below_supremum),
                ]
            }, &["n", "V_n^B", "5n v_tet", "V_n^B/(n-1)", "margin", "> 5 v_tet", "< 5n v_tet"])
        }
        Command::Scan(Scan::Limit { n_min, n_max }) => {
            let rows = limit_table(*n_min..=*n_max).map_err(|e| fail(exit::OTHER, e))?;
            emit_rows(g.format, "limit", None, &rows, |r| {
                vec![r.n.to_string(), sig10(r.per_n), sig10(r.gap), opt_flag(r.increasing)]
            }, &["n", "V_n^B/n", "5 v_tet - V_n^B/n", "increasing"])
        }
        Command::Scan(Scan::Monotonicity { n_min, n_max }) => monotonicity(g, *n_min, *n_max),
        Command::Scan(Scan::Korder { n }) => korder(g, *n),
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn opt_flag(b: Option<bool>) -> String {
    b.map(yes_no).unwrap_or_else(|| "-".to_string())
}

fn opt_num(v: Option<f64>) -> String {
    v.map(sig10).unwrap_or_else(|| "-".to_string())
}

fn parse(spec: &str) -> Result<Bongle, Failure> {
    spec.parse::<Bongle>().map_err(|e| fail(exit::PARSE, e))
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("output serializes"));
}

fn emit_rows<T: Serialize + Clone>(
    format: Format,
    table: &str,
    note: Option<&str>,
    rows: &[T],
    cells: impl Fn(&T) -> Vec<String>,
    header: &[&str],
) -> CmdResult {
    match format {
        Format::Json => print_json(&to_json(table, note, rows)),
        Format::Csv => print!("{}", to_csv(rows).map_err(|e| fail(exit::OTHER, e))?),
        Format::Human => {
            if let Some(n) = note {
                println!("# {n}");
            }
            let body: Vec<Vec<String>> = rows.iter().map(cells).collect();
            print!("{}", human_table(header, &body));
        }
    }
    Ok(())
}

#[derive(Serialize, Clone)]
struct Classification {
    bongle: Bongle,
    spec: String,
    n: usize,
    innies: usize,
    traversal: String,
    alternating: bool,
    balanced: bool,
    non_alternating_pairs: Vec<bongle::NonAltPair>,
    nonalternating_type: Option<NonAltType>,
    verdict: HyperbolicityVerdict,
    /// `(central, exterior)` equatorial class sizes after orientation normalization.
    edge_classes: Option<(usize, usize)>,
}

fn classify(g: &GlobalOpts, spec: &str) -> CmdResult {
    let b = parse(spec)?;
    let pairs = b.non_alternating_pairs();
    let c = Classification {
        spec: b.to_string(),
        n: b.len(),
        innies: b.innie_count(),
        traversal: b.traversal_string(),
        alternating: b.is_alternating(),
        balanced: b.is_balanced(),
        nonalternating_type: classify_nonalternating(&b).ok(),
        verdict: decide_hyperbolic(&b),
        edge_classes: b.normalize_orientation().edge_class_counts().ok(),
        non_alternating_pairs: pairs,
        bongle: b,
    };
    match g.format {
        Format::Json => print_json(&c),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                bongle: &'a str,
                n: usize,
                innies: usize,
                traversal: &'a str,
                alternating: bool,
                balanced: bool,
                nonalternating_pairs: usize,
                nonalternating_type: Option<NonAltType>,
                hyperbolic: bool,
                reason: HyperbolicityReason,
                provisional: bool,
                known_volume: Option<f64>,
                central_class: Option<usize>,
                exterior_class: Option<usize>,
            }
            let row = Row {
                bongle: &c.spec,
                n: c.n,
                innies: c.innies,
                traversal: &c.traversal,
                alternating: c.alternating,
                balanced: c.balanced,
                nonalternating_pairs: c.non_alternating_pairs.len(),
                nonalternating_type: c.nonalternating_type,
                hyperbolic: c.verdict.is_hyperbolic,
                reason: c.verdict.reason,
                provisional: c.verdict.provisional,
                known_volume: c.verdict.known_volume,
                central_class: c.edge_classes.map(|e| e.0),
                exterior_class: c.edge_classes.map(|e| e.1),
            };
            print!("{}", to_csv(&[row]).map_err(|e| fail(exit::OTHER, e))?);
        }
        Format::Human => {
            println!("bongle:       {}", c.spec);
            println!("n:            {}", c.n);
            println!("innies k:     {}", c.innies);
            println!("traversal:    {}", c.traversal);
            println!("alternating:  {}", yes_no(c.alternating));
            println!("balanced:     {}", yes_no(c.balanced));
            if !c.alternating {
                let uu = c
                    .non_alternating_pairs
                    .iter()
                    .filter(|p| p.repeated == bongle::RepeatedLetter::Uu)
                    .count();
                println!(
                    "non-alternating pairs: {} ({} uu, {} oo)",
                    c.non_alternating_pairs.len(),
                    uu,
                    c.non_alternating_pairs.len() - uu
                );
                if let Some(t) = c.nonalternating_type {
                    println!("type:         {t:?}");
                }
            }
            let v = &c.verdict;
            println!(
                "hyperbolic:   {} ({:?}{})",
                yes_no(v.is_hyperbolic),
                v.reason,
                if v.provisional { ", provisional" } else { "" }
            );
            if let Some(vol) = v.known_volume {
                println!("volume:       {}", sig10(vol));
            }
            if let Some((central, exterior)) = c.edge_classes {
                println!("edge classes: {central} central, {exterior} exterior");
            }
        }
    }
    Ok(())
}

fn dump_triangulation(g: &GlobalOpts, b: &Bongle) -> CmdResult {
    let Some(target) = &g.dump_triangulation else {
        return Ok(());
    };
    let t = build_decomposition(b, SystemKind::Strict).map_err(|e| fail(exit::OTHER, e))?;
    let text = serde_json::to_string_pretty(&t.debug_json()).expect("dump serializes");
    match target {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| fail(exit::OTHER, format!("{}: {e}", path.display())))?,
        None => eprintln!("{text}"),
    }
    Ok(())
}

fn volume(g: &GlobalOpts, spec: &str) -> CmdResult {
    let b = parse(spec)?;
    let opts = g.optimizer();
    if b.is_alternating() && b.len() >= 3 {
        dump_triangulation(g, &b)?;
    }
    let (mut report, code) = match bongle_volume(&b, &opts) {
        Ok(r) => (r, 0),
        Err(OptimizerError::NotHyperbolic(v)) => {
            if g.format == Format::Json {
                print_json(&v);
            }
            let provisional = if v.provisional { ", provisional" } else { "" };
            return Err(fail(exit::NOT_HYPERBOLIC, format!("{b} is not hyperbolic ({:?}{provisional})", v.reason)));
        }
        Err(OptimizerError::NoInteriorProgress(r)) => {
            let code = if g.allow_bound { 0 } else { exit::OPTIMIZER };
            (*r, code)
        }
        Err(e) => return Err(fail(exit::OPTIMIZER, e)),
    };
    if g.restarts.is_some() && report.method == VolumeMethod::Optimizer {
        let t = build_decomposition(&b, SystemKind::Strict).map_err(|e| fail(exit::OTHER, e))?;
        report.audit = Some(restart_audit(&t, &opts).map_err(|e| fail(exit::OPTIMIZER, e))?);
    }
    match g.format {
        Format::Json => print_json(&report),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                bongle: String,
                n: usize,
                innies: usize,
                volume: f64,
                method: VolumeMethod,
                accuracy: f64,
                iterations: usize,
                projected_gradient_norm: f64,
                max_residual: f64,
                converged: bool,
                degenerate_slots: usize,
                convention: Option<String>,
                provisional: bool,
            }
            let row = Row {
                bongle: report.bongle.to_string(),
                n: report.bongle.len(),
                innies: report.bongle.normalize_orientation().innie_count(),
                volume: report.volume,
                method: report.method,
                accuracy: report.accuracy,
                iterations: report.iterations,
                projected_gradient_norm: report.projected_gradient_norm,
                max_residual: report.max_residual,
                converged: report.converged,
                degenerate_slots: report.degenerate_slots.len(),
                convention: report.convention.clone(),
                provisional: report.provisional,
            };
            print!("{}", to_csv(&[row]).map_err(|e| fail(exit::OTHER, e))?);
        }
        Format::Human => print!("{}", output::human_report(&report)),
    }
    if code != 0 {
        return Err(fail(code, "optimizer reached the polytope boundary; reported volume is the upper bound V_n^B"));
    }
    Ok(())
}

fn enumerate(g: &GlobalOpts, n: usize, filter: EnumerationFilter) -> CmdResult {
    let list = enumerate_bongles_with_cap(n, filter, g.cap).map_err(|e| fail(exit::OTHER, e))?;
    #[derive(Serialize, Clone)]
    struct Row {
        n: usize,
        innies: usize,
        bongle: String,
        alternating: bool,
        hyperbolic: bool,
    }
    let rows: Vec<Row> = list
        .iter()
        .map(|b| Row {
            n,
            innies: b.normalize_orientation().innie_count(),
            bongle: b.to_string(),
            alternating: b.is_alternating(),
            hyperbolic: decide_hyperbolic(b).is_hyperbolic,
        })
        .collect();
    emit_rows(g.format, "enumerate", None, &rows, |r| {
        vec![r.bongle.clone(), r.innies.to_string(), yes_no(r.alternating), yes_no(r.hyperbolic)]
    }, &["bongle", "k", "alternating", "hyperbolic"])?;
    if g.format == Format::Human {
        println!("{} classes", rows.len());
    }
    Ok(())
}

fn table(g: &GlobalOpts, n_min: usize, n_max: usize) -> CmdResult {
    let rows = volume_table(n_min, n_max, &g.optimizer(), g.cap).map_err(|e| fail(exit::OTHER, e))?;
    emit_rows(g.format, "volumes", None, &rows, |r| {
        vec![
            r.n.to_string(),
            r.k.to_string(),
            r.bongle.clone(),
            opt_num(r.volume),
            r.method.map(|m| format!("{m:?}")).unwrap_or_else(|| "-".into()),
            r.convention.clone().unwrap_or_else(|| "-".into()),
            r.note.clone().unwrap_or_default(),
        ]
    }, &["n", "k", "bongle", "volume", "method", "convention", "note"])
}

fn monotonicity(g: &GlobalOpts, n_min: u32, n_max: u32) -> CmdResult {
    let scan = monotonicity_scan(n_min..=n_max).map_err(|e| fail(exit::OTHER, e))?;
    let note = format!(
        "finite-range evidence for {n_min}..={n_max}: z1 term decreasing from n = {}, z2 term decreasing from n = {}, \
         combined decreasing from n = {}",
        scan.z1_decreasing_from.map_or("-".into(), |v| v.to_string()),
        scan.z2_decreasing_from.map_or("-".into(), |v| v.to_string()),
        scan.combined_decreasing_from.map_or("-".into(), |v| v.to_string()),
    );
    emit_rows(g.format, "monotonicity", Some(&note), &scan.rows, |r| {
        vec![
            r.n.to_string(),
            sig10(r.z1_term),
            sig10(r.z2_term),
            sig10(r.combined),
            opt_flag(r.z1_decreasing),
            opt_flag(r.z2_decreasing),
            opt_flag(r.combined_decreasing),
        ]
    }, &["n", "z1 term", "z2 term", "combined", "z1 dec", "z2 dec", "combined dec"])
}

fn korder(g: &GlobalOpts, n: usize) -> CmdResult {
    let scan = k_order_scan_with_cap(n, &g.optimizer(), g.cap).map_err(|e| fail(exit::OTHER, e))?;
    let note = format!(
        "{CONJECTURE_LABEL}; n = {n}; every class with more innies has larger volume: {}",
        yes_no(scan.increasing_in_k)
    );
    emit_rows(g.format, "korder", Some(&note), &scan.rows, |r| {
        vec![
            r.k.to_string(),
            r.bongle.clone(),
            opt_num(r.volume),
            opt_num(r.closed_form),
            r.error.clone().unwrap_or_default(),
        ]
    }, &["k", "bongle", "volume", "closed form", "error"])
}
