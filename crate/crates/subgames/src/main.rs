use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use subgames::convergence::{
    adaptive_n_max, alpha1_routes, classify, scan_conjecture, scan_question,
};
use subgames::error::Error;
use subgames::extensions::{
    dynamic_one_or_all, multipile_value, take_any, MoveModel, MultiPileGame, MultiPileValue,
};
use subgames::parse::{parse_config, parse_poly, parse_position, parse_set, parse_sets};
use subgames::recurrence::{eval_sequence, Mode, DEFAULT_BIT_BUDGET};
use subgames::report::{analyze_report, SeqReport, SCHEMA_VERSION};
use subgames::roots::{analyze_roots, find_roots, DEFAULT_ROOT_TOL, DEFAULT_UNIT_EPS};

/// Analysis of win-probability sequences of randomized subtraction games.
#[derive(Parser)]
#[command(name = "subgames", version, about)]
struct Cli {
    /// key=value file overriding built-in defaults (flags win over both)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; '-' or omitted means stdout. Relative paths resolve
    /// against $SUBGAMES_OUT_DIR when it is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float64,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a_0..a_n for one subtraction set
    Seq(SeqArgs),
    /// Classify convergence and report alpha_1 by every route
    Analyze(AnalyzeArgs),
    /// Sweep families of all-odd sets for the conjecture / question
    Scan(ScanArgs),
    /// Exact value of a multi-pile position
    Multipile(MultipileArgs),
    /// Dynamic-rule games with closed-form checks
    Dynamic(DynamicArgs),
    /// Roots of an integer polynomial (ascending coefficients)
    Roots(RootsArgs),
}

#[derive(Args)]
struct SeqArgs {
    /// Comma-separated set, e.g. 3,5
    #[arg(long)]
    set: String,
    /// Largest index to compute
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Bit cap per exact value
    #[arg(long)]
    bit_budget: Option<u64>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    set: String,
    #[arg(long)]
    root_tol: Option<f64>,
    /// Unit-circle classification tolerance
    #[arg(long)]
    eps: Option<f64>,
    /// Tail length for the empirical alpha_1 estimate (default adaptive
    /// from the spectral gap)
    #[arg(long)]
    empirical_n: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    conjecture: bool,
    #[arg(long)]
    question: bool,
    #[arg(long)]
    t_max: usize,
    #[arg(long)]
    k_max: u64,
}

#[derive(Args)]
struct MultipileArgs {
    /// Semicolon-separated per-pile sets, e.g. "1,2;1,3"
    #[arg(long)]
    sets: String,
    /// Comma-separated pile counts, e.g. 4,2
    #[arg(long)]
    pos: String,
    #[arg(long, value_enum, default_value = "pile-then-move")]
    model: ModelArg,
    #[arg(long)]
    memo_budget: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    PileThenMove,
    UniformPairs,
}

#[derive(Args)]
struct DynamicArgs {
    /// Which dynamic rule to evaluate
    #[arg(value_enum)]
    rule: DynamicRule,
    #[arg(long)]
    n: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum DynamicRule {
    OneOrAll,
    TakeAny,
}

#[derive(Args)]
struct RootsArgs {
    /// Space-separated ascending integer coefficients, e.g. "1 0 2"
    #[arg(long)]
    poly: String,
    #[arg(long)]
    tol: Option<f64>,
}

struct Defaults {
    mode: Option<ModeArg>,
    format: Option<Format>,
    root_tol: f64,
    unit_eps: f64,
    bit_budget: u64,
    memo_budget: usize,
    out_dir: Option<PathBuf>,
}

fn load_defaults(config: Option<&Path>) -> Result<Defaults, Error> {
    let mut d = Defaults {
        mode: None,
        format: None,
        root_tol: DEFAULT_ROOT_TOL,
        unit_eps: DEFAULT_UNIT_EPS,
        bit_budget: DEFAULT_BIT_BUDGET,
        memo_budget: 1 << 22,
        out_dir: std::env::var_os("SUBGAMES_OUT_DIR").map(PathBuf::from),
    };
    let Some(path) = config else { return Ok(d) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
    let map: BTreeMap<String, String> = parse_config(&text)?;
    let parse_num = |key: &str, v: &str| -> Result<f64, Error> {
        v.parse()
            .map_err(|_| Error::Parse(format!("config {key}: bad number '{v}'")))
    };
    for (key, value) in &map {
        match key.as_str() {
            "mode" => {
                d.mode = Some(match value.as_str() {
                    "exact" => ModeArg::Exact,
                    "float64" => ModeArg::Float64,
                    "auto" => ModeArg::Auto,
                    other => return Err(Error::Parse(format!("config mode: '{other}'"))),
                })
            }
            "format" => {
                d.format = Some(match value.as_str() {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    "table" => Format::Table,
                    other => return Err(Error::Parse(format!("config format: '{other}'"))),
                })
            }
            "root_tol" => d.root_tol = parse_num(key, value)?,
            "unit_eps" => d.unit_eps = parse_num(key, value)?,
            "bit_budget" => d.bit_budget = parse_num(key, value)? as u64,
            "memo_budget" => d.memo_budget = parse_num(key, value)? as usize,
            "out_dir" => d.out_dir = Some(PathBuf::from(value)),
            other => return Err(Error::Parse(format!("unknown config key '{other}'"))),
        }
    }
    Ok(d)
}

fn emit(out: Option<&Path>, out_dir: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) if p.as_os_str() == "-" => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            let path = match out_dir {
                Some(dir) if p.is_relative() => dir.join(p),
                _ => p.to_path_buf(),
            };
            std::fs::write(&path, text)
                .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let defaults = load_defaults(cli.config.as_deref())?;
    let out = cli.out.as_deref();
    let out_dir = defaults.out_dir.clone();
    let out_dir = out_dir.as_deref();

    match cli.command {
        Command::Seq(args) => {
            let set = parse_set(&args.set)?;
            let mode = match args.mode.or(defaults.mode).unwrap_or(ModeArg::Auto) {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Float64 => Mode::Float64,
                ModeArg::Auto => {
                    if args.n <= 10_000 {
                        Mode::Exact
                    } else {
                        Mode::Float64
                    }
                }
            };
            let budget = args.bit_budget.unwrap_or(defaults.bit_budget);
            let run = eval_sequence(&set, args.n, mode, budget)?;
            let report = SeqReport::from_run(&run);
            let text = match args.format.or(defaults.format).unwrap_or(Format::Csv) {
                Format::Csv => report.to_csv(),
                Format::Json => serde_json::to_string_pretty(&report).unwrap() + "\n",
                Format::Table => {
                    let mut t = format!("{:>8}  {:>16}  {:>20}\n", "n", "exact", "float");
                    for row in &report.rows {
                        t.push_str(&format!(
                            "{:>8}  {:>16}  {:>20}\n",
                            row.n,
                            row.value_exact.as_deref().unwrap_or("-"),
                            row.value_float
                        ));
                    }
                    t
                }
            };
            emit(out, out_dir, &text)
        }
        Command::Analyze(args) => {
            let set = parse_set(&args.set)?;
            let root_tol = args.root_tol.unwrap_or(defaults.root_tol);
            let eps = args.eps.unwrap_or(defaults.unit_eps);
            let classification = classify(&set);
            let analysis = analyze_roots(&classification.reduced, root_tol, eps)?;
            let alpha1 = if classification.reduced.all_odd() && classification.reduced.t() >= 2 {
                let n = args.empirical_n.unwrap_or_else(|| {
                    adaptive_n_max(analysis.spectral_gap, 1e-6, 2000, 2_000_000)
                });
                Some(alpha1_routes(&classification.reduced, n)?)
            } else {
                None
            };
            let report = analyze_report(&classification, &analysis, alpha1)?;
            let text = match args.format.or(defaults.format).unwrap_or(Format::Json) {
                Format::Table => {
                    let mut t = String::new();
                    t.push_str(&format!("set              {}\n", args.set));
                    t.push_str(&format!("reduced          {:?} (factor {})\n", report.reduced_set, report.reduction_factor));
                    t.push_str(&format!("verdict          {}\n", serde_json::to_string(&report.verdict).unwrap()));
                    t.push_str(&format!("even/odd limits  {} / {}\n", report.even_limit, report.odd_limit));
                    t.push_str(&format!("spectral gap     {}\n", report.root_summary.spectral_gap));
                    t
                }
                _ => serde_json::to_string_pretty(&report).unwrap() + "\n",
            };
            emit(out, out_dir, &text)
        }
        Command::Scan(args) => {
            if !args.conjecture && !args.question {
                return Err(Error::Parse(
                    "pass --conjecture and/or --question".into(),
                ));
            }
            let mut text = String::new();
            if args.conjecture {
                let report = scan_conjecture(args.t_max, args.k_max)?;
                for e in &report.entries {
                    text.push_str(&serde_json::to_string(e).unwrap());
                    text.push('\n');
                }
                text.push_str(&format!(
                    "{{\"schema_version\":{SCHEMA_VERSION},\"summary\":\"conjecture\",\"t_max\":{},\"k_max\":{},\"verified\":{},\"failures\":{}}}\n",
                    report.t_max,
                    report.k_max,
                    report.verified,
                    report.failures.len()
                ));
            }
            if args.question {
                let report = scan_question(args.t_max, args.k_max)?;
                for e in &report.entries {
                    text.push_str(&serde_json::to_string(e).unwrap());
                    text.push('\n');
                }
                text.push_str(&format!(
                    "{{\"schema_version\":{SCHEMA_VERSION},\"summary\":\"question\",\"t_max\":{},\"k_max\":{},\"zero_count\":{},\"all_negative\":{},\"min_abs_alpha1\":{}}}\n",
                    report.t_max,
                    report.k_max,
                    report.zero_count,
                    report.all_negative,
                    serde_json::to_string(&report.min_abs_alpha1).unwrap()
                ));
            }
            emit(out, out_dir, &text)
        }
        Command::Multipile(args) => {
            let sets = parse_sets(&args.sets)?;
            let pos = parse_position(&args.pos)?;
            let game = MultiPileGame::new(sets)?;
            let model = match args.model {
                ModelArg::PileThenMove => MoveModel::PileThenMove,
                ModelArg::UniformPairs => MoveModel::UniformPairs,
            };
            let budget = args.memo_budget.unwrap_or(defaults.memo_budget);
            let (value, visited) = multipile_value(&game, &pos, model, budget)?;
            let report = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "sets": game.sets().iter().map(|s| s.elements().to_vec()).collect::<Vec<_>>(),
                "position": pos,
                "model": model,
                "value": MultiPileValue {
                    value_num: value.numer().to_string(),
                    value_den: value.denom().to_string(),
                    value_float: num_traits::ToPrimitive::to_f64(&value).unwrap(),
                    visited_states: visited,
                },
            });
            emit(out, out_dir, &(serde_json::to_string_pretty(&report).unwrap() + "\n"))
        }
        Command::Dynamic(args) => {
            let (rule, value) = match args.rule {
                DynamicRule::OneOrAll => ("one-or-all", dynamic_one_or_all(args.n)),
                DynamicRule::TakeAny => ("take-any", take_any(args.n)),
            };
            let report = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "rule": rule,
                "n": args.n,
                "value": format!("{}/{}", value.numer(), value.denom()),
                "value_float": num_traits::ToPrimitive::to_f64(&value).unwrap(),
            });
            emit(out, out_dir, &(serde_json::to_string_pretty(&report).unwrap() + "\n"))
        }
        Command::Roots(args) => {
            let poly = parse_poly(&args.poly)?;
            let roots = find_roots(&poly, args.tol.unwrap_or(defaults.root_tol))?;
            let report = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "poly": poly.to_string(),
                "roots": roots,
            });
            emit(out, out_dir, &(serde_json::to_string_pretty(&report).unwrap() + "\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit(_) | Error::NonConvergence(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
