//! Command-line front end.
//!
//! Exit codes are a stable contract: 0 success, 1 not Sahlqvist, 2 bad
//! input (parse errors, unreadable files, unknown worlds), 3 check
//! failure, 4 internal error.  With `--format json` every error is also
//! written to stderr as a single `{"error": …}` object, and reports on
//! stdout have their elapsed-time field zeroed so identical invocations
//! print identical bytes.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use inlc::bimodal::{correspondent_via_bimodal, tau};
use inlc::classify::{classify, Verdict};
use inlc::corpus;
use inlc::correspond::{correspondent_direct, CorrespondError};
use inlc::fo::FoFormula;
use inlc::formula::Formula;
use inlc::parser::{parse_inl, ParseError, SourceSpan};
use inlc::print::{print_bimodal, print_fo, print_inl, Format};
use inlc::semantics::{random_formula_from, FrameFile};
use inlc::st::st;
use inlc::verify::{
    check_correspondence, check_lemma_monotonicity, check_st_correctness, check_tau_correctness,
    CheckReport, Route,
};

/// Sahlqvist correspondence toolkit for instantial neighbourhood logic.
#[derive(Parser)]
#[command(name = "inlc", version)]
struct Cli {
    /// Output format: text, json or latex.
    #[arg(long, global = true, default_value = "text")]
    format: Format,

    /// Seed for randomized sweeps (also read from INLC_SEED).
    #[arg(long, global = true, env = "INLC_SEED", default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and echo it back.
    Parse(FormulaInput),
    /// Sahlqvist tier and role-tagged decomposition (always JSON).
    Classify(FormulaInput),
    /// Standard translation into the two-sorted first-order language.
    St(FormulaInput),
    /// Translation into the bimodal language.
    Tau(FormulaInput),
    /// First-order frame correspondent of a Sahlqvist formula.
    Correspond {
        #[command(flatten)]
        input: FormulaInput,
        /// Construction to use: direct, bimodal or both.
        #[arg(long, default_value = "direct")]
        route: Route,
    },
    /// Brute-force verification sweep; exits 3 on counterexamples.
    Check {
        /// Property to check: st, tau, mono or correspond.
        #[arg(long)]
        suite: Suite,
        /// Check this formula instead of the built-in corpus.
        #[arg(long)]
        formula: Option<String>,
        /// Random formulas added to the corpus (st and tau suites).
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Connective depth of the random formulas.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Variables of the random formulas, comma-separated.
        #[arg(long, default_value = "p,q")]
        vars: String,
        /// Largest frame size in the sweep.
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Random frames per size above two worlds.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Correspondence route (correspond suite only).
        #[arg(long, default_value = "both")]
        route: Route,
    },
    /// Evaluate a formula at a world of a model read from a JSON file.
    Eval {
        /// Model file.
        #[arg(long, value_name = "PATH")]
        frame: PathBuf,
        /// World name, as listed in the model file.
        #[arg(long)]
        world: String,
        #[command(flatten)]
        input: FormulaInput,
    },
}

/// A formula given either inline or in a file, never both.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct FormulaInput {
    /// Formula text.
    formula: Option<String>,
    /// Read the formula from a file instead.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    St,
    Tau,
    Mono,
    Correspond,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "st" => Ok(Suite::St),
            "tau" => Ok(Suite::Tau),
            "mono" => Ok(Suite::Mono),
            "correspond" => Ok(Suite::Correspond),
            other => Err(format!("unknown suite '{other}' (expected st, tau, mono or correspond)")),
        }
    }
}

enum CliError {
    NotSahlqvist { reason: String },
    Input { kind: &'static str, message: String, span: Option<SourceSpan> },
    CheckFailed { failed: Vec<String> },
    Internal { message: String },
}

impl CliError {
    fn input(kind: &'static str, message: String) -> Self {
        CliError::Input { kind, message, span: None }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::NotSahlqvist { .. } => 1,
            CliError::Input { .. } => 2,
            CliError::CheckFailed { .. } => 3,
            CliError::Internal { .. } => 4,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::NotSahlqvist { reason } => {
                json!({"error": {"kind": "not_sahlqvist", "reason": reason}})
            }
            CliError::Input { kind, message, span } => {
                let mut value = json!({"error": {"kind": kind, "message": message}});
                if let Some(span) = span {
                    value["error"]["start"] = span.start.into();
                    value["error"]["end"] = span.end.into();
                }
                value
            }
            CliError::CheckFailed { failed } => {
                json!({"error": {"kind": "check_failed", "failed": failed}})
            }
            CliError::Internal { message } => {
                json!({"error": {"kind": "internal", "message": message}})
            }
        }
    }

    fn text(&self) -> String {
        match self {
            CliError::NotSahlqvist { reason } => format!("not Sahlqvist: {reason}"),
            CliError::Input { message, .. } => message.clone(),
            CliError::CheckFailed { failed } => format!("check failed: {}", failed.join(", ")),
            CliError::Internal { message } => format!("internal error: {message}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input { kind: "parse", message: e.to_string(), span: Some(e.span) }
    }
}

impl From<CorrespondError> for CliError {
    fn from(e: CorrespondError) -> Self {
        match e {
            CorrespondError::NotSahlqvist { reason } => CliError::NotSahlqvist { reason },
            CorrespondError::Internal(message) => CliError::Internal { message },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match format {
                Format::Json => eprintln!("{}", err.to_json()),
                _ => eprintln!("{}", err.text()),
            }
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Parse(input) => {
            let phi = parse_formula(&input)?;
            println!("{}", print_inl(&phi, cli.format));
        }
        Command::Classify(input) => {
            let phi = parse_formula(&input)?;
            let class = classify(&phi);
            println!("{}", class.to_json());
            if class.verdict == Verdict::NotSahlqvist {
                let reason = class.reason.unwrap_or_else(|| "no tier matches".to_string());
                return Err(CliError::NotSahlqvist { reason });
            }
        }
        Command::St(input) => {
            let phi = parse_formula(&input)?;
            println!("{}", print_fo(&st(&phi, "x"), cli.format));
        }
        Command::Tau(input) => {
            let phi = parse_formula(&input)?;
            println!("{}", print_bimodal(&tau(&phi), cli.format));
        }
        Command::Correspond { input, route } => {
            let phi = parse_formula(&input)?;
            match route {
                Route::Direct => {
                    println!("{}", print_fo(&correspondent_direct(&phi)?, cli.format));
                }
                Route::Bimodal => {
                    println!("{}", print_fo(&correspondent_via_bimodal(&phi)?, cli.format));
                }
                Route::Both => {
                    let direct = correspondent_direct(&phi)?;
                    let bimodal = correspondent_via_bimodal(&phi)?;
                    // Agreement is judged extensionally, over every frame
                    // with at most two worlds.
                    let report = check_correspondence(&phi, Route::Both, 2, 0, cli.seed)?;
                    let agree = report.route_disagreements.is_empty();
                    if cli.format == Format::Json {
                        let value = json!({
                            "direct": fo_value(&direct)?,
                            "bimodal": fo_value(&bimodal)?,
                            "agree": agree,
                        });
                        println!("{value}");
                    } else {
                        println!("direct:  {}", print_fo(&direct, cli.format));
                        println!("bimodal: {}", print_fo(&bimodal, cli.format));
                        let verdict = if agree {
                            "extensionally equal on all frames with at most two worlds"
                        } else {
                            "DIFFERENT on some frame with at most two worlds"
                        };
                        println!("agreement: {verdict}");
                    }
                }
            }
        }
        Command::Check {
            suite,
            formula,
            count,
            depth,
            vars,
            max_worlds,
            samples,
            route,
        } => {
            if max_worlds < 1 {
                return Err(CliError::input("flag", "--max-worlds must be at least 1".to_string()));
            }
            let single = formula.as_deref().map(parse_inl).transpose()?;
            let reports = match suite {
                Suite::St | Suite::Tau => {
                    let corpus = match &single {
                        Some(phi) => vec![phi.clone()],
                        None => random_corpus(count, depth, &vars, cli.seed),
                    };
                    vec![match suite {
                        Suite::St => check_st_correctness(&corpus, max_worlds, samples, cli.seed),
                        _ => check_tau_correctness(&corpus, max_worlds, samples, cli.seed),
                    }]
                }
                Suite::Mono => vec![check_lemma_monotonicity(max_worlds, samples, cli.seed)],
                Suite::Correspond => {
                    let targets = match &single {
                        Some(phi) => vec![phi.clone()],
                        None => corpus::sahlqvist_corpus(),
                    };
                    targets
                        .iter()
                        .map(|phi| check_correspondence(phi, route, max_worlds, samples, cli.seed))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            emit_reports(&reports, cli.format);
            let failed: Vec<String> =
                reports.iter().filter(|r| !r.passed()).map(|r| r.property.clone()).collect();
            if !failed.is_empty() {
                return Err(CliError::CheckFailed { failed });
            }
        }
        Command::Eval { frame, world, input } => {
            let phi = parse_formula(&input)?;
            let text = fs::read_to_string(&frame).map_err(|e| {
                CliError::input("io", format!("cannot read {}: {e}", frame.display()))
            })?;
            let file: FrameFile = serde_json::from_str(&text)
                .map_err(|e| CliError::input("frame", format!("invalid model file: {e}")))?;
            let (model, worlds) = file
                .into_model()
                .map_err(|e| CliError::input("frame", e.to_string()))?;
            let w = worlds
                .iter()
                .position(|name| *name == world)
                .ok_or_else(|| CliError::input("world", format!("unknown world '{world}'")))?;
            let value = model
                .satisfies(w, &phi)
                .map_err(|e| CliError::Internal { message: e.to_string() })?;
            // `true` and `false` are valid output in every format.
            println!("{value}");
        }
    }
    Ok(())
}

fn parse_formula(input: &FormulaInput) -> Result<Formula, CliError> {
    let source = match (&input.formula, &input.file) {
        (Some(text), None) => text.clone(),
        (None, Some(path)) => fs::read_to_string(path).map_err(|e| {
            CliError::input("io", format!("cannot read {}: {e}", path.display()))
        })?,
        _ => unreachable!("the input group admits exactly one source"),
    };
    Ok(parse_inl(source.trim_end())?)
}

/// `count` seeded random formulas plus the fixed grammar-edge corpus.
fn random_corpus(count: usize, depth: usize, vars: &str, seed: u64) -> Vec<Formula> {
    let vars: Vec<String> =
        vars.split(',').map(str::trim).filter(|v| !v.is_empty()).map(String::from).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus: Vec<Formula> =
        (0..count).map(|_| random_formula_from(depth, &vars, &mut rng)).collect();
    corpus.extend(corpus::edge_corpus());
    corpus
}

fn fo_value(alpha: &FoFormula) -> Result<Value, CliError> {
    serde_json::from_str(&print_fo(alpha, Format::Json))
        .map_err(|e| CliError::Internal { message: format!("unprintable correspondent: {e}") })
}

/// Prints check reports with elapsed times zeroed, as one JSON object
/// (single report), a JSON array (several), or one summary line each.
fn emit_reports(reports: &[CheckReport], format: Format) {
    let scrubbed: Vec<CheckReport> = reports
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.elapsed_ms = 0;
            r
        })
        .collect();
    if format == Format::Json {
        let value = if scrubbed.len() == 1 {
            serde_json::to_value(&scrubbed[0])
        } else {
            serde_json::to_value(&scrubbed)
        };
        match value {
            Ok(v) => println!("{v}"),
            Err(e) => println!("{}", json!({"error": {"kind": "internal", "message": e.to_string()}})),
        }
        return;
    }
    for report in &scrubbed {
        if report.passed() {
            println!("pass {} (instances={}, seed={})", report.property, report.instances, report.seed);
        } else {
            println!(
                "FAIL {} (instances={}, counterexamples={}, route_disagreements={}, seed={})",
                report.property,
                report.instances,
                report.counterexamples.len(),
                report.route_disagreements.len(),
                report.seed
            );
            for cex in report.counterexamples.iter().chain(&report.route_disagreements) {
                match serde_json::to_string(cex) {
                    Ok(line) => println!("  {line}"),
                    Err(e) => println!("  <unprintable counterexample: {e}>"),
                }
            }
        }
    }
}
