//! `fredblock`: exact classification, completion and perturbation-set
//! scanning for upper-triangular block operator matrices.
//!
//! All inputs and outputs are exact: rationals as `p/q` or decimal strings,
//! membership tables as 0/1 columns. Identical inputs produce byte-identical
//! outputs. Exit codes: 0 success, 1 parse error, 2 precondition failure,
//! 3 resource cap exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fredblock_core::blockmodel::DEFAULT_SIZE_CAP;
use fredblock_core::completion::{complete, CompletionError, CompletionTarget};
use fredblock_core::deltasets::{
    delta_memberships, n2_exact_membership, region_scan, DeltaTarget, GridSpec, N2Target,
    DEFAULT_GRID_CAP,
};
use fredblock_core::jsonio::{
    fredholm_data_json, model_from_doc, model_to_doc, operator_from_json, ModelDoc, OperatorDoc,
    OperatorJson, TupleDoc, SCHEMA,
};
use fredblock_core::oracle::exact_rank;
use fredblock_core::{
    assemble_truncation, check, check_n2_equiv, classify, fredholm_data, profile_of,
    spectra_membership, verify_prediction, DiagonalTuple, N2Theorem, OperatorExpr,
    RationalComplex, TheoremId,
};

#[derive(Parser)]
#[command(name = "fredblock", version, about = "Exact Fredholm/Weyl engine for block operator matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nullity, deficiency and range-closedness of one operator at a point.
    FredData {
        /// Operator JSON file.
        #[arg(long)]
        op: PathBuf,
        /// Point as `re,im` with rational components, e.g. `1/2,0`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Class memberships and the five spectra of one operator at a point.
    Classify {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate one completion theorem's conditions on a diagonal tuple.
    TheoremCheck {
        /// Tuple JSON file (object with a `diag` array).
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// One of: left-weyl-sep, right-weyl-sep, left-fred-sep,
        /// right-fred-sep, fred-sep, left-weyl-chain, right-weyl-chain,
        /// left-fred-chain, right-fred-chain, fred-necessary.
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Construct a completion witness and write it as a model file.
    Complete {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// One of: left-weyl, left-fred, right-weyl, right-fred, fredholm,
        /// left-weyl-chain, left-fred-chain, right-weyl-chain,
        /// right-fred-chain.
        #[arg(long)]
        target: String,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Source window for maps without an affine closed form.
        #[arg(long, default_value_t = 512)]
        pair_bound: u64,
    },
    /// Evaluate the perturbation-set families over a grid.
    Scan {
        #[arg(long)]
        tuple: PathBuf,
        /// `a..b:step` (square) or `a..b:step,c..d:step`.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// One of: aw-sep, sw-sep, sfplus-sep, sfminus-sep, e-sep, aw-gen,
        /// sw-gen, sfplus-gen, sfminus-gen, e-gen.
        #[arg(long)]
        target: String,
        /// Also emit the bounds of the formulas without their
        /// range-closedness families.
        #[arg(long)]
        legacy: bool,
        /// csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
        cap: u64,
    },
    /// Assemble a model file over a window schedule and report exact ranks.
    Verify {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated strictly increasing windows.
        #[arg(long, default_value = "16,32,64,128")]
        schedule: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: u64,
    },
    /// Check lower-within-upper for every target over a grid.
    SandwichCheck {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
        cap: u64,
    },
    /// Report grid points where corrected and uncorrected membership differ.
    LegacyDiff {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// For two-entry tuples one of: aw, sw, sfplus, sfminus, e
        /// (exact corollaries); longer tuples compare the lower bounds of
        /// the matching separable target.
        #[arg(long, default_value = "aw")]
        target: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
        cap: u64,
    },
}

enum CliError {
    Parse(String),
    Precondition(String),
    Cap(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) | CliError::Cap(m) => m,
        }
    }
}

fn parse_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Parse(e.to_string())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_operator(path: &Path) -> Result<OperatorExpr, CliError> {
    let text = read_file(path)?;
    let json: OperatorJson = match serde_json::from_str::<OperatorDoc>(&text) {
        Ok(doc) => doc.operator,
        Err(_) => serde_json::from_str(&text).map_err(parse_err)?,
    };
    operator_from_json(&json).map_err(parse_err)
}

fn load_tuple(path: &Path) -> Result<DiagonalTuple, CliError> {
    let text = read_file(path)?;
    let doc: TupleDoc = serde_json::from_str(&text).map_err(parse_err)?;
    doc.to_tuple().map_err(parse_err)
}

fn parse_lambda(s: &str) -> Result<RationalComplex, CliError> {
    RationalComplex::parse_pair(s).map_err(parse_err)
}

fn parse_schedule(s: &str) -> Result<Vec<u64>, CliError> {
    let schedule: Vec<u64> = s
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| CliError::Parse(format!("bad window {p:?}"))))
        .collect::<Result<_, _>>()?;
    if schedule.len() < 3 || !schedule.windows(2).all(|w| w[0] < w[1]) || schedule[0] == 0 {
        return Err(CliError::Parse(
            "schedule must be at least three strictly increasing positive windows".into(),
        ));
    }
    Ok(schedule)
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn emit_json(output: Option<&Path>, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    emit(output, text.trim_end_matches('\n'))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::FredData { op, lambda, output } => {
            let expr = load_operator(&op)?;
            let lambda = parse_lambda(&lambda)?;
            let data = fredholm_data(&expr, &lambda);
            emit_json(output.as_deref(), &fredholm_data_json(&data))
        }
        Command::Classify { op, lambda, output } => {
            let expr = load_operator(&op)?;
            let lambda = parse_lambda(&lambda)?;
            let data = fredholm_data(&expr, &lambda);
            let class = classify(&data).expect("catalog data is consistent");
            let spectra = spectra_membership(&expr, &lambda);
            let value = serde_json::json!({
                "schema": SCHEMA,
                "convention": "memberships are decided from T - lambda",
                "data": fredholm_data_json(&data),
                "class": {
                    "phi_plus": class.in_phi_plus,
                    "phi_minus": class.in_phi_minus,
                    "phi": class.in_phi,
                    "left_weyl": class.in_left_weyl,
                    "right_weyl": class.in_right_weyl,
                    "index": class.index.to_string(),
                },
                "spectra": {
                    "sf_plus": spectra.sf_plus,
                    "sf_minus": spectra.sf_minus,
                    "essential": spectra.essential,
                    "aw": spectra.aw,
                    "sw": spectra.sw,
                },
            });
            emit_json(output.as_deref(), &value)
        }
        Command::TheoremCheck { tuple, lambda, theorem, output } => {
            let diag = load_tuple(&tuple)?;
            let lambda = parse_lambda(&lambda)?;
            let theorem = TheoremId::parse(&theorem)
                .ok_or_else(|| CliError::Parse(format!("unknown theorem {theorem:?}")))?;
            let profile = profile_of(&diag, &lambda);
            let verdict = check(&profile, theorem);
            let existence = if verdict.condition_i {
                "yes (constructive)"
            } else if !verdict.condition_iii {
                "no (necessary condition fails)"
            } else {
                "undecided by theorem"
            };
            let mut value = serde_json::json!({
                "schema": SCHEMA,
                "theorem": theorem.name(),
                "condition_i": verdict.condition_i,
                "condition_iii": verdict.condition_iii,
                "witness_clause": verdict.witness_clause,
                "existence": existence,
            });
            // For two-entry tuples the separable characterizations are
            // equivalences; report the exact answer alongside.
            if profile.n() == 2 {
                let n2 = match theorem {
                    TheoremId::LeftWeylSep => Some(N2Theorem::LeftWeyl2),
                    TheoremId::RightWeylSep => Some(N2Theorem::RightWeyl2),
                    TheoremId::LeftFredSep => Some(N2Theorem::LeftFred2),
                    TheoremId::RightFredSep => Some(N2Theorem::RightFred2),
                    TheoremId::FredSep => Some(N2Theorem::Fred2),
                    _ => None,
                };
                if let Some(n2) = n2 {
                    value["n2_exact_existence"] =
                        serde_json::Value::Bool(check_n2_equiv(&profile, n2));
                }
            }
            emit_json(output.as_deref(), &value)
        }
        Command::Complete { tuple, lambda, target, output, pair_bound } => {
            let diag = load_tuple(&tuple)?;
            let lambda = parse_lambda(&lambda)?;
            let target = CompletionTarget::parse(&target)
                .ok_or_else(|| CliError::Parse(format!("unknown target {target:?}")))?;
            let plan = complete(&diag, &lambda, target).map_err(|e| match e {
                CompletionError::PreconditionFailed { .. } => CliError::Precondition(e.to_string()),
                CompletionError::Unsupported { .. } => CliError::Precondition(e.to_string()),
            })?;
            let model = plan.clone().into_model(diag, lambda);
            let doc = model_to_doc(&model, Some(plan.strategy), Some(&plan.predicted), pair_bound);
            let value = serde_json::to_value(&doc).expect("serializable");
            emit_json(output.as_deref(), &value)
        }
        Command::Scan { tuple, grid, target, legacy, format, output, cap } => {
            let diag = load_tuple(&tuple)?;
            let grid = GridSpec::parse(&grid).map_err(parse_err)?;
            let target = DeltaTarget::parse(&target)
                .ok_or_else(|| CliError::Parse(format!("unknown target {target:?}")))?;
            if legacy && !target.is_separable() {
                return Err(CliError::Parse(
                    "legacy bounds exist only for the separable targets".into(),
                ));
            }
            let scan = region_scan(&diag, &grid, target, cap).map_err(cap_or_parse)?;
            match format.as_str() {
                "csv" => emit(output.as_deref(), scan.to_csv(legacy).trim_end_matches('\n')),
                "json" => {
                    let rows: Vec<serde_json::Value> = scan
                        .rows
                        .iter()
                        .map(|(lambda, m)| {
                            let mut row = serde_json::json!({
                                "re": fredblock_core::rational::format_rational(&lambda.re),
                                "im": fredblock_core::rational::format_rational(&lambda.im),
                                "lower": m.lower,
                                "upper": m.upper,
                            });
                            for (name, v) in &m.families {
                                row[name] = serde_json::Value::Bool(*v);
                            }
                            if legacy {
                                row["legacy_lower"] = serde_json::json!(m.legacy_lower);
                                row["legacy_upper"] = serde_json::json!(m.legacy_upper);
                            }
                            row
                        })
                        .collect();
                    let value = serde_json::json!({
                        "schema": SCHEMA,
                        "target": target.name(),
                        "families": scan.family_names,
                        "rows": rows,
                    });
                    emit_json(output.as_deref(), &value)
                }
                other => Err(CliError::Parse(format!("unknown format {other:?}"))),
            }
        }
        Command::Verify { model, schedule, output, cap } => {
            let text = read_file(&model)?;
            let doc: ModelDoc = serde_json::from_str(&text).map_err(parse_err)?;
            let parsed = model_from_doc(&doc).map_err(parse_err)?;
            let schedule = parse_schedule(&schedule)?;
            if let Some(bound) = parsed.source_bound {
                let max = *schedule.last().unwrap();
                if max > bound {
                    return Err(CliError::Cap(format!(
                        "model file only carries map pairs up to source {bound}; window {max} \
                         would silently drop pairs"
                    )));
                }
            }
            let mut reports = Vec::new();
            for &n in &schedule {
                let t = assemble_truncation(&parsed.model, n, cap)
                    .map_err(|e| CliError::Cap(e.to_string()))?;
                let r = exact_rank(&t);
                reports.push(serde_json::json!({
                    "n": r.n,
                    "rows": r.rows,
                    "cols": r.cols,
                    "rank": r.rank,
                    "nullity": r.nullity,
                    "adjoint_nullity": r.adjoint_nullity,
                }));
            }
            let mut value = serde_json::json!({
                "schema": SCHEMA,
                "reports": reports,
            });
            if let Some(predicted) = &parsed.predicted {
                let report = verify_prediction(&parsed.model, predicted, &schedule, cap)
                    .map_err(|e| CliError::Cap(e.to_string()))?;
                value["alpha_trace"] = trace_json(&report.alpha_trace.trace);
                value["alpha_flag"] = report.alpha_trace.flag.to_string().into();
                value["adjoint_trace"] = trace_json(&report.adjoint_trace.trace);
                value["adjoint_flag"] = report.adjoint_trace.flag.to_string().into();
                value["alpha_certified"] = report.alpha_certified.into();
                value["beta_certified"] = report.beta_certified.into();
                value["certified"] = report.certified().into();
            }
            emit_json(output.as_deref(), &value)
        }
        Command::SandwichCheck { tuple, grid, output, cap } => {
            let diag = load_tuple(&tuple)?;
            let grid = GridSpec::parse(&grid).map_err(parse_err)?;
            let mut violations = Vec::new();
            let mut points = 0u64;
            for target in DeltaTarget::ALL {
                let scan = region_scan(&diag, &grid, target, cap).map_err(cap_or_parse)?;
                for (lambda, m) in &scan.rows {
                    points += 1;
                    if let Some(upper) = m.upper {
                        if m.lower && !upper {
                            violations.push(serde_json::json!({
                                "target": target.name(),
                                "re": fredblock_core::rational::format_rational(&lambda.re),
                                "im": fredblock_core::rational::format_rational(&lambda.im),
                            }));
                        }
                    }
                }
            }
            let value = serde_json::json!({
                "schema": SCHEMA,
                "evaluations": points,
                "violations": violations,
            });
            emit_json(output.as_deref(), &value)
        }
        Command::LegacyDiff { tuple, grid, target, output, cap } => {
            let diag = load_tuple(&tuple)?;
            let grid = GridSpec::parse(&grid).map_err(parse_err)?;
            let points = grid.points(cap).map_err(cap_or_parse)?;
            let n2_target = match target.as_str() {
                "aw" => N2Target::Aw2,
                "sw" => N2Target::Sw2,
                "sfplus" => N2Target::SfPlus2,
                "sfminus" => N2Target::SfMinus2,
                "e" => N2Target::E2,
                other => return Err(CliError::Parse(format!("unknown target {other:?}"))),
            };
            let mut rows = Vec::new();
            for lambda in &points {
                let (corrected, legacy) = if diag.n() == 2 {
                    (
                        n2_exact_membership(&diag, lambda, n2_target, false),
                        n2_exact_membership(&diag, lambda, n2_target, true),
                    )
                } else {
                    let m = delta_memberships(&diag, lambda, n2_target.separable_target());
                    (m.lower, m.legacy_lower.expect("separable targets carry legacy bounds"))
                };
                if corrected != legacy {
                    rows.push(serde_json::json!({
                        "re": fredblock_core::rational::format_rational(&lambda.re),
                        "im": fredblock_core::rational::format_rational(&lambda.im),
                        "corrected": corrected,
                        "legacy": legacy,
                        "flag": if corrected { "corrected-only" } else { "legacy-only" },
                    }));
                }
            }
            let value = serde_json::json!({
                "schema": SCHEMA,
                "target": target,
                "points": points.len(),
                "differences": rows,
            });
            emit_json(output.as_deref(), &value)
        }
    }
}

fn cap_or_parse(e: fredblock_core::deltasets::GridError) -> CliError {
    match e {
        fredblock_core::deltasets::GridError::TooManyPoints { .. } => CliError::Cap(e.to_string()),
        other => CliError::Parse(other.to_string()),
    }
}

fn trace_json(trace: &[(u64, u64)]) -> serde_json::Value {
    serde_json::Value::Array(
        trace.iter().map(|&(n, v)| serde_json::json!([n, v])).collect(),
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
