//! Command-line front end. Every command writes one JSON document.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pierced_core::geometry::{
    build_ball_realization_with, build_hyperplane_realization, nondegeneracy_margin, verify_ball_realization,
    verify_hyperplane_realization, BallOptions, FeasibilityMethod, GeometryError,
};
use pierced_core::toric::{
    check_nesting, homogenize_with_dummy, variable_name, GbLimits, OrderSpec, ToricError, ToricIdeal,
};
use pierced_core::{
    pierce, recover_piercing_sequence, Codeword, Detection, NeuralCode, PiercingError, PiercingStep,
};
use serde_json::{json, Value};

use crate::json::*;
use crate::scan::{classify_all_codes, conjecture_scan, ScanConfig, ScanOrder};
use crate::{analysis, counterexample, svg};

#[derive(Parser, Debug)]
#[command(name = "pierced", version, about = "Inductively pierced neural codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CodeInput {
    /// JSON file with a code (`-` for stdin).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Inline code, e.g. '[[],[1],[1,2]]' or '{"neurons":2,"codewords":[...]}'.
    #[arg(long)]
    pub code: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Caps {
    /// Maximum number of S-pairs per Gröbner basis.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_pairs: u64,
    /// Maximum S-polynomial degree.
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,
}

impl Caps {
    fn limits(&self) -> GbLimits {
        GbLimits {
            max_pairs: self.max_pairs as usize,
            max_degree: self.max_degree,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderKind {
    /// Lex induced by the codeword order.
    Lex,
    /// Weighted graded reverse lex; see `--weights`.
    Wgrevlex,
    /// Lex ranking variables by input position, later = larger.
    List,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Hyperplane,
    Ball,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Simplex,
    Fm,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical form, complexes, shelling and piercing detection.
    Analyze(CodeInput),
    /// Apply one piercing step.
    Pierce {
        #[command(flatten)]
        input: CodeInput,
        #[arg(long, value_delimiter = ',', default_value = "")]
        lambda: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        sigma: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        tau: Vec<String>,
    },
    /// Recover a piercing sequence.
    Detect {
        #[command(flatten)]
        input: CodeInput,
        /// Largest piercing degree allowed (default: n).
        #[arg(long)]
        max_k: Option<usize>,
        /// Allow neurons to be added in any order.
        #[arg(long)]
        relabel: bool,
    },
    /// Reduced Gröbner basis of the toric ideal.
    ToricGb {
        #[command(flatten)]
        input: CodeInput,
        #[arg(long, value_enum, default_value_t = OrderKind::Lex)]
        order: OrderKind,
        /// Weights over the nonempty codewords of 1..n by size then lex.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        /// Add the dummy neuron 0 to every codeword first.
        #[arg(long)]
        homogenize: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Toric ideal nesting, for a pair of codes or along a piercing sequence.
    Nesting {
        #[command(flatten)]
        input: CodeInput,
        /// The larger code; without it the input is checked along its sequence.
        #[arg(long)]
        sup: Option<String>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Build and verify a geometric realization.
    Realize {
        #[command(flatten)]
        input: CodeInput,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Sampling points for ball verification.
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = pierced_core::geometry::ball::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Method::Simplex)]
        method: Method,
        /// Also write an SVG picture (planar realizations only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Gröbner degrees over all enumerated pierced codes.
    ScanConjecture {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = OrderKind::Lex)]
        order: OrderKind,
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Include wall-clock times (makes reports differ between runs).
        #[arg(long)]
        timings: bool,
        /// Scan every code on max-n neurons containing ∅ instead, and
        /// tabulate quadratic bases against piercing (exploratory).
        #[arg(long)]
        all_codes: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// The cubic counterexample under the shelling-order lex order.
    Counterexample {
        #[command(flatten)]
        caps: Caps,
    },
}

/// Exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Malformed = 1,
    Violation = 2,
    ResourceLimit = 3,
}

pub struct Outcome {
    pub report: Value,
    pub status: Status,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            status: Status::Ok,
        }
    }

    fn check(report: Value, holds: bool) -> Self {
        Outcome {
            report,
            status: if holds { Status::Ok } else { Status::Violation },
        }
    }

    fn error(status: Status, msg: impl ToString) -> Self {
        let kind = match status {
            Status::ResourceLimit => "resource_limit",
            _ => "error",
        };
        Outcome {
            report: json!({"status": kind, "error": msg.to_string()}),
            status,
        }
    }
}

fn read_code(input: &CodeInput) -> Result<ListedCode, Outcome> {
    let text = match (&input.input, &input.code) {
        (_, Some(inline)) => inline.clone(),
        (Some(p), None) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Outcome::error(Status::Malformed, e))?;
            s
        }
        (Some(p), None) => fs::read_to_string(p)
            .map_err(|e| Outcome::error(Status::Malformed, format!("{}: {e}", p.display())))?,
        (None, None) => {
            return Err(Outcome::error(
                Status::Malformed,
                "no code given; use --code or --input",
            ))
        }
    };
    parse_code(&text).map_err(|e| Outcome::error(Status::Malformed, e))
}

fn neuron_list(items: &[String]) -> Result<Codeword, Outcome> {
    let ns = items
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|e| Outcome::error(Status::Malformed, format!("{s}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if ns.contains(&0) {
        return Err(Outcome::error(Status::Malformed, "neurons are numbered from 1"));
    }
    Codeword::try_from_neurons(ns).map_err(|e| Outcome::error(Status::Malformed, e))
}

fn toric_failure(e: ToricError) -> Outcome {
    match e {
        ToricError::ResourceLimit { .. } => Outcome::error(Status::ResourceLimit, e),
        _ => Outcome::error(Status::Malformed, e),
    }
}

fn order_spec(
    kind: OrderKind,
    weights: &Option<Vec<u64>>,
    listed: &[Codeword],
    homogenized: bool,
) -> Result<OrderSpec, Outcome> {
    Ok(match kind {
        OrderKind::Lex => OrderSpec::CodewordLex,
        OrderKind::Wgrevlex => match weights {
            Some(w) => OrderSpec::WeightedGrevlex(w.clone()),
            None => return Err(Outcome::error(Status::Malformed, "wgrevlex needs --weights")),
        },
        OrderKind::List => OrderSpec::ListLex(
            listed
                .iter()
                .map(|c| if homogenized { c.with(0) } else { *c })
                .collect(),
        ),
    })
}

fn sequence_of(code: &NeuralCode) -> Result<pierced_core::PiercingSequence, Outcome> {
    match recover_piercing_sequence(code, code.n(), false) {
        Detection::Pierced { sequence, .. } => Ok(sequence),
        Detection::NotPierced => Err(Outcome {
            report: json!({"status": "not_pierced", "code": code_json(code)}),
            status: Status::Violation,
        }),
    }
}

fn geometry_failure(e: GeometryError) -> Outcome {
    match e {
        GeometryError::MissingEmptyWord | GeometryError::Piercing(_) => Outcome::error(Status::Malformed, e),
        // the construction failed on a valid sequence: logged, not masked
        _ => Outcome::error(Status::Violation, e),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(&cli.command) {
        Ok(o) | Err(o) => o,
    }
}

fn execute(command: &Command) -> Result<Outcome, Outcome> {
    match command {
        Command::Analyze(input) => {
            let code = read_code(input)?.code;
            let a = analysis::analyze(&code).map_err(|e| Outcome::error(Status::Malformed, e))?;
            Ok(Outcome::check(a.report, a.shelling_ok))
        }
        Command::Pierce {
            input,
            lambda,
            sigma,
            tau,
        } => {
            let code = read_code(input)?.code;
            let step = PiercingStep::new(neuron_list(lambda)?, neuron_list(sigma)?, neuron_list(tau)?);
            match pierce(&code, &step) {
                Ok(out) => Ok(Outcome::ok(
                    json!({"status": "ok", "step": step_json(&step), "code": code_json(&out)}),
                )),
                Err(PiercingError::NotPierceable { missing, .. }) => Ok(Outcome::check(
                    json!({"status": "not_pierceable", "step": step_json(&step), "missing": word_json(missing)}),
                    false,
                )),
                Err(e) => Err(Outcome::error(Status::Malformed, e)),
            }
        }
        Command::Detect {
            input,
            max_k,
            relabel,
        } => {
            let code = read_code(input)?.code;
            let report = match recover_piercing_sequence(&code, max_k.unwrap_or(code.n()), *relabel) {
                Detection::Pierced { sequence, relabeling } => json!({
                    "status": "pierced",
                    "code": code_json(&code),
                    "max_degree": sequence.max_degree(),
                    "sequence": sequence_json(&sequence),
                    "relabeling": relabeling,
                }),
                Detection::NotPierced => json!({"status": "not_pierced", "code": code_json(&code)}),
            };
            Ok(Outcome::ok(report))
        }
        Command::ToricGb {
            input,
            order,
            weights,
            homogenize,
            caps,
        } => {
            let listed = read_code(input)?;
            let code = if *homogenize {
                homogenize_with_dummy(&listed.code)
            } else {
                listed.code.clone()
            };
            let spec = order_spec(*order, weights, &listed.listed, *homogenize)?;
            let ideal = ToricIdeal::new(&code, caps.limits()).map_err(toric_failure)?;
            let mo = ideal.order(&spec).map_err(toric_failure)?;
            let gb = ideal
                .reduced_groebner_basis(&mo, caps.limits())
                .map_err(toric_failure)?;
            Ok(Outcome::ok(json!({
                "status": "ok",
                "code": code_json(&code),
                "order": format!("{order:?}").to_lowercase(),
                "variables": ideal.vars.iter().map(|c| variable_name(*c)).collect::<Vec<_>>(),
                "basis": gb.elements.iter().map(|b| ideal.format_binomial(b)).collect::<Vec<_>>(),
                "max_degree": gb.max_degree(),
                "certified": gb.certify().is_ok(),
            })))
        }
        Command::Nesting { input, sup, caps } => {
            let code = read_code(input)?.code;
            let pairs: Vec<(NeuralCode, NeuralCode)> = match sup {
                Some(text) => {
                    let sup = parse_code(text)
                        .map_err(|e| Outcome::error(Status::Malformed, e))?
                        .code;
                    vec![(code, sup)]
                }
                None => {
                    let chain = sequence_of(&code)?
                        .replay_chain()
                        .map_err(|e| Outcome::error(Status::Malformed, e))?;
                    chain.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
                }
            };
            let mut rows = Vec::new();
            let mut all = true;
            for (a, b) in &pairs {
                let nested = match check_nesting(a, b, caps.limits()) {
                    Ok(x) => x,
                    Err(ToricError::NotASubcode) => {
                        return Err(Outcome::error(
                            Status::Malformed,
                            format!("{a} is not contained in {b}"),
                        ))
                    }
                    Err(e) => return Err(toric_failure(e)),
                };
                all &= nested;
                rows.push(json!({"sub": code_json(a), "sup": code_json(b), "nested": nested}));
            }
            Ok(Outcome::check(
                json!({"status": "ok", "pairs": rows, "all_nested": all}),
                all,
            ))
        }
        Command::Realize {
            input,
            mode,
            samples,
            seed,
            tolerance,
            method,
            svg: svg_path,
        } => {
            let code = read_code(input)?.code;
            let seq = sequence_of(&code)?;
            let (report, passed, picture) = match mode {
                Mode::Hyperplane => {
                    let r = build_hyperplane_realization(&seq).map_err(geometry_failure)?;
                    let m = match method {
                        Method::Simplex => FeasibilityMethod::Simplex,
                        Method::Fm => FeasibilityMethod::FourierMotzkin,
                    };
                    let verdict = verify_hyperplane_realization(&r, &code, m);
                    let margin = nondegeneracy_margin(&r);
                    let report = json!({
                        "mode": "hyperplane",
                        "code": code_json(&code),
                        "sequence": sequence_json(&seq),
                        "realization": hyperplane_json(&r),
                        "verification": {
                            "kind": "exact",
                            "passed": verdict.is_ok(),
                            "discrepancy": verdict.as_ref().err().map(|d| d.to_string()),
                            "margin": margin.to_string(),
                        },
                    });
                    (report, verdict.is_ok(), svg::hyperplane_svg(&r))
                }
                Mode::Ball => {
                    let opts = BallOptions {
                        seed: *seed,
                        tolerance: *tolerance,
                        ..BallOptions::default()
                    };
                    let r = build_ball_realization_with(&seq, opts).map_err(geometry_failure)?;
                    let v = verify_ball_realization(&r, &code, *samples, 0);
                    let report = json!({
                        "mode": "ball",
                        "code": code_json(&code),
                        "sequence": sequence_json(&seq),
                        "realization": ball_json(&r),
                        "verification": ball_verdict_json(&v),
                    });
                    (report, v.passed(), svg::ball_svg(&r))
                }
            };
            if let Some(path) = svg_path {
                let Some(text) = picture else {
                    return Err(Outcome::error(
                        Status::Malformed,
                        "SVG export needs a planar realization",
                    ));
                };
                fs::write(path, text).map_err(|e| Outcome::error(Status::Malformed, e))?;
            }
            Ok(Outcome::check(report, passed))
        }
        Command::ScanConjecture {
            max_n,
            max_k,
            order,
            weights,
            jobs,
            timings,
            all_codes,
            caps,
        } => {
            let scan_order = match (order, weights) {
                (OrderKind::Lex, _) => ScanOrder::CodewordLex,
                (OrderKind::Wgrevlex, Some(w)) => {
                    let n = (1..=6).find(|n| (1usize << n) - 1 == w.len()).ok_or_else(|| {
                        Outcome::error(Status::Malformed, "--weights needs 2^n - 1 entries")
                    })?;
                    ScanOrder::WeightedGrevlex {
                        n,
                        weights: w.clone(),
                    }
                }
                (OrderKind::Wgrevlex, None) => ScanOrder::WeightedGrevlex {
                    n: *max_n,
                    weights: vec![1; (1 << max_n) - 1],
                },
                (OrderKind::List, _) => {
                    return Err(Outcome::error(Status::Malformed, "scans use lex or wgrevlex"))
                }
            };
            if *jobs == Some(0) {
                return Err(Outcome::error(Status::Malformed, "--jobs must be positive"));
            }
            let cfg = ScanConfig {
                max_n: *max_n,
                max_k: *max_k,
                order: scan_order,
                limits: caps.limits(),
                jobs: *jobs,
                timings: *timings,
            };
            if *all_codes {
                if *max_n > 4 {
                    return Err(Outcome::error(
                        Status::Malformed,
                        "--all-codes supports at most 4 neurons",
                    ));
                }
                let c = classify_all_codes(*max_n, &cfg);
                let report = serde_json::to_value(&c).map_err(|e| Outcome::error(Status::Malformed, e))?;
                return Ok(Outcome::ok(report));
            }
            let r = conjecture_scan(&cfg).map_err(|e| Outcome::error(Status::ResourceLimit, e))?;
            let status = if r.violations > 0 {
                Status::Violation
            } else if r.skipped > 0 {
                Status::ResourceLimit
            } else {
                Status::Ok
            };
            let report = serde_json::to_value(&r).map_err(|e| Outcome::error(Status::Malformed, e))?;
            Ok(Outcome { report, status })
        }
        Command::Counterexample { caps } => {
            let c = counterexample::run(caps.limits()).map_err(toric_failure)?;
            let report = serde_json::to_value(&c.report).map_err(|e| Outcome::error(Status::Malformed, e))?;
            Ok(Outcome::ok(report))
        }
    }
}

/// Parses arguments, runs, writes the report and returns the exit code.
pub fn main() -> std::process::ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() {
                Status::Malformed as u8
            } else {
                0
            };
            return std::process::ExitCode::from(code);
        }
    };
    let outcome = run(&cli);
    let rendered = if cli.pretty {
        serde_json::to_string_pretty(&outcome.report)
    } else {
        serde_json::to_string(&outcome.report)
    };
    let mut text = rendered.unwrap_or_else(|_| "{}".into());
    text.push('\n');
    if let Some(msg) = outcome.report.get("error").and_then(Value::as_str) {
        eprintln!("error: {msg}");
    }
    match &cli.out {
        Some(p) => {
            if let Err(e) = fs::write(p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return std::process::ExitCode::from(Status::Malformed as u8);
            }
        }
        None => print!("{text}"),
    }
    std::process::ExitCode::from(outcome.status as u8)
}
