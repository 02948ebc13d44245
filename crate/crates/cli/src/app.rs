use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;
use virasoro_core::algebra::Virasoro;
use virasoro_core::checks::{self, BatteryConfig, CheckReport, ProbeConfig, ProbeError, CHECK_IDS};
use virasoro_core::coeff::{parse_rational, Field, ParamAssignment, Poly, Rational};
use virasoro_core::order::MultiIndex;
use virasoro_core::rep::{
    kernel, solve_affine, AffineSolution, Bounds, CharacterParams, InducedModule, ModElt, ReachBudget, RepError, Space,
};
use virasoro_core::subalg::{classify_codim_one, full_ideal, GroebnerLimits, SubalgError};

use crate::eval::{numeric, Context, EvalError, Value};
use crate::render::{lie_json, module_json, render, Format};

#[derive(Debug, Parser)]
#[command(name = "vir", version, about = "Exact computations with the Virasoro algebra and its induced modules")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Lie bracket of two elements of the Virasoro algebra.
    Bracket { x: String, y: String },
    /// Normal-ordered form of an element of the enveloping algebra.
    NormalOrder { x: String },
    /// Action of an enveloping-algebra element on a module element.
    Act { u: String, x: String },
    /// Kernel of an operator on a truncated module (numeric parameters).
    Kernel { u: String },
    /// Solutions of `u y = x` inside the truncation bounds.
    Solve { u: String, x: String },
    /// Runs one battery check, or `all`.
    Check {
        /// Check name, or `all`.
        id: String,
    },
    /// Randomised simplicity probe (numeric parameters).
    Probe,
    /// Groebner classification of the codimension-one subalgebras.
    ClassifySubalgebra,
    /// Compares two multi-indices under the total order.
    CompareIndex { i: String, j: String },
}

#[derive(Debug, Args)]
pub struct Opts {
    /// Value of z, a nonzero rational such as -3/2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Value of m2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m2: Option<String>,
    /// Value of m3.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m3: Option<String>,
    /// Value of m4.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m4: Option<String>,
    /// Value of the central charge theta.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Value of the auxiliary parameter t.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// V, W or Ind.
    #[arg(long, global = true, default_value = "Ind")]
    pub module: Space,
    /// Largest subalgebra index used by the classification.
    #[arg(long, global = true, default_value_t = 9)]
    pub kmax: i64,
    /// Truncation: largest weight of the negative part.
    #[arg(long, global = true)]
    pub max_weight: Option<u64>,
    /// Truncation: largest power of l(0).
    #[arg(long, global = true)]
    pub max_j: Option<u32>,
    /// Truncation: largest power of l(1).
    #[arg(long, global = true)]
    pub max_k: Option<u32>,
    /// Random trials per probe.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    /// Seed for the probe's random number generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Probe even when the simplicity conditions fail.
    #[arg(long, global = true)]
    pub force: bool,
    /// Also compute the basis of the ideal in all eight coefficients.
    #[arg(long, global = true)]
    pub full_ideal: bool,
    /// Report zero elapsed times so output is byte-stable.
    #[arg(long, global = true)]
    pub no_timings: bool,
}

/// Errors that make the invocation itself invalid (exit code 2).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{error}\n{excerpt}")]
    Expression { error: EvalError, excerpt: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Subalg(#[from] SubalgError),
}

/// What to print and whether the run counts as a success.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, ok: true }
    }
}

fn expr<T>(src: &str, r: Result<T, EvalError>) -> Result<T, CliError> {
    r.map_err(|error| {
        let excerpt = match error.pos() {
            Some(pos) => crate::parse::ParseError {
                pos,
                message: String::new(),
            }
            .excerpt(src),
            None => format!("  {src}"),
        };
        CliError::Expression { error, excerpt }
    })
}

impl Opts {
    fn assignment(&self) -> Result<ParamAssignment, CliError> {
        let mut at = ParamAssignment::new();
        let given = [
            ("z", &self.z),
            ("m2", &self.m2),
            ("m3", &self.m3),
            ("m4", &self.m4),
            ("theta", &self.theta),
            ("t", &self.t),
        ];
        for (name, value) in given {
            if let Some(text) = value {
                let q = parse_rational(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))?;
                at.set(name, q);
            }
        }
        at.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(at)
    }

    fn context(&self) -> Result<Context, CliError> {
        Ok(Context::new(self.assignment()?).with_module(self.module)?)
    }

    /// Numeric parameters, with `theta` defaulting to 0.
    fn numeric_params(&self) -> Result<CharacterParams<Rational>, CliError> {
        let at = self.assignment()?;
        CharacterParams::from_assignment(&at)
            .map_err(|e| CliError::Usage(format!("this command needs numeric parameters --z --m2 --m3 --m4: {e}")))
    }

    /// Truncation bounds; `V` and `W` have no negative part.
    fn bounds(&self, default: (u64, u32, u32)) -> Bounds {
        let w = match self.module {
            Space::Ind => self.max_weight.unwrap_or(default.0),
            _ => 0,
        };
        let j = match self.module {
            Space::V => 0,
            _ => self.max_j.unwrap_or(default.1),
        };
        Bounds::new(w, j, self.max_k.unwrap_or(default.2))
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let o = &cli.opts;
    match &cli.verb {
        Verb::Bracket { x, y } => {
            let c = Context::new(o.assignment()?);
            let a = expr(x, c.parse_lie(x))?;
            let b = expr(y, c.parse_lie(y))?;
            let r = Virasoro::STANDARD.bracket(&a, &b);
            Ok(Outcome::ok(match o.format {
                Format::Text => r.to_string(),
                Format::Json => lie_json(&r).to_string(),
            }))
        }
        Verb::NormalOrder { x } => {
            let c = Context::new(o.assignment()?);
            let u = expr(x, c.parse_uea(x))?;
            Ok(Outcome::ok(render(&Value::Uea(u), o.format)))
        }
        Verb::Act { u, x } => {
            let c = o.context()?;
            let op = expr(u, c.parse_uea(u))?;
            let y = expr(x, c.parse_module(x))?;
            let m = c.module().expect("context has a module");
            Ok(Outcome::ok(render(&Value::Module(m.act(&op, &y)?), o.format)))
        }
        Verb::Kernel { u } => {
            let params = o.numeric_params()?;
            let c = o.context()?;
            let op = expr(u, c.parse_uea(u))?;
            let op = op.map_coeffs(numeric).map_err(CliError::Usage)?;
            let m = InducedModule::new(o.module, params);
            let bounds = o.bounds((2, 4, 4));
            let ker = kernel(&m, &op, &bounds)?;
            Ok(Outcome::ok(kernel_report(&ker, &bounds, o.format)))
        }
        Verb::Solve { u, x } => {
            let c = o.context()?;
            let op = expr(u, c.parse_uea(u))?;
            let target = expr(x, c.parse_module(x))?;
            let bounds = o.bounds((2, 4, 4));
            let text = match o.numeric_params() {
                Ok(params) => {
                    let op = op.map_coeffs(numeric).map_err(CliError::Usage)?;
                    let target = target.map_coeffs(numeric).map_err(CliError::Usage)?;
                    let m = InducedModule::new(o.module, params);
                    solve_report(solve_affine(&m, &op, &target, &bounds)?, &bounds, o.format)
                }
                Err(_) => {
                    let m = c.module().expect("context has a module");
                    solve_report(solve_affine(m, &op, &target, &bounds)?, &bounds, o.format)
                }
            };
            Ok(Outcome::ok(text))
        }
        Verb::Check { id } => {
            let cfg = BatteryConfig {
                seed: o.seed,
                trials: o.trials,
                timings: !o.no_timings,
                ..Default::default()
            };
            let reports = if id == "all" {
                checks::run_all(&cfg)
            } else {
                vec![checks::run_check(id, &cfg).ok_or_else(|| {
                    CliError::Usage(format!("unknown check `{id}`; expected `all` or one of {}", CHECK_IDS.join(", ")))
                })?]
            };
            Ok(check_report(&reports, o.format))
        }
        Verb::Probe => {
            let params = o.numeric_params()?;
            let reach_bounds = match o.module {
                Space::Ind => Bounds::new(3, 3, 3),
                Space::W => Bounds::new(0, 8, 8),
                Space::V => Bounds::new(0, 0, 8),
            };
            let cfg = ProbeConfig {
                trials: o.trials,
                seed: o.seed,
                bounds: o.bounds((6, 4, 4)),
                reach: Some(ReachBudget {
                    bounds: reach_bounds,
                    max_dim: 200,
                }),
                reach_trials: 5,
                force: o.force,
                ..Default::default()
            };
            let s = checks::probe_simplicity(o.module, &params, Virasoro::STANDARD, &cfg)
                .map_err(|e| match e {
                    ProbeError::ConditionsViolated(c) => CliError::Usage(format!(
                        "parameters violate {}; pass --force to probe anyway",
                        c.violated().join(", ")
                    )),
                    e => CliError::Usage(e.to_string()),
                })?;
            let text = match o.format {
                Format::Json => serde_json::to_string(&s).expect("serialisable"),
                Format::Text => {
                    let mut t = format!(
                        "{} at {}: {} trials, {} descents checked, {} failures, generation reached v in {}/{}",
                        s.space,
                        s.params,
                        s.trials,
                        s.descents_checked,
                        s.descent_failures.len(),
                        s.reach_succeeded,
                        s.reach_attempted
                    );
                    for f in &s.descent_failures {
                        write!(t, "\n  {f}").unwrap();
                    }
                    t
                }
            };
            Ok(Outcome {
                stdout: text,
                ok: s.passed(),
            })
        }
        Verb::ClassifySubalgebra => {
            if o.kmax < 9 {
                return Err(CliError::Usage("--kmax must be at least 9".into()));
            }
            let limits = GroebnerLimits::default();
            let c = classify_codim_one(o.kmax, &limits)?;
            let full = if o.full_ideal { Some(full_ideal(&limits)?) } else { None };
            let ok = c.passed() && full.as_ref().is_none_or(|f| f.a3_reduces && f.a4_reduces);
            let strs = |v: &[Poly]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
            let text = match o.format {
                Format::Json => json!({
                    "kmax": c.kmax,
                    "saturated_basis": strs(&c.saturated_basis),
                    "unsaturated_basis": strs(&c.unsaturated_basis),
                    "a3_minus_a2^2_reduces": c.a3_reduces,
                    "a4_minus_a2^3_reduces": c.a4_reduces,
                    "a3^6_minus_a3^5*a2^2_in_unsaturated": c.power_relation_reduces,
                    "converse": c.converse,
                    "full_ideal": full.as_ref().map(|f| json!({
                        "generators": f.generators,
                        "basis": strs(&f.basis),
                        "a3_minus_a2^2_reduces": f.a3_reduces,
                        "a4_minus_a2^3_reduces": f.a4_reduces,
                        "stats": f.stats,
                    })),
                })
                .to_string(),
                Format::Text => {
                    let mut t = String::from("saturated basis:\n");
                    for p in &c.saturated_basis {
                        writeln!(t, "  {p}").unwrap();
                    }
                    t.push_str("unsaturated basis:\n");
                    for p in &c.unsaturated_basis {
                        writeln!(t, "  {p}").unwrap();
                    }
                    writeln!(t, "a3 - a2^2 reduces to 0: {}", c.a3_reduces).unwrap();
                    writeln!(t, "a4 - a2^3 reduces to 0: {}", c.a4_reduces).unwrap();
                    writeln!(t, "a3^6 - a3^5*a2^2 in unsaturated ideal: {}", c.power_relation_reduces).unwrap();
                    write!(t, "a_k = a2^(k-1) satisfies every constraint up to k = {}: {}", c.kmax, c.converse).unwrap();
                    if let Some(f) = &full {
                        write!(t, "\nfull ideal ({} generators):", f.generators).unwrap();
                        for p in &f.basis {
                            write!(t, "\n  {p}").unwrap();
                        }
                    }
                    t
                }
            };
            Ok(Outcome { stdout: text, ok })
        }
        Verb::CompareIndex { i, j } => {
            let parse = |s: &str| s.parse::<MultiIndex>().map_err(|e| CliError::Usage(e.to_string()));
            let (a, b) = (parse(i)?, parse(j)?);
            let word = match a.compare(&b) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            Ok(Outcome::ok(match o.format {
                Format::Text => word.to_string(),
                Format::Json => json!({
                    "i": a.to_string(), "j": b.to_string(), "order": word,
                    "weights": [a.weight(), b.weight()], "degrees": [a.degree(), b.degree()],
                })
                .to_string(),
            }))
        }
    }
}

fn kernel_report<F: Field>(ker: &[ModElt<F>], bounds: &Bounds, format: Format) -> String {
    match format {
        Format::Json => json!({
            "bounds": bounds.to_string(),
            "dimension": ker.len(),
            "basis": ker.iter().map(module_json).collect::<Vec<_>>(),
        })
        .to_string(),
        Format::Text => {
            let mut t = format!("kernel dimension {} within {bounds}", ker.len());
            for x in ker {
                write!(t, "\n  {x}").unwrap();
            }
            t
        }
    }
}

fn solve_report<F: Field>(sol: Option<AffineSolution<F>>, bounds: &Bounds, format: Format) -> String {
    match (sol, format) {
        (None, Format::Json) => json!({ "bounds": bounds.to_string(), "solvable": false }).to_string(),
        (None, Format::Text) => format!("no solution within {bounds}"),
        (Some(s), Format::Json) => json!({
            "bounds": bounds.to_string(),
            "solvable": true,
            "particular": module_json(&s.particular),
            "kernel": s.kernel.iter().map(module_json).collect::<Vec<_>>(),
        })
        .to_string(),
        (Some(s), Format::Text) => {
            let mut t = format!("particular: {}\nkernel dimension {}", s.particular, s.kernel.len());
            for x in &s.kernel {
                write!(t, "\n  {x}").unwrap();
            }
            t
        }
    }
}

fn check_report(reports: &[CheckReport], format: Format) -> Outcome {
    let lines: Vec<String> = reports
        .iter()
        .map(|r| match format {
            Format::Json => r.to_json(),
            Format::Text if r.passed() => r.text_line(),
            Format::Text => format!("{}\n  {}", r.text_line(), r.details),
        })
        .collect();
    Outcome {
        stdout: lines.join("\n"),
        ok: reports.iter().all(CheckReport::passed),
    }
}
