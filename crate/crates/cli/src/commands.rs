use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use logarr::arrangement::{catalog_names, parse_catalog_spec};
use logarr::criteria::{decide, deletion_decision, predict_deleted, terao_compare, TeraoComparison};
use logarr::invariants::{c2_of, exponent_candidates, ExponentPair};
use logarr::splitting::{dz_generic, dzy, SamplingParams};
use logarr::{Error, Result, Status};

use crate::input::{load, parse_point};
use crate::render::{render_svg, DEFAULT_WIDTH};
use crate::report::{analyze, AnalyzeOptions, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_NON_CONFORMING: i32 = 4;

/// Freeness of line arrangements in the projective plane.
///
/// Wherever a path is expected, `catalog:name` or `catalog:name(p, ...)`
/// builds a catalog arrangement instead.
#[derive(Debug, Parser)]
#[command(name = "logarr", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, every criterion and the final verdict.
    Analyze {
        path: String,
        #[command(flatten)]
        decide: DecideArgs,
        /// JSON report (the default).
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Human-readable summary.
        #[arg(long)]
        text: bool,
    },
    /// The number d_{Z,y} at a given dual point, or its generic value.
    Dz {
        path: String,
        /// `x,y,z` or a JSON array of scalars.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value_t = SamplingParams::default().trials)]
        trials: usize,
        #[arg(long, default_value_t = SamplingParams::default().seed)]
        seed: u64,
    },
    /// What removing one line does to freeness.
    Delete {
        path: String,
        #[arg(long)]
        index: usize,
        #[command(flatten)]
        decide: DecideArgs,
    },
    /// Compare two arrangements against Terao's conjecture.
    Terao {
        path_a: String,
        path_b: String,
        #[command(flatten)]
        decide: DecideArgs,
    },
    /// SVG drawing of an arrangement over Q.
    Render {
        path: String,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = DEFAULT_WIDTH)]
        width: u32,
    },
    /// List catalog entries, or print one as an arrangement document.
    Catalog { name: Option<String> },
}

#[derive(Clone, Copy, Debug, Args)]
pub struct DecideArgs {
    #[arg(long, default_value_t = SamplingParams::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = SamplingParams::default().trials)]
    trials: usize,
    /// Stop at the first decisive criterion instead of running everything
    /// and checking against the oracle.
    #[arg(long)]
    no_verify: bool,
}

impl DecideArgs {
    fn options(self) -> AnalyzeOptions {
        AnalyzeOptions {
            seed: self.seed,
            trials: self.trials,
            verify: !self.no_verify,
        }
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze { path, decide, text, .. } => {
            let report = analyze(&load(&path)?, &decide.options())?;
            let body = if text { report.to_text() } else { report.to_json() + "\n" };
            emit(out, &body)?;
            Ok(if report.status().is_decided() { EXIT_OK } else { EXIT_UNDECIDED })
        }
        Command::Dz {
            path,
            point,
            trials,
            seed,
        } => {
            let a = load(&path)?;
            let result = match point {
                Some(p) => dzy(&a, &parse_point(a.field(), &p)?)?,
                None => dz_generic(
                    &a,
                    SamplingParams {
                        trials,
                        seed,
                        ..SamplingParams::default()
                    },
                )?,
            };
            emit(out, &pretty(&result.to_json()))?;
            Ok(EXIT_OK)
        }
        Command::Delete { path, index, decide } => {
            let a = load(&path)?;
            let value = delete_report(&a, index, decide.options())?;
            emit(out, &pretty(&value))?;
            Ok(EXIT_OK)
        }
        Command::Terao { path_a, path_b, decide } => {
            let (a, b) = (load(&path_a)?, load(&path_b)?);
            let c = terao_compare(&a, &b, &decide.options().decide_options())?;
            let (body, code) = terao_outcome(&c);
            emit(out, &body)?;
            Ok(code)
        }
        Command::Render { path, out: file, width } => {
            let svg = render_svg(&load(&path)?, width)?;
            match file {
                Some(f) => fs::write(&f, svg).map_err(|e| Error::Io(format!("{f}: {e}")))?,
                None => emit(out, &svg)?,
            }
            Ok(EXIT_OK)
        }
        Command::Catalog { name: None } => {
            let width = catalog_names().iter().map(|(n, _)| n.len()).max().unwrap_or(0) + 2;
            let mut s = String::new();
            for (name, desc) in catalog_names() {
                s.push_str(&format!("{name:<width$}{desc}\n"));
            }
            emit(out, &s)?;
            Ok(EXIT_OK)
        }
        Command::Catalog { name: Some(name) } => {
            let a = parse_catalog_spec(&name)?.build()?;
            emit(out, &(a.to_json() + "\n"))?;
            Ok(EXIT_OK)
        }
    }
}

/// The comparison record and the exit code it maps to.
pub fn terao_outcome(c: &TeraoComparison) -> (String, i32) {
    let value = json!({ "schema": SCHEMA, "comparison": c });
    let code = if c.conforming { EXIT_OK } else { EXIT_NON_CONFORMING };
    (pretty(&value), code)
}

/// The deletion record for line `index`: its `t`, what that says about `A`,
/// the three alternatives for `A \ H` when `A` has candidate exponents, and
/// the verdict on `A \ H` itself.
pub fn delete_report(a: &logarr::Arrangement, index: usize, opts: AnalyzeOptions) -> Result<Value> {
    a.line(index)?;
    let dopts = opts.decide_options();
    let original = decide(a, &dopts)?;
    let known = original.status;
    let deletion = deletion_decision(a, index, Some(&known))?;
    let alternatives = exponent_candidates(a.m(), c2_of(a).c2)
        .first()
        .map(|&p| alternatives(p, deletion.t))
        .unwrap_or(Value::Null);
    let deleted = a.delete(index)?;
    let deleted_decision = decide(&deleted, &dopts)?;
    Ok(json!({
        "schema": SCHEMA,
        "index": index,
        "t": deletion.t,
        "original": { "status": known, "decided_by": original.decided_by },
        "deletion": deletion,
        "alternatives": alternatives,
        "deleted": {
            "arrangement": deleted.to_doc(),
            "status": deleted_decision.status,
            "decided_by": deleted_decision.decided_by,
            "oracle": deleted_decision.oracle(),
        },
        "seed": opts.seed,
        "trials": opts.trials,
        "verify": opts.verify,
    }))
}

fn alternatives(p: ExponentPair, t: usize) -> Value {
    let (k, b) = (p.a, p.b);
    let mut rows = Vec::new();
    if k >= 1 {
        rows.push(json!({ "t": k - 1, "deleted": predict_deleted(p, k - 1), "applies": t == k - 1 }));
    }
    rows.push(json!({ "t": b - 1, "deleted": predict_deleted(p, b - 1), "applies": t == b - 1 }));
    rows.push(json!({ "t_at_least": b, "deleted": Status::NotFree, "applies": t >= b }));
    json!({ "k": k, "r": p.r(), "cases": rows })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialise") + "\n"
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}
