//! The `mmk` command-line front end.
//!
//! Data goes to the output stream and diagnostics to the error stream. Exit
//! codes: 0 on success, 1 when `verify` or `invariants check` finds a
//! violation, 2 on usage or domain errors.

pub mod tables;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::ade::{is_type_i, label_invariant};
use crate::classification::{classify_minimal, classify_minimal_range, classify_minimal_type_ii, classify_su2, ClassificationEntry};
use crate::error::{domain, Error, Result};
use crate::fusion::{fuse, lookup, minimal_fusion, verlinde};
use crate::invariants::{enumerate_invariants, is_modular_invariant, ModularInvariant};
use crate::modular_data::{canonical_label, Algebra, Label, Su2Label};

pub use tables::{emit_table, TableFormat, TableId};

/// Largest minimal model enumerated without `--force`.
pub const ENUMERATE_MAX_M: u32 = 12;
/// Largest SU(2) level enumerated without `--force`.
pub const ENUMERATE_MAX_LEVEL: u32 = 32;
/// Environment variable capping worker threads.
pub const WORKERS_ENV: &str = "MMK_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "mmk", version, about = "Modular data, fusion rings and modular invariants of SU(2)_k and c < 1 minimal models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraKind {
    Su2,
    Minimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Args, Debug)]
struct Selector {
    #[arg(long, value_enum)]
    algebra: Option<AlgebraKind>,
    /// SU(2) level k
    #[arg(long)]
    level: Option<u32>,
    /// minimal model index m
    #[arg(long)]
    m: Option<u32>,
}

impl Selector {
    fn resolve(&self) -> Result<Algebra> {
        match (self.algebra, self.level, self.m) {
            (_, Some(_), Some(_)) => Err(domain("--level and --m are mutually exclusive")),
            (Some(AlgebraKind::Minimal), Some(_), None) => Err(domain("--level selects su2, not minimal")),
            (Some(AlgebraKind::Su2), None, Some(_)) => Err(domain("--m selects minimal, not su2")),
            (_, Some(level), None) => Ok(Algebra::Su2 { level }),
            (_, None, Some(m)) => Ok(Algebra::Minimal { m }),
            (_, None, None) => Err(domain("an algebra is required: pass --level K or --m M")),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// S, T, weights and central charge of one datum
    ModularData {
        #[command(flatten)]
        selector: Selector,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Fusion of two labels
    Fusion {
        #[command(flatten)]
        selector: Selector,
        /// `p,q` for minimal models, `a` for su2
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Enumerate, check or label modular invariants
    Invariants {
        #[command(subcommand)]
        action: InvariantsAction,
    },
    /// Local extensions and type II invariants
    Classify {
        #[command(flatten)]
        selector: Selector,
        /// classify every minimal model 3..=M
        #[arg(long)]
        max_m: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Classification tables
    Tables {
        #[arg(long, value_enum)]
        which: TableId,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutputFormat,
    },
    /// Run the self-check suite
    Verify {
        #[arg(long, default_value_t = ENUMERATE_MAX_M)]
        max_m: u32,
    },
}

#[derive(Subcommand, Debug)]
enum InvariantsAction {
    /// All modular invariants of one datum
    Enumerate {
        #[command(flatten)]
        selector: Selector,
        /// allow large instances
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Test matrices read from a JSON file
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// A-D-E label and type I blocks of one invariant
    Label {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
}

/// Failure of one invocation: a message and its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: format!("i/o error: {e}") }
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn json_only(format: OutputFormat) -> Result<()> {
    if format == OutputFormat::Json {
        Ok(())
    } else {
        Err(domain(format!("format {format:?} is not available for this command").to_lowercase()))
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> Outcome {
    let text = serde_json::to_string_pretty(v).map_err(|e| domain(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(0)
}

fn workers() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(domain(format!("{WORKERS_ENV}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(domain(format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    let outcome = match workers() {
        Err(e) => Err(Failure::from(e)),
        Ok(None) => dispatch(cli.command, out, err),
        Ok(Some(n)) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                // Output sinks need not be Send; buffer inside the pool.
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let result = pool.install(|| dispatch(cli.command, &mut o, &mut e));
                let _ = out.write_all(&o);
                let _ = err.write_all(&e);
                result
            }
            Err(e) => Err(Failure { code: 2, message: format!("thread pool: {e}") }),
        },
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::ModularData { selector, format } => {
            json_only(format)?;
            let d = selector.resolve()?.datum()?;
            print_json(out, &d.to_json())
        }
        Command::Fusion { selector, left, right, format } => {
            json_only(format)?;
            fusion_command(selector.resolve()?, &left, &right, out)
        }
        Command::Invariants { action } => match action {
            InvariantsAction::Enumerate { selector, force, format } => {
                json_only(format)?;
                enumerate_command(selector.resolve()?, force, out, err)
            }
            InvariantsAction::Check { input, format } => {
                json_only(format)?;
                check_command(&input, out)
            }
            InvariantsAction::Label { input, format } => {
                json_only(format)?;
                label_command(&input, out)
            }
        },
        Command::Classify { selector, max_m, format } => classify_command(&selector, max_m, format, out),
        Command::Tables { which, format } => {
            let format = match format {
                OutputFormat::Markdown => TableFormat::Markdown,
                OutputFormat::Csv => TableFormat::Csv,
                OutputFormat::Json => return Err(domain("tables are emitted as markdown or csv").into()),
            };
            write!(out, "{}", emit_table(which, format)?)?;
            Ok(0)
        }
        Command::Verify { max_m } => verify_command(max_m, out),
    }
}

fn parse_label(algebra: Algebra, text: &str) -> Result<Label> {
    let bad = || domain(format!("cannot parse label {text:?}"));
    match algebra {
        Algebra::Su2 { .. } => Ok(Label::Su2(Su2Label(text.trim().parse().map_err(|_| bad())?))),
        Algebra::Minimal { m } => {
            let (p, q) = text.split_once(',').ok_or_else(bad)?;
            let p: u32 = p.trim().parse().map_err(|_| bad())?;
            let q: u32 = q.trim().parse().map_err(|_| bad())?;
            Ok(Label::Minimal(canonical_label(m, p, q)?))
        }
    }
}

fn fusion_command(algebra: Algebra, left: &str, right: &str, out: &mut dyn Write) -> Outcome {
    let d = algebra.datum()?;
    let a = parse_label(algebra, left)?;
    let b = parse_label(algebra, right)?;
    let result: Vec<Label> = match (algebra, a, b) {
        (Algebra::Minimal { m }, Label::Minimal(x), Label::Minimal(y)) => {
            minimal_fusion(m, x, y)?.into_iter().map(Label::Minimal).collect()
        }
        _ => {
            let n = verlinde(&d)?;
            fuse(&d, &n, lookup(&d, a)?, lookup(&d, b)?)
        }
    };
    print_json(
        out,
        &json!({
            "left": a.to_json(),
            "right": b.to_json(),
            "result": result.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
        }),
    )
}

fn enumerate_command(algebra: Algebra, force: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let too_big = match algebra {
        Algebra::Minimal { m } => m > ENUMERATE_MAX_M,
        Algebra::Su2 { level } => level > ENUMERATE_MAX_LEVEL,
    };
    if too_big && !force {
        return Err(domain(format!(
            "{algebra} is beyond the default enumeration range (m <= {ENUMERATE_MAX_M}, k <= {ENUMERATE_MAX_LEVEL}); pass --force"
        ))
        .into());
    }
    let d = algebra.datum()?;
    let started = Instant::now();
    let found = enumerate_invariants(&d)?;
    let mut items = Vec::with_capacity(found.len());
    for z in &found {
        let mut v = z.to_json(&d);
        let label = match label_invariant(z) {
            Ok(l) => Value::String(l.to_string()),
            Err(e) => {
                writeln!(err, "warning: {e}")?;
                Value::Null
            }
        };
        v["label"] = label;
        items.push(v);
    }
    writeln!(err, "{} invariants for {algebra} in {:.2?}", found.len(), started.elapsed())?;
    print_json(out, &Value::Array(items))
}

#[derive(Deserialize)]
struct InvariantInput {
    algebra: Algebra,
    #[serde(rename = "Z")]
    z: Vec<Vec<u32>>,
}

impl InvariantInput {
    fn build(&self) -> Result<ModularInvariant> {
        ModularInvariant::from_rows(self.algebra, &self.z)
    }
}

/// Reads a single invariant object or an array of them.
fn read_invariants(path: &Path) -> Result<(Vec<InvariantInput>, bool)> {
    let text = std::fs::read_to_string(path).map_err(|e| domain(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    let many = value.is_array();
    let items = if many { value } else { Value::Array(vec![value]) };
    let parsed: Vec<InvariantInput> =
        serde_json::from_value(items).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    Ok((parsed, many))
}

fn check_command(path: &Path, out: &mut dyn Write) -> Outcome {
    let (inputs, many) = read_invariants(path)?;
    let mut results = Vec::with_capacity(inputs.len());
    let mut all_valid = true;
    for input in &inputs {
        let d = input.algebra.datum()?;
        let z = input.build()?;
        let v = match is_modular_invariant(&d, &z)? {
            None => json!({"algebra": input.algebra.to_json(), "valid": true}),
            Some(v) => {
                all_valid = false;
                json!({
                    "algebra": input.algebra.to_json(),
                    "valid": false,
                    "violation": {"kind": v.kind.to_string(), "row": v.row, "col": v.col, "value": v.value},
                })
            }
        };
        results.push(v);
    }
    let payload = if many { Value::Array(results) } else { results.remove(0) };
    print_json(out, &payload)?;
    Ok(if all_valid { 0 } else { 1 })
}

fn label_json(input: &InvariantInput) -> Result<Value> {
    let d = input.algebra.datum()?;
    let z = input.build()?;
    if let Some(v) = is_modular_invariant(&d, &z)? {
        return Err(domain(format!("input is not a modular invariant: {v}")));
    }
    let label = label_invariant(&z)?;
    let blocks = is_type_i(&z)?;
    let blocks_json = blocks.as_ref().map(|bs| {
        bs.iter()
            .map(|b| {
                b.iter()
                    .flat_map(|&(i, c)| std::iter::repeat(d.labels[i].to_json()).take(c as usize))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    });
    Ok(json!({"label": label.to_string(), "typeI": blocks.is_some(), "blocks": blocks_json}))
}

fn label_command(path: &Path, out: &mut dyn Write) -> Outcome {
    let (inputs, many) = read_invariants(path)?;
    let mut results = inputs.iter().map(label_json).collect::<Result<Vec<_>>>()?;
    let payload = if many { Value::Array(results) } else { results.remove(0) };
    print_json(out, &payload)
}

const SUMMARY_HEADER: [&str; 10] =
    ["algebra", "label", "type", "index", "mu_extension", "ab", "full", "chiral", "ambichiral", "subnets"];

fn summary_row(e: &ClassificationEntry) -> Vec<String> {
    let c = e.counts;
    vec![
        e.algebra.to_string(),
        e.label.to_string(),
        if e.type_i { "I" } else { "II" }.to_string(),
        format!("{:.9}", e.index),
        format!("{:.9}", e.mu_extension),
        c.ab.to_string(),
        c.full.to_string(),
        c.chiral.to_string(),
        c.ambichiral.to_string(),
        e.subnets.map(|s| s.to_string()).unwrap_or_default(),
    ]
}

fn classify_command(selector: &Selector, max_m: Option<u32>, format: OutputFormat, out: &mut dyn Write) -> Outcome {
    let entries = match max_m {
        Some(_) if selector.level.is_some() || selector.m.is_some() || selector.algebra == Some(AlgebraKind::Su2) => {
            return Err(domain("--max-m ranges over minimal models only and excludes --m/--level").into())
        }
        Some(max_m) => classify_minimal_range(max_m)?,
        None => match selector.resolve()? {
            Algebra::Su2 { level } => classify_su2(level)?,
            Algebra::Minimal { m } => {
                let mut v = classify_minimal(m)?;
                v.extend(classify_minimal_type_ii(m)?);
                v
            }
        },
    };
    match format {
        OutputFormat::Json => {
            let items = entries
                .iter()
                .map(|e| Ok(e.to_json(&e.algebra.datum()?)))
                .collect::<Result<Vec<_>>>()?;
            print_json(out, &Value::Array(items))
        }
        OutputFormat::Markdown | OutputFormat::Csv => {
            let table = tables::Table {
                header: SUMMARY_HEADER.iter().map(|s| s.to_string()).collect(),
                rows: entries.iter().map(summary_row).collect(),
            };
            let fmt = if format == OutputFormat::Csv { TableFormat::Csv } else { TableFormat::Markdown };
            write!(out, "{}", tables::render(&table, fmt)?)?;
            Ok(0)
        }
    }
}

fn verify_command(max_m: u32, out: &mut dyn Write) -> Outcome {
    if max_m < 3 {
        return Err(domain("--max-m must be at least 3").into());
    }
    let started = Instant::now();
    let checks = verify::run_checks(max_m);
    let mut failed = 0;
    for c in &checks {
        match &c.failure {
            None => writeln!(out, "PASS {}", c.name)?,
            Some(f) => {
                failed += 1;
                writeln!(out, "FAIL {}: {f}", c.name)?;
            }
        }
    }
    writeln!(
        out,
        "{} passed, {} failed in {:.1?}",
        checks.len() - failed,
        failed,
        started.elapsed()
    )?;
    Ok(if failed == 0 { 0 } else { 1 })
}
