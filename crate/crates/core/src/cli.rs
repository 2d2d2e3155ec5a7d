//! Command-line interface of the `spingw` binary.
//!
//! Exit codes: 0 success, 1 failed verification, 2 bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{format_rational, Rational, SymbolicCombo};
use crate::closed_forms::{
    closed_value, gt_dim0, gw_dim0, mp_descendant, pretty_symbol, InsertionKind, InvariantKey,
    Parity, SpinKey,
};
use crate::error::Error;
use crate::exec::Execution;
use crate::partitions::Partition;
use crate::sum_engine::{
    blowup_sum_rhs, blowup_sum_symbolic, genus_zero_symbol, nonseparating_descent,
    reduce_genus_zero, separating_split, ReductionTrace, Registry,
};
use crate::trr::{base_absolute, base_relative, verify_rel_equivalence, MixedExpr, Reducer};
use crate::verify::{self, Bounds, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "spingw",
    version,
    about = "Exact local GW/GT invariants of spin curves"
)]
pub struct Cli {
    /// Registry of known invariant values (JSON object of canonical key -> "p/q").
    #[arg(long, global = true, env = "SPINGW_REGISTRY")]
    registry: Option<PathBuf>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single invariant or rewrite.
    Compute(ComputeArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Emit a table of values over a genus sweep.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Quantity {
    /// Dimension-zero GT_d (d = 1, 2).
    Dim0,
    /// Dimension-zero connected GW_d (d = 1, 2).
    Gw0,
    /// MP descendant formula, insertions from --k.
    Mp,
    /// F0 relative invariant with contacts --m1 and optional --m2.
    F0,
    /// Any canonical key given by --key, from closed forms or the registry.
    Key,
    /// Absolute TRR base value for degree --k.
    BaseAbs,
    /// Relative TRR base value for degree --k.
    BaseRel,
    /// GT_(2)^{loc,h,p} as a multiple of GT_(2)^{loc,0,+}.
    Reduce,
    /// Blow-up sum right-hand side; numeric unless --symbolic.
    Blowup,
    /// Separating split of (--h,--parity) + (--h2,--parity2).
    Split,
    /// Nonseparating descent at (--h,--parity).
    Descent,
    /// Full TRR reduction of --expr to pure-phi symbols.
    Trr,
    /// Relative/descendant equivalence check for --expr.
    RelEquiv,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(value_enum)]
    quantity: Quantity,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    h: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    parity: Option<Parity>,
    #[arg(long)]
    h2: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    parity2: Option<Parity>,
    /// Comma-separated descendant exponents.
    #[arg(long, value_delimiter = ',')]
    k: Vec<u32>,
    #[arg(long)]
    m1: Option<Partition>,
    #[arg(long)]
    m2: Option<Partition>,
    /// Number of insertions placed on the local side of the blow-up sum.
    #[arg(long, default_value_t = 0)]
    n1: usize,
    #[arg(long)]
    symbolic: bool,
    #[arg(long)]
    key: Option<String>,
    #[arg(long)]
    expr: Option<String>,
    /// Also print the reduction trace.
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..=64))]
    hmax: u32,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=6))]
    dmax: u32,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..=8))]
    wmax: u32,
    /// Run sweeps on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Dimension-zero GT_d for d = 1, 2.
    Dim0,
    /// MP descendant values for d = 1, 2 with insertions --k.
    Mp,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = TableKind::Dim0)]
    kind: TableKind,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..=64))]
    hmax: u32,
    #[arg(long, value_delimiter = ',')]
    k: Vec<u32>,
}

/// A failure with its exit code and one-line message.
struct Failure {
    code: i32,
    message: String,
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn field(name: &str, e: Error) -> Failure {
    input(format!("{name}: {e}"))
}

fn need<T>(v: Option<T>, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| input(format!("{name}: required for this quantity")))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &text) {
                    let _ = writeln!(stderr, "error: --out: {}: {e}", path.display());
                    return 2;
                }
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn load_registry(cli: &Cli) -> Result<Option<Registry>, Failure> {
    cli.registry
        .as_ref()
        .map(|p| Registry::load(p).map_err(|e| field("--registry", e)))
        .transpose()
}

fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    let registry = load_registry(cli)?;
    match &cli.command {
        Command::Compute(a) => compute(a, cli.format, registry.as_ref()),
        Command::Verify(a) => {
            let bounds = Bounds {
                h_max: a.hmax,
                d_max: a.dmax,
                w_max: a.wmax,
            };
            let exec = if a.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            };
            let report = verify::run(a.suite, bounds, registry.as_ref(), exec);
            let text = match cli.format {
                Format::Text => report.render_text(),
                Format::Json => pretty(&report.to_json()),
                Format::Csv => report.render_csv(),
            };
            Ok((text, if report.passed() { 0 } else { 1 }))
        }
        Command::Table(a) => table(a, cli.format).map(|t| (t, 0)),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn spin(h: Option<u32>, p: Option<Parity>, hname: &str, pname: &str) -> Result<SpinKey, Failure> {
    let h = need(h, hname)?;
    let p = need(p, pname)?;
    SpinKey::new(h, p).map_err(|e| field(pname, e))
}

enum Output {
    Value(Rational),
    Combo(SymbolicCombo),
    Holds(bool),
}

fn compute(
    a: &ComputeArgs,
    format: Format,
    registry: Option<&Registry>,
) -> Result<(String, i32), Failure> {
    let spin_main = || spin(a.h, a.parity, "--h", "--parity");
    let mut trace: Option<ReductionTrace> = None;
    let out = match a.quantity {
        Quantity::Dim0 => {
            Output::Value(gt_dim0(need(a.d, "--d")?, spin_main()?).map_err(|e| field("--d", e))?)
        }
        Quantity::Gw0 => {
            Output::Value(gw_dim0(need(a.d, "--d")?, spin_main()?).map_err(|e| field("--d", e))?)
        }
        Quantity::Mp => Output::Value(
            mp_descendant(need(a.d, "--d")?, spin_main()?, &a.k).map_err(|e| field("--d", e))?,
        ),
        Quantity::F0 => {
            let m1 = need(a.m1.clone(), "--m1")?;
            let key = InvariantKey::f0(m1, a.m2.clone()).map_err(|e| field("--m2", e))?;
            let v = closed_value(&key)
                .or_else(|| registry.and_then(|r| r.get(&key).cloned()))
                .ok_or_else(|| field("--m1", Error::MissingRegistryEntry(key.canonical())))?;
            Output::Value(v)
        }
        Quantity::Key => {
            let raw = need(a.key.as_deref(), "--key")?;
            let key: InvariantKey = raw.parse().map_err(|e| field("--key", e))?;
            let v = closed_value(&key)
                .or_else(|| registry.and_then(|r| r.get(&key).cloned()))
                .ok_or_else(|| field("--key", Error::MissingRegistryEntry(key.canonical())))?;
            Output::Value(v)
        }
        Quantity::BaseAbs | Quantity::BaseRel => {
            let k = match a.k.as_slice() {
                [k] if *k >= 1 => *k,
                _ => return Err(input("--k: expected a single degree >= 1")),
            };
            Output::Value(if a.quantity == Quantity::BaseAbs {
                base_absolute(k)
            } else {
                base_relative(k)
            })
        }
        Quantity::Reduce => {
            let (c, t) = reduce_genus_zero(spin_main()?);
            trace = Some(t);
            Output::Combo(SymbolicCombo::symbol(genus_zero_symbol()).scale(&c))
        }
        Quantity::Blowup => {
            let d = need(a.d, "--d")?;
            let s = spin_main()?;
            let n1 = a.n1;
            if n1 > a.k.len() {
                return Err(input(format!(
                    "--n1: {n1} exceeds the {} insertions",
                    a.k.len()
                )));
            }
            let split = (n1, a.k.len() - n1);
            if a.symbolic {
                Output::Combo(blowup_sum_symbolic(d, s, &a.k, split).map_err(|e| field("--d", e))?)
            } else {
                let empty = Registry::new();
                let reg = registry.unwrap_or(&empty);
                Output::Value(
                    blowup_sum_rhs(d, s, &a.k, split, reg).map_err(|e| field("--registry", e))?,
                )
            }
        }
        Quantity::Split => {
            let k1 = spin_main()?;
            let k2 = spin(a.h2, a.parity2, "--h2", "--parity2")?;
            Output::Combo(separating_split(k1, k2).map_err(|e| field("--h2", e))?)
        }
        Quantity::Descent => {
            Output::Combo(nonseparating_descent(spin_main()?).map_err(|e| field("--h", e))?)
        }
        Quantity::Trr => {
            let e: MixedExpr = need(a.expr.as_deref(), "--expr")?
                .parse()
                .map_err(|e| field("--expr", e))?;
            Output::Combo(
                Reducer::default()
                    .reduce(&e)
                    .map_err(|e| field("--expr", e))?,
            )
        }
        Quantity::RelEquiv => {
            let e: MixedExpr = need(a.expr.as_deref(), "--expr")?
                .parse()
                .map_err(|e| field("--expr", e))?;
            let r = verify_rel_equivalence(e.degree(), e.genus(), e.insertions())
                .map_err(|e| field("--expr", e))?;
            trace = Some(r.trace);
            Output::Holds(r.holds)
        }
    };
    let trace = if a.trace { trace } else { None };
    let code = if matches!(out, Output::Holds(false)) {
        1
    } else {
        0
    };
    Ok((render(&out, trace.as_ref(), format), code))
}

fn render(out: &Output, trace: Option<&ReductionTrace>, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = match out {
                Output::Value(v) => format_rational(v),
                Output::Combo(c) => c.render_with(&pretty_symbol),
                Output::Holds(h) => h.to_string(),
            };
            s.push('\n');
            if let Some(t) = trace.filter(|t| !t.is_empty()) {
                s.push_str(&t.render_with(&pretty_symbol));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut v = match out {
                Output::Value(v) => json!({"value": format_rational(v)}),
                Output::Combo(c) => json!({"combo": c.to_json()}),
                Output::Holds(h) => json!({"holds": h}),
            };
            if let Some(t) = trace {
                v["trace"] = t.to_json();
            }
            pretty(&v)
        }
        Format::Csv => match out {
            Output::Value(v) => format!("value\n{}\n", format_rational(v)),
            Output::Holds(h) => format!("holds\n{h}\n"),
            Output::Combo(c) => {
                let mut s = String::from("symbol,coefficient\n");
                for (k, v) in c.iter() {
                    s.push_str(&format!("{},{}\n", k, format_rational(v)));
                }
                s
            }
        },
    }
}

fn table(a: &TableArgs, format: Format) -> Result<String, Failure> {
    let mut rows = Vec::new();
    for s in SpinKey::sweep(a.hmax) {
        for d in [1, 2] {
            let (key, value) = match a.kind {
                TableKind::Dim0 => (
                    InvariantKey::absolute(s, d).expect("d >= 1"),
                    gt_dim0(d, s).expect("d <= 2"),
                ),
                TableKind::Mp => (
                    InvariantKey::absolute(s, d)
                        .and_then(|k| k.with_insertions(InsertionKind::Tau, a.k.clone()))
                        .expect("d >= 1"),
                    mp_descendant(d, s, &a.k).expect("d <= 2"),
                ),
            };
            rows.push((s, d, key, value));
        }
    }
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("h,p,d,value\n");
            for (s, d, _, v) in &rows {
                out.push_str(&format!(
                    "{},{},{d},{}\n",
                    s.genus(),
                    s.parity(),
                    format_rational(v)
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (_, _, key, v) in &rows {
                out.push_str(&format!(
                    "{} = {}\n",
                    pretty_symbol(&key.canonical()),
                    format_rational(v)
                ));
            }
            out
        }
        Format::Json => {
            let mut reg = Registry::new();
            for (_, _, key, v) in rows {
                reg.insert(&key, v);
            }
            pretty(&reg.to_json())
        }
    })
}
