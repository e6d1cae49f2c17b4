//! Command-line front end. `run` parses arguments, executes one command and
//! returns the report with the process exit code.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::h2_with_spec;
use crate::error::{Error, Result};
use crate::fusion_data::{hasse, hasse_export, weight_bound, weight_count, System};
use crate::poset::verify_lim_a2;
use crate::robinson::{self, DEFECT_ZERO_TABLE};
use crate::solmodel::{verify_quaternion_lemma, verify_sol, Check, Report};
use crate::zoo::{named_group, GroupSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "solweights", version, about = "Defect-zero blocks, fusion tables and weight counts")]
pub struct Cli {
    /// Print the full report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on the number of elements enumerated by any closure.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of 2-blocks of defect zero of a group.
    DefectZero {
        #[arg(long)]
        group: String,
    },
    /// Recompute the thirteen-row defect-zero table.
    TableDef0,
    /// Weight count of a fusion system from the classification tables.
    Weights {
        #[arg(long, value_enum)]
        system: SystemArg,
        #[arg(long)]
        l: u32,
    },
    /// Structural checks.
    Verify {
        #[arg(value_enum)]
        what: VerifyTarget,
        #[arg(long)]
        l: u32,
    },
    /// `dim H^2(G, F_p)` with the route taken.
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u64,
    },
    /// The limit of degree-2 cohomology over centric radical chains.
    Lim {
        #[arg(long)]
        l: u32,
    },
    /// Hasse diagram of the centric radical classes.
    Hasse {
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value = "dot")]
        format: HasseFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SystemArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "F", alias = "f")]
    F,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VerifyTarget {
    Quaternion,
    Sol,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HasseFormat {
    Dot,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl From<Check> for CheckRow {
    fn from(c: Check) -> Self {
        CheckRow { name: c.check, expected: c.expected, actual: c.computed, pass: c.pass }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<CheckRow>,
    pub timing_ms: u128,
    /// Plain-text rendering for non-JSON output.
    #[serde(skip)]
    pub text: String,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &str, expected: impl ToString, actual: impl ToString) -> CheckRow {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    CheckRow { name: name.into(), pass: expected == actual, expected, actual }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn checks_text(checks: &[CheckRow]) -> String {
    checks
        .iter()
        .map(|c| {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            format!("{mark} {}: expected {}, got {}\n", c.name, c.expected, c.actual)
        })
        .collect()
}

fn from_report(command: &str, inputs: Value, r: Report) -> RunReport {
    let mut text = checks_text(&r.checks.iter().cloned().map(CheckRow::from).collect::<Vec<_>>());
    for f in &r.flags {
        text.push_str(&format!("flag {f}\n"));
    }
    RunReport {
        command: command.into(),
        inputs,
        results: json!({ "flags": r.flags }),
        checks: r.checks.into_iter().map(CheckRow::from).collect(),
        timing_ms: 0,
        text,
    }
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<RunReport> {
    let mut rep = match &cli.command {
        Command::DefectZero { group } => {
            let spec: GroupSpec = group.parse()?;
            let g = named_group(&spec)?;
            let r = robinson::report(group, &g)?;
            let mut checks = vec![check("rank bounded by min(|X|, |Y|)", true, r.rank <= r.x_count.min(r.defect_zero.len()))];
            if let Some(z) = robinson::two_complement_shortcut(&g)? {
                checks.push(check("normal 2-complement count", z, r.count));
            }
            let text = format!(
                "{group}: order {}, {} defect-zero classes, |X| = {}, rank {}\nblocks of defect zero: {}\n",
                r.order,
                r.defect_zero.len(),
                r.x_count,
                r.rank,
                r.count
            );
            RunReport {
                command: "defect-zero".into(),
                inputs: json!({ "group": group }),
                results: to_value(&r),
                checks,
                timing_ms: 0,
                text,
            }
        }
        Command::TableDef0 => {
            let mut rows = Vec::new();
            let mut checks = Vec::new();
            let mut text = String::new();
            for (name, spec, expected) in DEFECT_ZERO_TABLE {
                let g = named_group(&spec.parse()?)?;
                let z = robinson::defect_zero_block_count(&g)?;
                rows.push(json!({ "group": name, "spec": spec, "order": g.order(), "count": z }));
                checks.push(check(name, expected, z));
                text.push_str(&format!("{name:<16} {z}\n"));
            }
            let matched = checks.iter().filter(|c| c.pass).count();
            text.push_str(&format!("{matched}/{} match\n", checks.len()));
            RunReport {
                command: "table-def0".into(),
                inputs: json!({}),
                results: json!({ "rows": rows, "matched": matched }),
                checks,
                timing_ms: 0,
                text,
            }
        }
        Command::Weights { system, l } => {
            let sys = match system {
                SystemArg::H => System::H,
                SystemArg::F => System::F,
            };
            let w = weight_count(sys, *l)?;
            let bound = weight_bound(*l, w.total)?;
            let mut checks = vec![check("w(D, 0)", 12, w.total)];
            checks.push(check("w <= 2^s(S)", true, bound.pass));
            let mut text: String =
                w.rows.iter().map(|r| format!("{:<16} {:<20} z = {}\n", r.label, r.out, r.z)).collect();
            text.push_str(&format!("total {}\n", w.total));
            text.push_str(&format!(
                "bound 2^{} = {} ({})\n",
                bound.sectional_rank,
                bound.bound,
                if bound.computed { "s(S) computed" } else { "s(S) taken from the tables" }
            ));
            RunReport {
                command: "weights".into(),
                inputs: json!({ "system": format!("{sys:?}"), "l": l }),
                results: json!({ "weights": w, "bound": bound }),
                checks,
                timing_ms: 0,
                text,
            }
        }
        Command::Verify { what, l } => match what {
            VerifyTarget::Quaternion => {
                from_report("verify quaternion", json!({ "l": l }), verify_quaternion_lemma(*l)?)
            }
            VerifyTarget::Sol => {
                if *l > 1 {
                    return Err(Error::Precondition(format!("verify sol needs l = 0 or 1, got {l}")));
                }
                from_report("verify sol", json!({ "l": l }), verify_sol(*l)?)
            }
        },
        Command::Cohomology { group, prime } => {
            let spec: GroupSpec = group.parse()?;
            let g = named_group(&spec)?;
            let c = h2_with_spec(&g, Some(&spec), *prime, group)?;
            let mut text = format!("dim H^2({group}, F_{prime}) = {} via {}\n", c.dim, c.path);
            for t in &c.trace {
                text.push_str(&format!("  {t}\n"));
            }
            RunReport {
                command: "cohomology".into(),
                inputs: json!({ "group": group, "prime": prime }),
                results: to_value(&c),
                checks: Vec::new(),
                timing_ms: 0,
                text,
            }
        }
        Command::Lim { l } => {
            let r = verify_lim_a2(*l)?;
            let checks: Vec<CheckRow> = r.checks.iter().cloned().map(CheckRow::from).collect();
            let mut text = checks_text(&checks);
            text.push_str(&format!("criterion {:?}\nlim dimension {}\n", r.criterion, r.lim_dim));
            for c in &r.caveats {
                text.push_str(&format!("caveat: {c}\n"));
            }
            RunReport {
                command: "lim".into(),
                inputs: json!({ "l": l }),
                results: json!({
                    "l": r.l,
                    "criterion": r.criterion,
                    "singleton_values": r.singleton_values,
                    "maps": r.maps,
                    "lim_dim": r.lim_dim,
                    "caveats": r.caveats,
                    "a7": r.a7,
                    "cochain": r.cochain,
                }),
                checks,
                timing_ms: 0,
                text,
            }
        }
        Command::Hasse { l, format } => {
            let d = hasse(*l)?;
            let json_out = matches!(format, HasseFormat::Json);
            let text = hasse_export(*l, json_out)?;
            let results = if json_out { d.to_json(*l) } else { json!({ "dot": text }) };
            RunReport {
                command: "hasse".into(),
                inputs: json!({ "l": l, "format": if json_out { "json" } else { "dot" } }),
                results,
                checks: vec![check("nodes", if *l == 0 { 10 } else { 17 }, d.nodes.len())],
                timing_ms: 0,
                text,
            }
        }
    };
    rep.timing_ms = 0;
    Ok(rep)
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::UnknownSpec(_) | Error::Precondition(_) => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

/// Parses `args`, runs the command, and returns `(exit code, stdout, stderr)`.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let s = e.render().to_string();
            return if code == EXIT_OK { (code, s, String::new()) } else { (code, String::new(), s) };
        }
    };
    if let Some(c) = cli.cap {
        crate::util::set_cap(c);
    }
    if let Some(t) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut rep) => {
            rep.timing_ms = start.elapsed().as_millis();
            let code = if rep.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            let out = if cli.json { serde_json::to_string_pretty(&rep).unwrap() + "\n" } else { rep.text.clone() };
            (code, out, String::new())
        }
        Err(e) => {
            let code = exit_code(&e);
            let out = if cli.json {
                serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit_code": code })).unwrap() + "\n"
            } else {
                String::new()
            };
            (code, out, format!("error: {e}\n"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors() {
        assert_eq!(run(["solweights", "frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(["solweights", "defect-zero", "--group", "Q7"]).0, EXIT_USAGE);
        assert_eq!(run(["solweights", "verify", "quaternion", "--l", "9"]).0, EXIT_USAGE);
    }

    #[test]
    fn hasse_dot() {
        let (code, out, _) = run(["solweights", "hasse", "--l", "0", "--format", "dot"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("digraph"));
        assert_eq!(out.matches("[label=").count(), 10);
    }

    #[test]
    fn json_is_stable() {
        let strip = |s: String| -> Value {
            let mut v: Value = serde_json::from_str(&s).unwrap();
            v.as_object_mut().unwrap().remove("timing_ms");
            v
        };
        let a = strip(run(["solweights", "--json", "defect-zero", "--group", "S5"]).1);
        let b = strip(run(["solweights", "--json", "--threads", "2", "defect-zero", "--group", "S5"]).1);
        assert_eq!(a, b);
        assert_eq!(a["results"]["count"], 0);
    }
}
