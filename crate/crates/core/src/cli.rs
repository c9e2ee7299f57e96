//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit status: 0 ok, 1 verification
//! mismatch, 2 usage or parse error, 3 capacity.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certify::{certify_labeled, replay_against_solver, DEFAULT_BOUND};
use crate::closed_forms::ClosedForms;
use crate::error::CsgError;
use crate::graph::Graph;
use crate::harness::{default_suite, run_suite};
use crate::notation::{FamilySpec, GraphSpec};
use crate::periodicity::{appended_sequence, detect_period};
use crate::solver::{GraphSolver, GrundyValue, StarSolver};
use crate::star::SubdividedStar;
use crate::subtraction::SubtractionSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// `S(1^t, k)`: rows `k`, columns `t`.
    #[value(name = "S1tk")]
    S1tk,
    /// `S(1, k, ℓ)`: rows `k`, columns `ℓ`.
    #[value(name = "S1kl")]
    S1kl,
}

#[derive(Debug, Parser)]
#[command(name = "csg", version, about = "Connected subtraction games on graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grundy value and outcome of a graph.
    Solve {
        /// Graph, e.g. `sstar:1,1,1,2` or `edges:0-1,1-2`.
        graph: String,
        /// Subtraction set: `1,2,4`, `I:4` or `I:8+20`.
        #[arg(long = "L", value_name = "SET")]
        l: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Report 0 ms so that output is reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Values of `G·u·k` for `k = 0..=kmax` and the detected period.
    Sequence {
        /// Family, e.g. `path`, `star:1^3` or `sstar:1,1@center`.
        family: String,
        #[arg(long = "L", value_name = "SET")]
        l: String,
        #[arg(long, default_value_t = 40)]
        kmax: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Certifies the period of a family and replays it against the solver.
    Certify {
        family: String,
        #[arg(long = "L", value_name = "SET")]
        l: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Tables of star values under `I_N`.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long = "N", value_name = "N")]
        n: usize,
        /// Largest row index `k`.
        #[arg(long)]
        kmax: Option<usize>,
        /// Largest column index (`t` or `ℓ`).
        #[arg(long)]
        cmax: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
    },
    /// Runs verification checks; `all` or no argument runs the default suite.
    Verify {
        ids: Vec<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        no_timing: bool,
        /// Lists check ids and exits.
        #[arg(long)]
        list: bool,
    },
}

fn exit_code(e: &CsgError) -> i32 {
    match e {
        CsgError::Capacity { .. } => EXIT_CAPACITY,
        CsgError::NoPeriod(_) | CsgError::SearchBound { .. } => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CsgError> {
    match command {
        Command::Solve {
            graph,
            l,
            format,
            no_timing,
        } => cmd_solve(&graph, &l, format, no_timing, out),
        Command::Sequence {
            family,
            l,
            kmax,
            format,
        } => cmd_sequence(&family, &l, kmax, format, out),
        Command::Certify { family, l, bound } => cmd_certify(&family, &l, bound, out),
        Command::Table {
            kind,
            n,
            kmax,
            cmax,
            format,
        } => cmd_table(kind, n, kmax, cmax, format, out),
        Command::Verify {
            ids,
            jobs,
            no_timing,
            list,
        } => cmd_verify(&ids, jobs, no_timing, list, out),
    }
}

fn io(e: std::io::Error) -> CsgError {
    CsgError::Precondition(format!("write failed: {e}"))
}

#[derive(Serialize)]
struct SolveJson<'a> {
    input: &'a str,
    #[serde(rename = "L")]
    l: String,
    grundy: u32,
    outcome: String,
    millis: u128,
}

/// Stars given in star notation skip realization, so they are not bound
/// by the vertex capacity.
fn star_of(spec: &GraphSpec) -> Option<SubdividedStar> {
    match spec {
        GraphSpec::Path(0) => None,
        GraphSpec::Path(k) => Some(SubdividedStar::path(*k)),
        GraphSpec::Star { len, count } => Some(SubdividedStar::new(vec![*len; *count])),
        GraphSpec::SStar(b) => Some(SubdividedStar::new(b.iter().copied())),
        _ => None,
    }
}

pub fn cmd_solve(
    graph: &str,
    l: &str,
    format: OutputFormat,
    no_timing: bool,
    out: &mut dyn Write,
) -> Result<i32, CsgError> {
    let spec: GraphSpec = graph.parse()?;
    let set: SubtractionSet = l.parse()?;
    let started = Instant::now();
    let value = match star_of(&spec) {
        Some(star) => StarSolver::new(set.clone()).grundy(&star),
        None => GraphSolver::new(spec.realize()?, set.clone()).grundy_whole(),
    };
    let millis = if no_timing {
        0
    } else {
        started.elapsed().as_millis()
    };
    let outcome = format!("{:?}", value.outcome());
    match format {
        OutputFormat::Json => {
            let json = SolveJson {
                input: graph,
                l: set.to_string(),
                grundy: value.0,
                outcome,
                millis,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&json).expect("serializable")
            )
            .map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "input,L,grundy,outcome,millis").map_err(io)?;
            writeln!(out, "\"{graph}\",\"{set}\",{},{outcome},{millis}", value.0).map_err(io)?;
        }
        OutputFormat::Text => {
            writeln!(
                out,
                "input {graph}\nL {set}\ngrundy {}\noutcome {outcome}\nmillis {millis}",
                value.0
            )
            .map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn family_inputs(family: &str) -> Result<(FamilySpec, Graph, Option<usize>), CsgError> {
    let spec: FamilySpec = family.parse()?;
    let base = spec.base_graph()?;
    let anchor = spec.anchor_index();
    Ok((spec, base, anchor))
}

#[derive(Serialize)]
struct SequenceJson<'a> {
    input: &'a str,
    #[serde(rename = "L")]
    l: String,
    values: Vec<u32>,
    sequence: Option<String>,
}

pub fn cmd_sequence(
    family: &str,
    l: &str,
    kmax: usize,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CsgError> {
    let (_, base, anchor) = family_inputs(family)?;
    let set: SubtractionSet = l.parse()?;
    let values = appended_sequence(&base, anchor, &set, kmax)?;
    let detected = detect_period(&values, set.max())
        .ok()
        .map(|p| p.sequence.to_string());
    match format {
        OutputFormat::Json => {
            let json = SequenceJson {
                input: family,
                l: set.to_string(),
                values: values.iter().map(|v| v.0).collect(),
                sequence: detected,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&json).expect("serializable")
            )
            .map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "k,grundy").map_err(io)?;
            for (k, v) in values.iter().enumerate() {
                writeln!(out, "{k},{v}").map_err(io)?;
            }
        }
        OutputFormat::Text => {
            let list: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            writeln!(out, "input {family}\nL {set}\nvalues {}", list.join(" ")).map_err(io)?;
            match detected {
                Some(s) => writeln!(out, "sequence {s} (empirical, {} terms)", values.len()),
                None => writeln!(out, "sequence none detected in {} terms", values.len()),
            }
            .map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_certify(
    family: &str,
    l: &str,
    bound: usize,
    out: &mut dyn Write,
) -> Result<i32, CsgError> {
    let (_, base, anchor) = family_inputs(family)?;
    let set: SubtractionSet = l.parse()?;
    let cert = certify_labeled(&base, anchor, &set, bound, Some(family.to_string()))?;
    write!(out, "{}", cert.to_text()).map_err(io)?;
    if !cert.check() {
        writeln!(out, "replay not periodic").map_err(io)?;
        return Ok(EXIT_MISMATCH);
    }
    match replay_against_solver(&cert) {
        Ok(None) => writeln!(out, "replay matches solver").map_err(io)?,
        Ok(Some(k)) => {
            writeln!(out, "replay differs from solver at k={k}").map_err(io)?;
            return Ok(EXIT_MISMATCH);
        }
        // Too large to solve directly; the certificate stands on its own.
        Err(CsgError::Capacity { .. }) => {
            writeln!(out, "replay not checked: capacity").map_err(io)?
        }
        Err(e) => return Err(e),
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TableJson {
    kind: &'static str,
    #[serde(rename = "N")]
    n: usize,
    row: &'static str,
    column: &'static str,
    rows: Vec<Vec<u32>>,
}

/// Values of the table, `rows[row][column]`.
pub fn table_values(
    kind: TableKind,
    n: usize,
    kmax: usize,
    cmax: usize,
) -> Result<Vec<Vec<GrundyValue>>, CsgError> {
    let cf = ClosedForms::new();
    (0..=kmax)
        .map(|k| {
            (0..=cmax)
                .map(|c| match kind {
                    TableKind::S1tk => cf.simple_star_appended_grundy(c, k, n),
                    TableKind::S1kl => cf.s1kl_grundy(k, c, n),
                })
                .collect()
        })
        .collect()
}

pub fn cmd_table(
    kind: TableKind,
    n: usize,
    kmax: Option<usize>,
    cmax: Option<usize>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CsgError> {
    if n == 0 {
        return Err(CsgError::Domain("N must be positive".into()));
    }
    let (name, col, kmax, cmax) = match kind {
        TableKind::S1tk => (
            "S1tk",
            "t",
            kmax.unwrap_or(2 * n),
            cmax.unwrap_or(2 * n + 2),
        ),
        TableKind::S1kl => ("S1kl", "l", kmax.unwrap_or(n - 1), cmax.unwrap_or(n - 1)),
    };
    let rows = table_values(kind, n, kmax, cmax)?;
    match format {
        OutputFormat::Json => {
            let json = TableJson {
                kind: name,
                n,
                row: "k",
                column: col,
                rows: rows
                    .iter()
                    .map(|r| r.iter().map(|v| v.0).collect())
                    .collect(),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&json).expect("serializable")
            )
            .map_err(io)?;
        }
        OutputFormat::Csv => {
            let header: Vec<String> = (0..=cmax).map(|c| format!("{col}{c}")).collect();
            writeln!(out, "k,{}", header.join(",")).map_err(io)?;
            for (k, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{k},{}", cells.join(",")).map_err(io)?;
            }
        }
        OutputFormat::Text => {
            let width = rows
                .iter()
                .flatten()
                .map(|v| v.to_string().len())
                .chain([cmax.to_string().len() + col.len(), kmax.to_string().len()])
                .max()
                .unwrap_or(1);
            let mut line = format!("{:>width$}", "k");
            for c in 0..=cmax {
                line.push_str(&format!(" {:>width$}", format!("{col}{c}")));
            }
            writeln!(out, "{line}").map_err(io)?;
            for (k, row) in rows.iter().enumerate() {
                let mut line = format!("{k:>width$}");
                for v in row {
                    line.push_str(&format!(" {:>width$}", v.to_string()));
                }
                writeln!(out, "{line}").map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(
    ids: &[String],
    jobs: usize,
    no_timing: bool,
    list: bool,
    out: &mut dyn Write,
) -> Result<i32, CsgError> {
    let suite = default_suite();
    if list {
        for (id, _) in &suite {
            writeln!(out, "{id}").map_err(io)?;
        }
        return Ok(EXIT_OK);
    }
    let all = ids.is_empty() || ids.iter().any(|i| i == "all");
    if let Some(bad) = ids
        .iter()
        .find(|i| *i != "all" && !suite.iter().any(|(id, _)| id == *i))
    {
        return Err(CsgError::Precondition(format!(
            "unknown check `{bad}`; see `verify --list`"
        )));
    }
    let selected: Vec<_> = suite
        .into_iter()
        .filter(|(id, _)| all || ids.iter().any(|i| i == id))
        .collect();
    let mut failed = false;
    for mut report in run_suite(&selected, jobs) {
        if no_timing {
            report.millis = 0;
        }
        failed |= !report.passed();
        writeln!(out, "{}", report.line()).map_err(io)?;
        for m in report.mismatches.iter().take(5) {
            writeln!(
                out,
                "  {}: expected {}, got {}",
                m.instance, m.expected, m.got
            )
            .map_err(io)?;
        }
    }
    Ok(if failed { EXIT_MISMATCH } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("csg").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn solve_json() {
        let (code, out, _) = call(&[
            "solve",
            "sstar:1,1,1,2",
            "--L",
            "1,2,4",
            "--format",
            "json",
            "--no-timing",
        ]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"input\":\"sstar:1,1,1,2\",\"L\":\"1,2,4\",\"grundy\":3,\"outcome\":\"N\",\"millis\":0}\n"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["solve", "path:07", "--L", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["solve", "path:3", "--L", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["solve", "append(path:60,u=0,k=10)", "--L", "1"]).0,
            EXIT_CAPACITY
        );
        assert_eq!(call(&["verify", "nope"]).0, EXIT_USAGE);
    }

    #[test]
    fn large_star_skips_capacity() {
        let (code, out, _) = call(&["solve", "sstar:40,40", "--L", "I:3", "--no-timing"]);
        assert_eq!(code, 0);
        assert!(out.contains("grundy 1\n"), "{out}");
    }
}
