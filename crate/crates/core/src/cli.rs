//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code:
//! 0 when every checked case holds, 1 on a counterexample, 2 on any usage,
//! parse or evaluation error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::catalog::{self, catalog_list};
use crate::dsl::{self, Registry};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::kernel::{self, KernelIdentity, ThreeTermRelation};
use crate::report::VerificationReport;
use crate::scalar::Rational;
use crate::sequence::{make_sequence, Named, Sequence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "horadam",
    version,
    about = "Exact terms and identity checks for second-order recurrences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one term G_n.
    Eval {
        #[command(flatten)]
        seq: SeqSelector,
        #[arg(short = 'n', allow_negative_numbers = true)]
        n: i64,
    },
    /// Tabulate terms over an index range.
    Table {
        #[command(flatten)]
        seq: SeqSelector,
        /// All six named sequences.
        #[arg(long, conflicts_with_all = ["seq", "p", "q", "g0", "g1"])]
        all: bool,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check a generic identity over a grid.
    Verify {
        /// theorem1, corollary, lemma1, lemma2:V, lemma3:V, sum-ordinary:V or sum-binomial:V
        #[arg(long)]
        identity: String,
        /// First sequence: a name or "p,q,g0,g1".
        #[arg(long, default_value = "fibonacci", allow_hyphen_values = true)]
        g: String,
        /// Second sequence; defaults to the first.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
        /// Relation "f1,f2,a,b" for the lemmas; defaults to "p,q,1,2" of g.
        #[arg(long, allow_hyphen_values = true)]
        rel: Option<String>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// List or run named specializations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check an identity written in the DSL.
    Check {
        #[arg(
            long,
            conflicts_with = "file",
            required_unless_present = "file",
            allow_hyphen_values = true
        )]
        expr: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        report: ReportArgs,
    },
}

// Parsed once per process; boxing the big variant buys nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// One line per entry: id, tab, description.
    List,
    /// Verify one entry over a grid.
    Run {
        id: String,
        #[arg(long, allow_negative_numbers = true, requires = "h1")]
        h0: Option<Rational>,
        #[arg(long, allow_negative_numbers = true, requires = "h0")]
        h1: Option<Rational>,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Debug, Args)]
pub struct SeqSelector {
    /// fibonacci, lucas, pell, pell-lucas, jacobsthal or jacobsthal-lucas
    #[arg(long, conflicts_with_all = ["p", "q", "g0", "g1"])]
    pub seq: Option<String>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["q", "g0", "g1"])]
    pub p: Option<Rational>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["p", "g0", "g1"])]
    pub q: Option<Rational>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["p", "q", "g1"])]
    pub g0: Option<Rational>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["p", "q", "g0"])]
    pub g1: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// e.g. "n=-2..2,m=0..4;m<=n"
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl SeqSelector {
    fn resolve(&self) -> Result<Option<Sequence>> {
        if let Some(name) = &self.seq {
            return named(name).map(Some);
        }
        match (&self.p, &self.q, &self.g0, &self.g1) {
            (Some(p), Some(q), Some(g0), Some(g1)) => {
                Ok(Some(make_sequence(p.clone(), q.clone(), g0.clone(), g1.clone())?))
            }
            _ => Ok(None),
        }
    }
}

fn named(name: &str) -> Result<Sequence> {
    Named::from_id(name).map(Named::sequence).ok_or_else(|| {
        let ids = Named::ALL.map(Named::id);
        let hint = catalog::nearest(name, ids.iter().copied())
            .map(|s| format!(" (did you mean {s:?}?)"))
            .unwrap_or_default();
        Error::Usage(format!("unknown sequence {name:?}{hint}; known: {}", ids.join(", ")))
    })
}

/// A name or `p,q,g0,g1`.
fn sequence_arg(text: &str) -> Result<Sequence> {
    if !text.contains(',') {
        return named(text.trim());
    }
    let v = rationals(text, 4)?;
    make_sequence(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
}

fn rationals(text: &str, count: usize) -> Result<Vec<Rational>> {
    let v: Vec<Rational> = text.split(',').map(str::parse).collect::<Result<_>>()?;
    if v.len() != count {
        return Err(Error::Usage(format!(
            "expected {count} comma-separated values, got {text:?}"
        )));
    }
    Ok(v)
}

fn relation_arg(text: &str) -> Result<ThreeTermRelation> {
    let v = rationals(text, 4)?;
    let shift = |r: &Rational| {
        r.to_i64()
            .filter(|_| r.is_integer())
            .ok_or_else(|| Error::Usage(format!("relation shift {r} must be an integer")))
    };
    ThreeTermRelation::new(v[0].clone(), v[1].clone(), shift(&v[2])?, shift(&v[3])?)
}

fn parse_grid(text: Option<&str>) -> Result<Option<GridSpec>> {
    text.map(GridSpec::parse).transpose()
}

fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    }
}

fn report_exit(report: &VerificationReport) -> i32 {
    if report.holds() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    }
}

fn table(seqs: &[(String, Sequence)], from: i64, to: i64, format: Format) -> Result<String> {
    if from > to {
        return Err(Error::EmptyRange { lo: from, hi: to });
    }
    let cols: Vec<Vec<Rational>> = seqs
        .iter()
        .map(|(_, s)| s.term_range(from, to))
        .collect::<Result<_>>()?;
    let rows = (to - from + 1) as usize;
    let cell = |c: usize, r: usize| cols[c][r].to_string();
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("n");
            for (name, _) in seqs {
                out.push(',');
                out.push_str(name);
            }
            out.push('\n');
            for r in 0..rows {
                out.push_str(&(from + r as i64).to_string());
                for c in 0..seqs.len() {
                    out.push(',');
                    out.push_str(&cell(c, r));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = (0..rows)
                .map(|r| {
                    let mut obj = Map::new();
                    obj.insert("n".into(), json!(from + r as i64));
                    for (c, (name, _)) in seqs.iter().enumerate() {
                        obj.insert(name.clone(), json!(cell(c, r)));
                    }
                    Value::Object(obj)
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("table serializes") + "\n"
        }
        Format::Text => {
            let mut grid: Vec<Vec<String>> = vec![std::iter::once("n".to_string())
                .chain(seqs.iter().map(|(n, _)| n.clone()))
                .collect()];
            for r in 0..rows {
                grid.push(
                    std::iter::once((from + r as i64).to_string())
                        .chain((0..seqs.len()).map(|c| cell(c, r)))
                        .collect(),
                );
            }
            let widths: Vec<usize> = (0..=seqs.len())
                .map(|c| grid.iter().map(|row| row[c].len()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            for row in grid {
                let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
    })
}

/// Output text and exit code of one command.
fn execute(cmd: &Command) -> Result<(String, i32, Option<&PathBuf>)> {
    match cmd {
        Command::Eval { seq, n } => {
            let s = seq
                .resolve()?
                .ok_or_else(|| Error::Usage("give --seq NAME or all of --p --q --g0 --g1".into()))?;
            Ok((format!("{}\n", s.term(*n)), EXIT_OK, None))
        }
        Command::Table {
            seq,
            all,
            from,
            to,
            format,
            out,
        } => {
            let seqs: Vec<(String, Sequence)> = if *all {
                Named::ALL.iter().map(|n| (n.id().to_string(), n.sequence())).collect()
            } else {
                let label = seq.seq.clone().unwrap_or_else(|| "G".to_string());
                let s = seq
                    .resolve()?
                    .ok_or_else(|| Error::Usage("give --all, --seq NAME or all of --p --q --g0 --g1".into()))?;
                vec![(label, s)]
            };
            Ok((table(&seqs, *from, *to, *format)?, EXIT_OK, out.output.as_ref()))
        }
        Command::Verify {
            identity,
            g,
            h,
            rel,
            report,
        } => {
            let id: KernelIdentity = identity.parse()?;
            let g = sequence_arg(g)?;
            let h = match h {
                Some(h) => sequence_arg(h)?,
                None => g.clone(),
            };
            let rel = rel.as_deref().map(relation_arg).transpose()?;
            let grid = match parse_grid(report.grid.as_deref())? {
                Some(grid) => grid.filled_from(&id.default_grid()),
                None => id.default_grid(),
            };
            let r = kernel::sweep(id, &g, &h, rel.as_ref(), &grid)?;
            Ok((
                render_report(&r, report.format),
                report_exit(&r),
                report.out.output.as_ref(),
            ))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let mut out = String::new();
                for e in catalog_list() {
                    out.push_str(&format!("{}\t{}\n", e.id, e.description));
                }
                Ok((out, EXIT_OK, None))
            }
            CatalogAction::Run { id, h0, h1, report } => {
                let grid = parse_grid(report.grid.as_deref())?;
                let initials = h0.clone().zip(h1.clone());
                let r = catalog::catalog_run(id, grid.as_ref(), initials)?;
                Ok((
                    render_report(&r, report.format),
                    report_exit(&r),
                    report.out.output.as_ref(),
                ))
            }
        },
        Command::Check { expr, file, report } => {
            let text = match (expr, file) {
                (Some(e), _) => e.clone(),
                (None, Some(path)) => fs::read_to_string(path)
                    .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?,
                (None, None) => return Err(Error::Usage("give --expr or --file".into())),
            };
            let ast = dsl::parse_identity(&text)?;
            let grid = parse_grid(report.grid.as_deref())?.unwrap_or_default();
            let r = dsl::verify_over_grid(&ast, &grid, &Registry::default())?;
            Ok((
                render_report(&r, report.format),
                report_exit(&r),
                report.out.output.as_ref(),
            ))
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok((text, code, path)) => {
            let written = match path {
                Some(p) => fs::write(p, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["horadam"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            run_args(&["eval", "--seq", "fibonacci", "-n", "8"]),
            (0, "21\n".into(), String::new())
        );
        assert_eq!(
            run_args(&["eval", "--p", "1", "--q", "2", "--g0", "0", "--g1", "1", "-n", "-5"]).1,
            "11/32\n"
        );
        assert_eq!(run_args(&["eval", "--seq", "fibonacci", "-n", "0"]).1, "0\n");
    }

    #[test]
    fn eval_errors() {
        assert_eq!(
            run_args(&["eval", "--p", "1", "--q", "0", "--g0", "0", "--g1", "1", "-n", "3"]).0,
            2
        );
        assert_eq!(run_args(&["eval", "--seq", "fibonaci", "-n", "3"]).0, 2);
        assert_eq!(run_args(&["eval", "-n", "3"]).0, 2);
        assert_eq!(
            run_args(&["eval", "--p", "1.5", "--q", "1", "--g0", "0", "--g1", "1", "-n", "3"]).0,
            2
        );
        assert_eq!(run_args(&["eval", "--seq", "lucas", "--p", "1", "-n", "3"]).0, 2);
    }

    #[test]
    fn table_examples() {
        assert_eq!(
            run_args(&["table", "--seq", "lucas", "--from", "0", "--to", "0"]).1,
            "n,lucas\n0,2\n"
        );
        assert_eq!(
            run_args(&["table", "--seq", "jacobsthal-lucas", "--from", "-4", "--to", "-4"]).1,
            "n,jacobsthal-lucas\n-4,17/16\n"
        );
        let (code, out, _) = run_args(&["table", "--all", "--from", "-5", "--to", "8", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 15);
        assert_eq!(run_args(&["table", "--all", "--from", "3", "--to", "2"]).0, 2);
    }

    #[test]
    fn verify_and_check_codes() {
        let (code, out, _) = run_args(&[
            "verify",
            "--identity",
            "theorem1",
            "--g",
            "fibonacci",
            "--h",
            "lucas",
            "--grid",
            "n=-2..2,m=-2..2,a=0..1,b=0..1,c=0..1,d=0..1",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["cases_total"], 400);
        assert_eq!(run_args(&["verify", "--identity", "nosuch"]).0, 2);
        let (code, _, err) = run_args(&["check", "--expr", "F[n"]);
        assert_eq!(code, 2);
        assert!(err.contains("column 4"), "{err}");
        assert_eq!(run_args(&["check", "--expr", "F[n+1]=F[n]", "--grid", "n=0..3"]).0, 1);
    }

    #[test]
    fn catalog_codes() {
        let (code, out, _) = run_args(&["catalog", "list"]);
        assert_eq!(code, 0);
        assert!(out.lines().count() >= 40);
        assert!(out.lines().all(|l| l.split('\t').count() == 2));
        assert_eq!(
            run_args(&["catalog", "run", "fib.catalan", "--grid", "n=0..8,m=0..8"]).0,
            0
        );
        let (code, _, err) = run_args(&["catalog", "run", "fib.catalna"]);
        assert_eq!(code, 2);
        assert!(err.contains("did you mean"), "{err}");
        assert_eq!(
            run_args(&[
                "catalog",
                "run",
                "fib.vajda8",
                "--h0",
                "3",
                "--h1",
                "-5",
                "--grid",
                "n=0..2,m=1"
            ])
            .0,
            0
        );
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("catalog"));
    }
}
