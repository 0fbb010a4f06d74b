//! Command-line front end.
//!
//! Exit codes: 0 on success or a passing verification, 1 on a failing
//! verification, 2 on usage errors (including exceeded guards).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{guard, Error};
use crate::partitions::{
    count_box_partitions, enumerate_plane_partitions_guarded, DEFAULT_ENUM_GUARD,
};
use crate::quotfixed::{fixed_locus_summary_guarded, quot_series_guarded, DEFAULT_QUOT_GUARD};
use crate::reflexive::ReflexiveParams;
use crate::series::{box_product, macmahon, TruncatedSeries};
use crate::verify::{
    verify_hilb_remark, verify_stanley, verify_thm_gky_guarded, verify_trivial_rank2,
    VerificationReport,
};

pub const DEFAULT_SERIES_ORDER_GUARD: usize = 2000;
pub const DEFAULT_BOX_COUNT_GUARD: usize = 24;

#[derive(Parser, Debug)]
#[command(
    name = "rank2-quot",
    version,
    about = "Euler characteristics of Quot schemes of rank-2 toric reflexive sheaves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form q-series.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Plane partition counts.
    #[command(subcommand)]
    Count(CountCmd),
    /// Fixed-locus Euler characteristics.
    #[command(subcommand)]
    Quot(QuotCmd),
    /// Compare independent computations.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Debug, Clone)]
struct BoxArg {
    /// Box dimensions v1 v2 v3.
    #[arg(long = "v", num_args = 3, value_names = ["V1", "V2", "V3"], required = true)]
    v: Vec<usize>,
}

impl BoxArg {
    fn params(&self) -> Result<ReflexiveParams, Error> {
        ReflexiveParams::new(self.v[0], self.v[1], self.v[2])
    }
}

#[derive(Subcommand, Debug)]
enum SeriesCmd {
    /// MacMahon function M(q).
    Macmahon {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_SERIES_ORDER_GUARD)]
        max_order: usize,
    },
    /// Box-confined plane partition polynomial.
    Boxgen {
        #[command(flatten)]
        v: BoxArg,
        /// Defaults to v1*v2*v3.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SERIES_ORDER_GUARD)]
        max_order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    /// Plane partitions of size N.
    Pp {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ENUM_GUARD)]
        max_n: usize,
    },
    /// Plane partitions of size N inside a box.
    Box {
        #[command(flatten)]
        v: BoxArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BOX_COUNT_GUARD)]
        max_n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum QuotCmd {
    /// e(Quot(R0, n)).
    Euler {
        #[command(flatten)]
        v: BoxArg,
        #[arg(long)]
        n: usize,
        /// List every stratum.
        #[arg(long)]
        strata: bool,
        #[arg(long, default_value_t = DEFAULT_QUOT_GUARD)]
        max_n: usize,
        /// Write the fixed-locus summary as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generating series of e(Quot(R0, n)).
    Series {
        #[command(flatten)]
        v: BoxArg,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_QUOT_GUARD)]
        max_n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Fixed-locus series against M(q)^2 times the box product.
    Gky {
        #[command(flatten)]
        v: BoxArg,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_QUOT_GUARD)]
        max_n: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Box counts: enumeration, transfer DP and product formula.
    Stanley {
        #[command(flatten)]
        v: BoxArg,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Monomial ideals of the fat point against box partitions.
    Hilb {
        #[command(flatten)]
        v: BoxArg,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Pairs of plane partitions against M(q)^2.
    Rank2free {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

enum Outcome {
    Ok,
    Failed,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn coeff_line(s: &TruncatedSeries) -> String {
    s.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn print_report(out: &mut dyn Write, r: &VerificationReport) -> std::io::Result<()> {
    writeln!(out, "claim   {}", r.claim)?;
    writeln!(out, "params  {}", r.params)?;
    writeln!(out, "{:>4}  {:>20}  {:>20}", "n", "lhs", "rhs")?;
    let rows = r.lhs.len().max(r.rhs.len());
    for n in 0..rows {
        let cell = |xs: &[num_bigint::BigInt]| xs.get(n).map_or("-".to_string(), |c| c.to_string());
        writeln!(out, "{:>4}  {:>20}  {:>20}", n, cell(&r.lhs), cell(&r.rhs))?;
    }
    for c in &r.side_checks {
        writeln!(
            out,
            "check   {} {}",
            c.name,
            if c.ok { "ok" } else { "FAILED" }
        )?;
    }
    if let Some(i) = r.first_mismatch {
        writeln!(out, "first mismatch at n = {i}")?;
    }
    writeln!(
        out,
        "status  {}  ({:.3} s)",
        if r.passed() { "PASS" } else { "FAIL" },
        r.wall_time_us as f64 / 1e6
    )
}

fn finish_report(
    out: &mut dyn Write,
    r: VerificationReport,
    json: Option<PathBuf>,
) -> Result<Outcome, CliError> {
    print_report(out, &r)?;
    if let Some(path) = json {
        write_json(&path, &r)?;
    }
    Ok(if r.passed() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Series(SeriesCmd::Macmahon { order, max_order }) => {
            guard("series order", order, max_order)?;
            writeln!(out, "{}", coeff_line(&macmahon(order)))?;
        }
        Command::Series(SeriesCmd::Boxgen {
            v,
            order,
            max_order,
        }) => {
            let v = v.params()?;
            let order = order.unwrap_or(v.volume());
            guard("series order", order, max_order)?;
            writeln!(out, "{}", coeff_line(&box_product(v, order)))?;
        }
        Command::Count(CountCmd::Pp { n, max_n }) => {
            writeln!(
                out,
                "{}",
                enumerate_plane_partitions_guarded(n, max_n)?.len()
            )?;
        }
        Command::Count(CountCmd::Box { v, n, max_n }) => {
            let v = v.params()?;
            // sizes past the volume are answered without enumerating
            if n <= v.volume() {
                guard("box partition size", n, max_n)?;
            }
            writeln!(out, "{}", count_box_partitions(v, n))?;
        }
        Command::Quot(QuotCmd::Euler {
            v,
            n,
            strata,
            max_n,
            json,
        }) => {
            let summary = fixed_locus_summary_guarded(v.params()?, n, max_n)?;
            if strata {
                for s in &summary.strata {
                    let cells: Vec<String> = s
                        .coprofile
                        .entries()
                        .map(|(w, c)| format!("{:?}:{}", w, c))
                        .collect();
                    let flag = if s.feasible { "" } else { "  (infeasible)" };
                    writeln!(out, "{:>3}  {}{}", s.euler, cells.join(" "), flag)?;
                }
                writeln!(out, "total {}", summary.total)?;
            } else {
                writeln!(out, "{}", summary.total)?;
            }
            if let Some(path) = json {
                write_json(&path, &summary)?;
            }
        }
        Command::Quot(QuotCmd::Series { v, order, max_n }) => {
            writeln!(
                out,
                "{}",
                coeff_line(&quot_series_guarded(v.params()?, order, max_n)?)
            )?;
        }
        Command::Verify(cmd) => {
            return match cmd {
                VerifyCmd::Gky {
                    v,
                    order,
                    max_n,
                    json,
                } => finish_report(
                    out,
                    verify_thm_gky_guarded(v.params()?, order, max_n)?,
                    json,
                ),
                VerifyCmd::Stanley { v, order, json } => {
                    finish_report(out, verify_stanley(v.params()?, order)?, json)
                }
                VerifyCmd::Hilb { v, json } => {
                    finish_report(out, verify_hilb_remark(v.params()?)?, json)
                }
                VerifyCmd::Rank2free { order, json } => {
                    finish_report(out, verify_trivial_rank2(order)?, json)
                }
            };
        }
    }
    Ok(Outcome::Ok)
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn cli_main<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match run(cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rank2-quot").chain(args.iter().copied());
        let code = cli_main(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn series_commands() {
        assert_eq!(
            run_args(&["series", "macmahon", "--order", "5"]),
            (0, "1 1 3 6 13 24\n".into(), String::new())
        );
        assert_eq!(
            run_args(&["series", "boxgen", "--v", "2", "1", "1"]).1,
            "1 1 1\n"
        );
        assert_eq!(
            run_args(&["series", "boxgen", "--v", "1", "1", "1", "--order", "3"]).1,
            "1 1 0 0\n"
        );
    }

    #[test]
    fn count_commands() {
        assert_eq!(
            run_args(&["count", "box", "--v", "1", "1", "1", "--n", "2"]).1,
            "0\n"
        );
        assert_eq!(run_args(&["count", "pp", "6"]).1, "48\n");
        let (code, _, err) = run_args(&["count", "pp", "13"]);
        assert_eq!(code, 2);
        assert!(err.contains("exceeds guard"));
    }

    #[test]
    fn quot_commands() {
        assert_eq!(
            run_args(&["quot", "euler", "--v", "1", "1", "1", "--n", "1"]).1,
            "3\n"
        );
        assert_eq!(
            run_args(&["quot", "series", "--v", "1", "1", "1", "--order", "2"]).1,
            "1 3 9\n"
        );
        let (code, out, _) = run_args(&[
            "quot", "euler", "--v", "1", "1", "1", "--n", "1", "--strata",
        ]);
        assert_eq!(code, 0);
        assert!(out.ends_with("total 3\n"));
        assert_eq!(
            run_args(&["quot", "euler", "--v", "1", "1", "1", "--n", "6"]).0,
            2
        );
    }

    #[test]
    fn verify_commands() {
        let (code, out, _) = run_args(&["verify", "gky", "--v", "1", "1", "1", "--order", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS"));
        assert_eq!(run_args(&["verify", "stanley", "--v", "2", "2", "1"]).0, 0);
        assert_eq!(run_args(&["verify", "hilb", "--v", "1", "2", "1"]).0, 0);
        assert_eq!(run_args(&["verify", "rank2free", "--order", "4"]).0, 0);
    }

    #[test]
    fn json_output() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let p = path.to_str().unwrap();
        assert_eq!(
            run_args(&["verify", "rank2free", "--order", "3", "--json", p]).0,
            0
        );
        let r: VerificationReport =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.claim, "rank2free");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["series", "boxgen", "--v", "1", "1"]).0, 2);
        assert_eq!(run_args(&["series", "boxgen", "--v", "0", "1", "1"]).0, 2);
        assert_eq!(run_args(&["count", "pp", "-3"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }
}
