//! Command-line front end for the Chevalley-basis toolkit.
//!
//! Three subcommands: `rootsys` dumps root-system data (optionally with
//! integral structure constants), `verify` runs a single named check,
//! and `grid` sweeps the structural suite over a cartesian product of
//! types and primes. All runs are seeded and replayable: reports record
//! the per-task seed derived from the global `--seed`.

mod checks;
mod report;
mod rootsys_json;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use report::{Format, Report};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "chevalley",
    version,
    about = "Chevalley bases over Z and F_p: construction and verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump a root system (components, Cartan matrix, roots, basis
    /// labels) as JSON or text.
    Rootsys {
        /// Type string such as A2, G2, or B2+G2.
        #[arg(long = "type")]
        type_string: String,
        /// Include the integral structure constants.
        #[arg(long)]
        constants: bool,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run one verification check and report pass/fail with a witness.
    Verify {
        /// Check id.
        check: CheckId,
        /// Root-system type, for the checks that need one.
        #[arg(long = "type")]
        type_string: Option<String>,
        /// Prime modulus.
        #[arg(long)]
        p: u64,
        /// Lattice scaling exponent; defaults to 2 for p = 2 and 1
        /// otherwise.
        #[arg(long)]
        t: Option<u32>,
        /// Number of variables / matrix size for the polynomial checks.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Frobenius twist offset.
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// Number of seeded samples.
        #[arg(long, default_value_t = 20)]
        trials: u32,
        /// Global seed; each task derives and records its own.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Unlock exceptional E types and ranks above 4.
        #[arg(long)]
        heavy: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the structural suite over a grid of types and primes.
    Grid {
        /// Comma-separated type strings; empty string for an empty
        /// grid.
        #[arg(long, default_value = "A1,A2,A3,B2,B3,C3,D4,G2")]
        types: String,
        /// Comma-separated primes; empty string for an empty grid.
        #[arg(long, default_value = "5,7,11")]
        primes: String,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        heavy: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Stable external ids for the verification checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckId {
    Lemma11,
    Cor12,
    Prop14,
    Lemma17,
    Prop22,
    Lemma31,
    Thm34,
    Lstar,
    Section4,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Rootsys {
            type_string,
            constants,
            out,
            format,
        } => {
            let rs = chevalley_core::rootsystem::RootSystem::parse(&type_string)
                .with_context(|| format!("bad --type {type_string}"))?;
            let dump = rootsys_json::dump(&rs, constants);
            let body = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&dump)?;
                    s.push('\n');
                    s
                }
                Format::Text => rootsys_json::to_text(&dump),
            };
            match out {
                Some(path) => std::fs::write(&path, body)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => std::io::stdout().write_all(body.as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            check,
            type_string,
            p,
            t,
            m,
            s,
            trials,
            seed,
            heavy,
            out,
            format,
        } => {
            let opts = checks::Options {
                seed,
                heavy,
                trials,
            };
            let ty = type_string.as_deref();
            let task = match check {
                CheckId::Lemma11 => checks::run_lemma11(p, m, opts),
                CheckId::Cor12 => checks::run_cor12(p, m, s, opts),
                CheckId::Prop14 => checks::run_prop14(p, m, s, opts),
                CheckId::Lemma17 => checks::run_lemma17(ty, p, opts),
                CheckId::Prop22 => checks::run_prop22(p, opts),
                CheckId::Lemma31 => checks::run_lemma31(ty, p, t, opts),
                CheckId::Thm34 => checks::run_thm34(ty, p, t, opts),
                CheckId::Lstar => checks::run_lstar(ty, p, t, opts),
                CheckId::Section4 => checks::run_section4(ty, p, opts),
            };
            let report = Report::new(vec![task]);
            report.write(out.as_deref(), format)?;
            Ok(exit_code(&report))
        }
        Cmd::Grid {
            types,
            primes,
            t,
            trials,
            seed,
            heavy,
            out,
            format,
        } => {
            let type_list = parse_type_list(&types);
            let prime_list = parse_prime_list(&primes)?;
            let opts = checks::Options {
                seed,
                heavy,
                trials,
            };
            let tasks = checks::run_grid(&type_list, &prime_list, t, opts);
            let report = Report::new(tasks);
            report.write(out.as_deref(), format)?;
            Ok(exit_code(&report))
        }
    }
}

fn exit_code(report: &Report) -> ExitCode {
    if report.exit_code() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn parse_type_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

fn parse_prime_list(s: &str) -> anyhow::Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().with_context(|| format!("bad prime {t}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn check_ids_parse_from_their_lowercase_names() {
        for (name, id) in [
            ("lemma11", CheckId::Lemma11),
            ("cor12", CheckId::Cor12),
            ("prop14", CheckId::Prop14),
            ("lemma17", CheckId::Lemma17),
            ("prop22", CheckId::Prop22),
            ("lemma31", CheckId::Lemma31),
            ("thm34", CheckId::Thm34),
            ("lstar", CheckId::Lstar),
            ("section4", CheckId::Section4),
        ] {
            let parsed = CheckId::from_str(name, false).unwrap();
            assert_eq!(parsed, id, "check id {name}");
        }
    }

    #[test]
    fn type_and_prime_lists_parse() {
        assert_eq!(parse_type_list("A1, B2 ,G2"), vec!["A1", "B2", "G2"]);
        assert!(parse_type_list("").is_empty());
        assert_eq!(parse_prime_list("5,7,11").unwrap(), vec![5, 7, 11]);
        assert!(parse_prime_list("").unwrap().is_empty());
        assert!(parse_prime_list("x").is_err());
    }
}
