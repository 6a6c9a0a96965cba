//! Command-line front end.
//!
//! Exit codes: 0 success (or the checked property holds), 2 a condition fails
//! or a violation was found, 1 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::certificate::certify;
use crate::conditions::{
    critical_weight, extended_conditions, holland_condition, nanjundiah_condition,
};
use crate::functionals::{popoviciu_profile, rado_profile, ratio_form_lhs};
use crate::means::{mixed_mean, partial_mean_sequence, Exponent, SampleVector, WeightSequence};
use crate::search::{
    rado_orientation, violation_search, weight_scan, write_scan_csv, SearchConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAILS: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mixmean",
    version,
    about = "Mixed arithmetic-geometric mean inequality toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print running and mixed means.
    Means {
        weights: PathBuf,
        samples: PathBuf,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s: f64,
    },
    /// Evaluate every weight condition.
    Check { weights: PathBuf },
    /// Certify the inequality for a weight sequence.
    Certify {
        weights: PathBuf,
        /// Lattice points per axis (automatic when omitted).
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Rado and Popoviciu increments for k = 2..n.
    Verify {
        weights: PathBuf,
        samples: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s: f64,
    },
    /// Multistart search for data violating the inequality.
    Search {
        weights: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        local_steps: usize,
    },
    /// Sweep the last weight and emit CSV.
    Scan {
        head: PathBuf,
        /// LO:HI
        #[arg(long)]
        range: String,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Critical last weight W_{n-1}^2 / S_{n-2} for a head sequence.
    GenWeights { head: PathBuf },
}

#[derive(Debug, Deserialize)]
struct WeightsFile {
    w: Vec<f64>,
}

#[derive(Debug, Deserialize)]
struct SamplesFile {
    x: Vec<f64>,
}

type CliResult = std::result::Result<i32, String>;

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> std::result::Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_weights(path: &Path) -> std::result::Result<WeightSequence, String> {
    let file: WeightsFile = read_json(path)?;
    WeightSequence::new(file.w).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_samples(path: &Path) -> std::result::Result<SampleVector, String> {
    let file: SamplesFile = read_json(path)?;
    SampleVector::new(file.x).map_err(|e| format!("{}: {e}", path.display()))
}

fn exponent(v: f64) -> std::result::Result<Exponent, String> {
    Exponent::new(v).map_err(|e| e.to_string())
}

/// `v` rounded to `digits` significant digits, printed without trailing noise.
pub fn format_significant(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), v)
        .parse()
        .unwrap_or(v);
    rounded.to_string()
}

fn emit_json<T: Serialize, W: Write>(out: &mut W, value: &T) -> std::result::Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    writeln!(out, "{text}").map_err(|e| e.to_string())
}

fn parse_range(text: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("range must look like LO:HI, got {text:?}"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {lo:?}"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {hi:?}"))?;
    Ok((lo, hi))
}

#[derive(Serialize)]
struct MeansOutput {
    r: f64,
    s: f64,
    partial_r: Vec<f64>,
    partial_s: Vec<f64>,
    mixed_s_of_r: f64,
    mixed_r_of_s: f64,
}

#[derive(Serialize)]
struct LevelIncrement {
    k: usize,
    rado: f64,
    popoviciu: f64,
}

#[derive(Serialize)]
struct VerifyOutput {
    s: f64,
    increments: Vec<LevelIncrement>,
    ratio_form_lhs: Option<f64>,
    holds: bool,
}

#[derive(Serialize)]
struct CheckOutput {
    reports: Vec<crate::conditions::ConditionReport>,
    established: bool,
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> CliResult {
    match command {
        Command::Means {
            weights,
            samples,
            r,
            s,
        } => {
            let w = load_weights(&weights)?;
            let x = load_samples(&samples)?;
            let (re, se) = (exponent(r)?, exponent(s)?);
            let err = |e: crate::Error| e.to_string();
            let output = MeansOutput {
                r,
                s,
                partial_r: partial_mean_sequence(&w, &x, re).map_err(err)?.values,
                partial_s: partial_mean_sequence(&w, &x, se).map_err(err)?.values,
                mixed_s_of_r: mixed_mean(&w, &x, se, re).map_err(err)?,
                mixed_r_of_s: mixed_mean(&w, &x, re, se).map_err(err)?,
            };
            emit_json(out, &output)?;
            Ok(EXIT_OK)
        }
        Command::Check { weights } => {
            let w = load_weights(&weights)?;
            if w.len() < 2 {
                return Err("check needs at least two weights".into());
            }
            let err = |e: crate::Error| e.to_string();
            let mut reports = vec![
                nanjundiah_condition(&w).map_err(err)?,
                holland_condition(&w).map_err(err)?,
            ];
            if w.len() >= 3 {
                reports.push(extended_conditions(&w).map_err(err)?);
            }
            let established = reports.iter().any(|r| r.holds);
            emit_json(
                out,
                &CheckOutput {
                    reports,
                    established,
                },
            )?;
            Ok(if established { EXIT_OK } else { EXIT_FAILS })
        }
        Command::Certify {
            weights,
            resolution,
        } => {
            let w = load_weights(&weights)?;
            if resolution.is_some_and(|r| r < 2) {
                return Err("--resolution must be at least 2".into());
            }
            let cert =
                certify(&w, resolution, &SearchConfig::default()).map_err(|e| e.to_string())?;
            emit_json(out, &cert)?;
            Ok(if cert.holds() { EXIT_OK } else { EXIT_FAILS })
        }
        Command::Verify {
            weights,
            samples,
            s,
        } => {
            let w = load_weights(&weights)?;
            let x = load_samples(&samples)?;
            let se = exponent(s)?;
            if w.len() < 2 {
                return Err("verify needs n >= 2".into());
            }
            let err = |e: crate::Error| e.to_string();
            let rado = rado_profile(&w, &x, se).map_err(err)?;
            let pop = popoviciu_profile(&w, &x).map_err(err)?;
            let orientation = rado_orientation(se);
            let mut holds = true;
            let increments = (2..=w.len())
                .map(|k| {
                    let inc = rado[k - 1] - rado[k - 2];
                    let scale = rado[k - 1].abs().max(rado[k - 2].abs());
                    if orientation * inc < -1e-9 * (1.0 + scale) {
                        holds = false;
                    }
                    LevelIncrement {
                        k,
                        rado: inc,
                        popoviciu: pop[k - 1] - pop[k - 2],
                    }
                })
                .collect();
            let output = VerifyOutput {
                s,
                increments,
                ratio_form_lhs: ratio_form_lhs(&w, &x).ok(),
                holds,
            };
            emit_json(out, &output)?;
            Ok(if holds { EXIT_OK } else { EXIT_FAILS })
        }
        Command::Search {
            weights,
            s,
            trials,
            seed,
            local_steps,
        } => {
            let w = load_weights(&weights)?;
            let config = SearchConfig {
                seed,
                trials,
                local_steps,
                ..SearchConfig::default()
            };
            let result = violation_search(&w, exponent(s)?, &config).map_err(|e| e.to_string())?;
            emit_json(out, &result)?;
            Ok(if result.confirmed_violation {
                EXIT_FAILS
            } else {
                EXIT_OK
            })
        }
        Command::Scan {
            head,
            range,
            steps,
            resolution,
            seed,
        } => {
            let head = load_weights(&head)?;
            let range = parse_range(&range)?;
            let config = SearchConfig {
                seed,
                ..SearchConfig::default()
            };
            let rows =
                weight_scan(&head, range, steps, resolution, &config).map_err(|e| e.to_string())?;
            write_scan_csv(&rows, &mut *out).map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Command::GenWeights { head } => {
            let head = load_weights(&head)?;
            let value = critical_weight(&head).map_err(|e| e.to_string())?;
            writeln!(out, "{}", format_significant(value, 9)).map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let rendered = e.to_string();
                    let line = rendered.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{line}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {}", message.replace('\n', " "));
            EXIT_INPUT
        }
    }
}
