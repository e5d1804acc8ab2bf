mod config;
mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hurwitz_lab::cayley::cayley_dot_export;
use hurwitz_lab::hurwitz::{genus_degree_table, HurwitzVariant};
use hurwitz_lab::series::{
    fg_coefficients, hypergeometric_coefficients, radius_diagnostics, sg_coefficients,
    CoefficientSeries,
};
use hurwitz_lab::verify::{
    verify_closed_forms, verify_coxeter_exhaustive, verify_coxeter_random, verify_inequalities,
    verify_oracle, verify_orbits, verify_roundtrip, CheckReport,
};
use hurwitz_lab::weingarten::{evaluate, expansion};
use hurwitz_lab::{CycleType, Error, SizeGuards};

use crate::config::Knobs;
use crate::render::{csv, envelope, rational, write_out};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::GuardExceeded { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn arg_error(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    Monotone,
    Classical,
}

impl From<Variant> for HurwitzVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Monotone => HurwitzVariant::Monotone,
            Variant::Classical => HurwitzVariant::Classical,
        }
    }
}

/// Accepts either a plain bound ("5") or an inclusive range ("1..5");
/// the suites always sweep from their natural minimum, so only the
/// upper end matters.
fn parse_max(s: &str) -> Result<usize, String> {
    let upper = match s.split_once("..") {
        Some((lo, hi)) => {
            let lo: usize = lo.parse().map_err(|_| format!("bad range start {lo:?}"))?;
            let hi: usize = hi.parse().map_err(|_| format!("bad range end {hi:?}"))?;
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            hi
        }
        None => s.parse().map_err(|_| format!("not a count or range: {s:?}"))?,
    };
    Ok(upper)
}

fn parse_cycle_type(s: &str) -> Result<Vec<usize>, CliError> {
    let mut parts = Vec::new();
    for token in s.split(',') {
        let token = token.trim();
        let (base, count) = match token.split_once('^') {
            Some((b, e)) => (b, e),
            None => (token, "1"),
        };
        let base: usize = base
            .parse()
            .map_err(|_| arg_error(format!("bad cycle length {token:?}")))?;
        let count: usize = count
            .parse()
            .map_err(|_| arg_error(format!("bad multiplicity in {token:?}")))?;
        if base == 0 || count == 0 {
            return Err(arg_error(format!("cycle type token {token:?} is empty")));
        }
        parts.extend(std::iter::repeat_n(base, count));
    }
    Ok(parts)
}

#[derive(Parser)]
#[command(
    name = "hurwitz-lab",
    version,
    about = "Exact walk enumeration on symmetric groups: Hurwitz tables, verification \
             suites, series diagnostics, Weingarten expansions, Cayley graphs"
)]
struct Cli {
    /// Configuration file (JSON); HURWITZ_LAB_CONFIG is consulted when
    /// this flag is absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output to this path (atomically) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format (cayley always writes DOT).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Cap most computations at this degree (guard override).
    #[arg(long, global = true, value_parser = parse_max)]
    max_degree: Option<usize>,
    /// Cap the genus (guard override).
    #[arg(long, global = true, value_parser = parse_max)]
    max_genus: Option<usize>,
    /// Cap enumeration and orbit walk lengths (guard override).
    #[arg(long, global = true, value_parser = parse_max)]
    max_steps: Option<usize>,
    /// Acknowledge that a raised guard may make the run enormous.
    #[arg(long = "i-know-this-is-huge", global = true)]
    i_know_this_is_huge: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Double Hurwitz numbers over all cycle-type pairs of a degree.
    Hurwitz {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "monotone")]
        variant: Variant,
        /// Split each count by the number of distinct step colours.
        #[arg(long)]
        refined: bool,
    },
    /// Run a verification suite; exits 1 if any exact check fails.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Generating-function coefficients with optional radius diagnostics.
    Series {
        #[command(subcommand)]
        series: SeriesKind,
    },
    /// Weingarten expansion coefficients, optionally evaluated at N.
    Weingarten {
        #[arg(long)]
        degree: usize,
        /// Target cycle type, e.g. "2,1" or "1^3".
        #[arg(long = "type")]
        target_type: String,
        #[arg(long = "N")]
        n: Option<u64>,
        #[arg(long, default_value_t = 40)]
        rmax: usize,
    },
    /// Transposition Cayley graph in DOT form, edges labelled by colour.
    Cayley {
        #[arg(long)]
        degree: usize,
        /// Output path (overrides --output for this command).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Exact two-sided colour bounds per genus and degree.
    Inequalities {
        #[arg(long, default_value = "0..2", value_parser = parse_max)]
        genus: usize,
        #[arg(long, default_value = "1..5", value_parser = parse_max)]
        degree: usize,
    },
    /// Genus-zero closed forms against the dynamic program and
    /// enumeration.
    Closedforms {
        #[arg(long, default_value = "1..5", value_parser = parse_max)]
        degree: usize,
    },
    /// Sorting-action relations (and, exhaustively, orbit structure).
    Coxeter {
        /// Check every walk up to the bounds instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_parser = parse_max)]
        degree: Option<usize>,
        #[arg(long, value_parser = parse_max)]
        steps: Option<usize>,
        /// Sample count for the randomized run.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 24601)]
        seed: u64,
    },
    /// Loop encode/decode round trips and valid-pair counts.
    Roundtrip {
        #[arg(long, default_value = "1..4", value_parser = parse_max)]
        degree: usize,
        #[arg(long, default_value = "0..1", value_parser = parse_max)]
        genus: usize,
    },
    /// Dynamic program against full enumeration, all modes and flags.
    Oracle {
        #[arg(long, default_value = "1..4", value_parser = parse_max)]
        degree: usize,
        #[arg(long, default_value = "0..6", value_parser = parse_max)]
        steps: usize,
    },
}

#[derive(Subcommand)]
enum SeriesKind {
    /// Coefficients over all type pairs at fixed genus.
    Fg {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        dmax: usize,
        /// Append ratio and root radius diagnostics.
        #[arg(long)]
        diagnostics: bool,
    },
    /// Coefficients of the simple (identity-to-identity) series.
    Sg {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        dmax: usize,
        #[arg(long)]
        diagnostics: bool,
    },
    /// The Gauss hypergeometric reference series.
    Hypergeom {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        diagnostics: bool,
    },
}

struct Output {
    json: Option<serde_json::Value>,
    csv: Option<String>,
    dot: Option<String>,
    exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let config = config::load(cli.config.as_deref())?;
    let knobs = Knobs {
        max_degree: cli.max_degree,
        max_genus: cli.max_genus,
        max_steps: cli.max_steps,
    };
    let guards = config::effective_guards(&config, knobs, cli.i_know_this_is_huge)?;

    let config_format = match config.output_format.as_deref() {
        None => None,
        Some("json") => Some(Format::Json),
        Some("csv") => Some(Format::Csv),
        Some("dot") => Some(Format::Dot),
        Some(other) => {
            return Err(arg_error(format!("unknown output_format {other:?} in config")))
        }
    };
    let default_format = match cli.command {
        Command::Cayley { .. } => Format::Dot,
        _ => Format::Json,
    };
    let format = cli.format.or(config_format).unwrap_or(default_format);

    let mut out_path = cli.output.clone().or(config.output_path.clone());
    let command_name = match &cli.command {
        Command::Hurwitz { .. } => "hurwitz",
        Command::Verify { .. } => "verify",
        Command::Series { .. } => "series",
        Command::Weingarten { .. } => "weingarten",
        Command::Cayley { .. } => "cayley",
    };

    let output = match cli.command {
        Command::Hurwitz {
            genus,
            degree,
            variant,
            refined,
        } => cmd_hurwitz(genus, degree, variant.into(), refined, &guards)?,
        Command::Verify { suite } => cmd_verify(suite, &guards)?,
        Command::Series { series } => cmd_series(series, &guards)?,
        Command::Weingarten {
            degree,
            target_type,
            n,
            rmax,
        } => cmd_weingarten(degree, &target_type, n, rmax, &guards)?,
        Command::Cayley { degree, out } => {
            if let Some(out) = out {
                out_path = Some(out);
            }
            cmd_cayley(degree, &guards)?
        }
    };

    let body = match format {
        Format::Json => {
            let data = output.json.ok_or_else(|| {
                arg_error(format!("{command_name} has no json form; it writes dot"))
            })?;
            envelope(command_name, &guards, format.name(), data)
        }
        Format::Csv => output.csv.ok_or_else(|| {
            arg_error(format!("{command_name} has no csv form; use --format json"))
        })?,
        Format::Dot => output.dot.ok_or_else(|| {
            arg_error(format!("{command_name} has no dot form; use --format json"))
        })?,
    };
    write_out(out_path.as_deref(), &body)?;
    Ok(output.exit)
}

fn cmd_hurwitz(
    genus: usize,
    degree: usize,
    variant: HurwitzVariant,
    refined: bool,
    guards: &SizeGuards,
) -> Result<Output, CliError> {
    let table = genus_degree_table(genus, degree, variant, refined, guards)?;
    let mut cells = Vec::new();
    let mut rows = Vec::new();
    for ((alpha, beta), cell) in &table {
        let mut entry = json!({
            "alpha": alpha.to_string(),
            "beta": beta.to_string(),
            "total": cell.total.to_string(),
        });
        if let Some(by) = &cell.by_colour_count {
            let map: BTreeMap<String, String> = by
                .iter()
                .map(|(c, n)| (c.to_string(), n.to_string()))
                .collect();
            entry["by_colour_count"] = json!(map);
            for (c, n) in by {
                rows.push(vec![
                    alpha.to_string(),
                    beta.to_string(),
                    c.to_string(),
                    n.to_string(),
                ]);
            }
        } else {
            rows.push(vec![
                alpha.to_string(),
                beta.to_string(),
                cell.total.to_string(),
            ]);
        }
        cells.push(entry);
    }
    let variant_name = match variant {
        HurwitzVariant::Monotone => "monotone",
        HurwitzVariant::Classical => "classical",
    };
    let header = if refined {
        "alpha,beta,colours,count"
    } else {
        "alpha,beta,count"
    };
    Ok(Output {
        json: Some(json!({
            "genus": genus,
            "degree": degree,
            "variant": variant_name,
            "colour_refined": refined,
            "cells": cells,
        })),
        csv: Some(csv(header, rows)),
        dot: None,
        exit: 0,
    })
}

fn merge_reports(name: &str, reports: Vec<CheckReport>) -> CheckReport {
    let mut merged = CheckReport {
        suite: name.to_string(),
        checks: 0,
        failures: Vec::new(),
    };
    for rep in reports {
        merged.checks += rep.checks;
        merged.failures.extend(rep.failures);
    }
    merged
}

fn cmd_verify(suite: Suite, guards: &SizeGuards) -> Result<Output, CliError> {
    let (report, parameters) = match suite {
        Suite::Inequalities { genus, degree } => (
            verify_inequalities(genus, degree, guards)?,
            json!({"genus": genus, "degree": degree}),
        ),
        Suite::Closedforms { degree } => (
            verify_closed_forms(degree, guards)?,
            json!({"degree": degree}),
        ),
        Suite::Coxeter {
            exhaustive,
            degree,
            steps,
            samples,
            seed,
        } => {
            if exhaustive {
                let d = degree.unwrap_or(4);
                let r = steps.unwrap_or(5);
                let relations = verify_coxeter_exhaustive(d, r, guards)?;
                let orbits = verify_orbits(d, r, guards)?;
                (
                    merge_reports("coxeter-exhaustive", vec![relations, orbits]),
                    json!({"degree": d, "steps": r, "exhaustive": true}),
                )
            } else {
                let d = degree.unwrap_or(6);
                let r = steps.unwrap_or(8);
                (
                    verify_coxeter_random(samples, d, r, seed)?,
                    json!({
                        "degree": d,
                        "steps": r,
                        "exhaustive": false,
                        "samples": samples,
                        "seed": seed,
                    }),
                )
            }
        }
        Suite::Roundtrip { degree, genus } => (
            verify_roundtrip(degree, genus, guards)?,
            json!({"degree": degree, "genus": genus}),
        ),
        Suite::Oracle { degree, steps } => (
            verify_oracle(degree, steps, guards)?,
            json!({"degree": degree, "steps": steps}),
        ),
    };
    let exit = u8::from(!report.passed());
    Ok(Output {
        json: Some(json!({
            "suite": report.suite,
            "parameters": parameters,
            "checks": report.checks,
            "passed": report.passed(),
            "failures": report.failures,
        })),
        csv: None,
        dot: None,
        exit,
    })
}

fn series_output(
    series: CoefficientSeries,
    diagnostics: bool,
) -> Result<Output, CliError> {
    let diag = if diagnostics {
        let d = radius_diagnostics(&series)?;
        let ratios: Vec<serde_json::Value> = d
            .ratios
            .iter()
            .map(|(i, r)| json!({"index": i, "value": rational(r)}))
            .collect();
        let roots: Vec<serde_json::Value> = d
            .root_estimates
            .iter()
            .map(|(i, v)| json!({"index": i, "value": v}))
            .collect();
        json!({
            "ratios": ratios,
            "root_estimates": roots,
            "window_extrapolation": d.window_extrapolation,
        })
    } else {
        serde_json::Value::Null
    };
    let terms: Vec<String> = series.terms.iter().map(rational).collect();
    let rows = series
        .indexed_terms()
        .map(|(i, t)| vec![i.to_string(), rational(t)])
        .collect::<Vec<_>>();
    Ok(Output {
        json: Some(json!({
            "label": series.label,
            "first_index": series.first_index,
            "terms": terms,
            "diagnostics": diag,
        })),
        csv: Some(csv("index,term", rows)),
        dot: None,
        exit: 0,
    })
}

fn cmd_series(series: SeriesKind, guards: &SizeGuards) -> Result<Output, CliError> {
    match series {
        SeriesKind::Fg {
            genus,
            dmax,
            diagnostics,
        } => series_output(fg_coefficients(genus, dmax, guards)?, diagnostics),
        SeriesKind::Sg {
            genus,
            dmax,
            diagnostics,
        } => series_output(sg_coefficients(genus, dmax, guards)?, diagnostics),
        SeriesKind::Hypergeom { kmax, diagnostics } => {
            series_output(hypergeometric_coefficients(kmax), diagnostics)
        }
    }
}

fn cmd_weingarten(
    degree: usize,
    target_type: &str,
    n: Option<u64>,
    rmax: usize,
    guards: &SizeGuards,
) -> Result<Output, CliError> {
    let parts = parse_cycle_type(target_type)?;
    let ty = CycleType::from_parts(degree, parts)?;
    let exp = expansion(degree, &ty, rmax, guards)?;
    let evaluation = match n {
        None => serde_json::Value::Null,
        Some(n) => {
            let v = evaluate(&exp, n, rmax)?;
            json!({
                "n": n.to_string(),
                "partial_sum": rational(&v.partial_sum),
                "terms_used": v.terms_used,
                "tail_estimate": v.tail_estimate,
            })
        }
    };
    let coefficients: Vec<String> = exp.coefficients.iter().map(|w| w.to_string()).collect();
    let rows = coefficients
        .iter()
        .enumerate()
        .map(|(r, w)| vec![r.to_string(), w.clone()])
        .collect::<Vec<_>>();
    Ok(Output {
        json: Some(json!({
            "degree": degree,
            "target_type": ty.to_string(),
            "r_max": rmax,
            "coefficients": coefficients,
            "evaluation": evaluation,
        })),
        csv: Some(csv("r,coefficient", rows)),
        dot: None,
        exit: 0,
    })
}

fn cmd_cayley(degree: usize, guards: &SizeGuards) -> Result<Output, CliError> {
    let dot = cayley_dot_export(degree, guards)?;
    Ok(Output {
        json: None,
        csv: None,
        dot: Some(dot),
        exit: 0,
    })
}
