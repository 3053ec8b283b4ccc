//! Command-line front end for `lclass-core`.
//!
//! Every subcommand builds a [`Report`] and writes it as JSON or CSV.
//! Exit codes: 0 pass, 1 a checked property failed, 2 usage or input error.

pub mod scan;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lclass_core::charclass::{
    hirzebruch_series, lclass_ci, lclass_pn, signature_ci, signature_poly,
    signature_poly_reduced, CompleteIntersectionSpec,
};
use lclass_core::exactq::rational::to_text;
use lclass_core::hodge_oracle::{
    hodge_numbers_hypersurface, signature_genfun, signature_hodge_index,
};
use lclass_core::report::{Record, Report, Status};
use lclass_core::singularities::{
    bp_spectral_pairs, contribution, link_cohomology, sector_table, sigma_table, sigma_tilde,
    theorem3_report, ts_join, BpSpec, SpectralPairSet,
};
use serde_json::Value;

use crate::scan::{parse_range, ScanGrid, ScanMode, ScanOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "lclass", version, about = "Exact L-classes, signatures and singularity corrections")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for `scan` (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Append-only checkpoint file for `scan`.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    /// Progress on stderr.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct CiArgs {
    /// Complex dimension is 2m.
    #[arg(long)]
    m: u32,
    /// Comma-separated degrees, e.g. 6,5.
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of H(z) = sqrt(z)/tanh(sqrt(z)).
    Hseries {
        #[arg(long)]
        order: usize,
    },
    /// L-class of P^n.
    Lpn {
        #[arg(long)]
        n: u32,
    },
    /// L-class of a smooth complete intersection.
    Lci(CiArgs),
    /// Signature of a smooth complete intersection.
    Sig(CiArgs),
    /// Signature as a polynomial in r symbolic degrees.
    Sigpoly {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Divide by d1...dr.
        #[arg(long)]
        reduced: bool,
    },
    /// Primitive Hodge numbers of a smooth hypersurface and the signature they give.
    Hodge {
        /// Hypersurface dimension.
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Signature of a hypersurface of dimension 2m from the generating function.
    Genfun {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u32,
    },
    /// Spectral pairs, sector table and link cohomology of one singularity.
    Spectrum(SingArg),
    /// Thom-Sebastiani join of two or more singularities.
    Join {
        /// Repeat for each factor.
        #[arg(long = "sing", required = true, num_args = 1)]
        sings: Vec<String>,
    },
    /// Signatures of the primitive graded pieces, per weight.
    Sigmas(SingArg),
    /// Reduced modified Hodge signature.
    Sigmatilde(SingArg),
    /// Degree-zero L-class corrections of a singular hypersurface.
    ///
    /// Whether a degree-d hypersurface with these singularities exists is not
    /// checked.
    T3 {
        /// Hypersurface dimension.
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        /// Repeat for each singular point.
        #[arg(long = "sing", num_args = 1)]
        sings: Vec<String>,
    },
    /// Parallel grid scan with optional checkpointing.
    Scan {
        #[arg(long)]
        mode: ScanMode,
        /// Range of m, e.g. 1..12.
        #[arg(long = "m")]
        m_range: String,
        /// One range per degree slot, e.g. --d 6 --d 1..5.
        #[arg(long = "d", num_args = 1)]
        degree_ranges: Vec<String>,
    },
}

/// A singularity: Brieskorn-Pham exponents (`2,2,2`), `smooth` (needs `--n`),
/// or a path to a spectral pair JSON file.
#[derive(Debug, Args)]
struct SingArg {
    #[arg(long)]
    sing: String,
    /// Germ dimension for `smooth`.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn load_sing(token: &str, n: Option<u32>) -> Result<SpectralPairSet, CliError> {
    if token == "smooth" {
        let n = n.ok_or_else(|| CliError::Input("`smooth` needs a dimension".into()))?;
        return Ok(SpectralPairSet::empty(n));
    }
    if !token.is_empty() && token.chars().all(|c| c.is_ascii_digit() || c == ',') {
        let exps = token
            .split(',')
            .map(|s| s.parse::<u32>().map_err(input))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(bp_spectral_pairs(&BpSpec::new(exps).map_err(input)?));
    }
    let text = fs::read_to_string(token)
        .map_err(|e| CliError::Input(format!("cannot read {token}: {e}")))?;
    SpectralPairSet::from_json(&text).map_err(|e| CliError::Input(format!("{token}: {e}")))
}

fn ci_spec(args: &CiArgs) -> Result<CompleteIntersectionSpec, CliError> {
    CompleteIntersectionSpec::new(args.m, args.degrees.clone()).map_err(input)
}

fn ci_inputs(spec: &CompleteIntersectionSpec) -> Record {
    Record::new().with("m", spec.m).with("degrees", spec.degrees.clone())
}

fn coefficient_rows(report: &mut Report, index: &str, values: &[String]) {
    for (j, v) in values.iter().enumerate() {
        report
            .results
            .push(Record::new().with(index, j).with("coefficient", v.as_str()));
    }
}

fn pairs_rows(report: &mut Report, set: &SpectralPairSet) {
    for p in set.pairs() {
        report.results.push(
            Record::new()
                .with("alpha", to_text(&p.alpha))
                .with("weight", p.weight)
                .with("mult", p.mult),
        );
    }
    report.summary.push("n", set.dim());
    report.summary.push("milnor_number", set.milnor_number());
}

fn execute(cli: &Cli, progress: &mut (dyn Write + Send)) -> Result<Report, CliError> {
    let report = match &cli.command {
        Command::Hseries { order } => {
            let mut r = Report::new("hseries", Record::new().with("order", *order));
            coefficient_rows(&mut r, "k", &hirzebruch_series(*order).to_text());
            r
        }
        Command::Lpn { n } => {
            let mut r = Report::new("lpn", Record::new().with("n", *n));
            coefficient_rows(&mut r, "j", &lclass_pn(*n).to_text());
            r
        }
        Command::Lci(args) => {
            let spec = ci_spec(args)?;
            let mut r = Report::new("lci", ci_inputs(&spec));
            coefficient_rows(&mut r, "j", &lclass_ci(&spec).to_text());
            r
        }
        Command::Sig(args) => {
            let spec = ci_spec(args)?;
            let sig = signature_ci(&spec).map_err(input)?;
            let mut r = Report::new("sig", ci_inputs(&spec));
            r.results.push(Record::new().with("signature", sig.to_string()));
            r
        }
        Command::Sigpoly { m, r: arity, reduced } => {
            let p = if *reduced {
                signature_poly_reduced(*m, *arity)
            } else {
                signature_poly(*m, *arity)
            }
            .map_err(input)?;
            let mut r = Report::new(
                "sigpoly",
                Record::new().with("m", *m).with("r", *arity).with("reduced", *reduced),
            );
            for (mono, c) in p.terms().rev() {
                r.results.push(
                    Record::new()
                        .with("exponents", mono.exponents().to_vec())
                        .with("coefficient", to_text(c)),
                );
            }
            r.summary.push("polynomial", p.to_string());
            r
        }
        Command::Hodge { n, d } => {
            if *d == 0 {
                return Err(CliError::Input("degree must be positive".into()));
            }
            let h = hodge_numbers_hypersurface(*n, *d);
            let mut r = Report::new("hodge", Record::new().with("n", *n).with("d", *d));
            for (q, v) in h.primitive.iter().enumerate() {
                r.results.push(
                    Record::new()
                        .with("p", (*n as usize - q) as u64)
                        .with("q", q)
                        .with("primitive", v.to_string()),
                );
            }
            if n % 2 == 0 {
                r.summary
                    .push("signature", signature_hodge_index(n / 2, *d).to_string());
            }
            r
        }
        Command::Genfun { m, d } => {
            if *d == 0 {
                return Err(CliError::Input("degree must be positive".into()));
            }
            let mut r = Report::new("genfun", Record::new().with("m", *m).with("d", *d));
            r.results
                .push(Record::new().with("signature", signature_genfun(*m, *d).to_string()));
            r
        }
        Command::Spectrum(arg) => {
            let set = load_sing(&arg.sing, arg.n)?;
            let mut r = Report::new("spectrum", Record::new().with("sing", arg.sing.as_str()));
            pairs_rows(&mut r, &set);
            let table = sector_table(&set);
            let level_rows = |t: &std::collections::BTreeMap<(i64, i64), i64>| -> Vec<Value> {
                t.iter()
                    .map(|(&(p, w), &v)| serde_json::json!({"p": p, "w": w, "dim": v}))
                    .collect()
            };
            r.summary.push("unipotent", level_rows(&table.unipotent));
            r.summary.push("nonunipotent", level_rows(&table.nonunipotent));
            r.summary
                .push("primitive_unipotent", level_rows(&table.primitive_unipotent));
            r.summary
                .push("primitive_nonunipotent", level_rows(&table.primitive_nonunipotent));
            let link: Vec<Value> = link_cohomology(&table)
                .iter()
                .flat_map(|(w, levels)| {
                    levels
                        .iter()
                        .map(move |(p, v)| serde_json::json!({"w": w, "p": p, "dim": v}))
                })
                .collect();
            r.summary.push("link_cohomology", link);
            r
        }
        Command::Join { sings } => {
            if sings.len() < 2 {
                return Err(CliError::Input("join needs at least two --sing".into()));
            }
            let sets = sings
                .iter()
                .map(|s| load_sing(s, None))
                .collect::<Result<Vec<_>, _>>()?;
            let joined = sets[1..].iter().try_fold(sets[0].clone(), |acc, s| {
                ts_join(&acc, s).map_err(input)
            })?;
            let mut r = Report::new("join", Record::new().with("sings", sings.clone()));
            pairs_rows(&mut r, &joined);
            r
        }
        Command::Sigmas(arg) => {
            let set = load_sing(&arg.sing, arg.n)?;
            let sigmas = sigma_table(&sector_table(&set));
            let mut r = Report::new("sigmas", Record::new().with("sing", arg.sing.as_str()));
            for (j, (s1, sne1)) in sigmas.entries() {
                r.results.push(
                    Record::new()
                        .with("j", j)
                        .with("sigma_1", s1)
                        .with("sigma_ne1", sne1),
                );
            }
            r
        }
        Command::Sigmatilde(arg) => {
            let set = load_sing(&arg.sing, arg.n)?;
            let c = contribution(&set);
            let mut r = Report::new("sigmatilde", Record::new().with("sing", arg.sing.as_str()));
            r.results.push(
                Record::new()
                    .with("n", set.dim())
                    .with("sigma_tilde", sigma_tilde(&sector_table(&set)))
                    .with("constant_minus_ic", c.constant_minus_ic),
            );
            r
        }
        Command::T3 { n, d, sings } => {
            let sets = sings
                .iter()
                .map(|s| load_sing(s, Some(*n)))
                .collect::<Result<Vec<_>, _>>()?;
            let t = theorem3_report(*n, *d, &sets).map_err(input)?;
            let mut r = Report::new(
                "t3",
                Record::new()
                    .with("n", *n)
                    .with("d", *d)
                    .with("sings", sings.clone()),
            );
            for (s, c) in sings.iter().zip(&t.singularities) {
                r.results.push(
                    Record::new()
                        .with("sing", s.as_str())
                        .with("milnor_number", c.milnor_number)
                        .with("sigma_tilde", c.sigma_tilde)
                        .with("constant_minus_ic", c.constant_minus_ic)
                        .with("smooth_minus_constant", c.smooth_minus_constant)
                        .with("smooth_minus_ic", c.smooth_minus_ic),
                );
            }
            r.summary.push("l0_smooth", to_text(&t.l0_smooth));
            r.summary.push("l0_constant", to_text(&t.l0_constant));
            r.summary.push("l0_ic", to_text(&t.l0_ic));
            r.summary.push("constant_minus_ic", t.constant_minus_ic);
            r.summary.push("smooth_minus_constant", t.smooth_minus_constant);
            r.summary.push("smooth_minus_ic", t.smooth_minus_ic);
            r.summary.push("sigma_tilde_total", t.sigma_tilde_total);
            let higher: serde_json::Map<String, Value> = t
                .higher
                .iter()
                .map(|(j, v)| (j.to_string(), Value::from(to_text(v))))
                .collect();
            r.summary.push("higher", Value::Object(higher));
            if !t.identity_holds() {
                r.fail(
                    "identity",
                    format!(
                        "smooth_minus_ic={} != {} + {}",
                        t.smooth_minus_ic, t.smooth_minus_constant, t.constant_minus_ic
                    ),
                );
            }
            r
        }
        Command::Scan {
            mode,
            m_range,
            degree_ranges,
        } => {
            let m_range = parse_range(m_range).map_err(CliError::Input)?;
            let degree_ranges = degree_ranges
                .iter()
                .map(|s| parse_range(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::Input)?;
            let grid = ScanGrid::new(*mode, m_range, degree_ranges).map_err(input)?;
            let threads = cli.threads.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            let opts = ScanOptions {
                threads,
                checkpoint: cli.checkpoint.clone(),
                verbose: cli.verbose,
            };
            scan::scan(&grid, &opts, progress).map_err(|e| match e {
                scan::ScanError::Io(e) => CliError::Io(e),
                other => input(other),
            })?
        }
    };
    Ok(report)
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell_text).collect::<Vec<_>>().join(" "),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Header row from the first record, then one row per result.
pub fn to_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = report.results.first() {
        let header: Vec<&str> = first.fields().map(|(k, _)| k).collect();
        w.write_record(&header).expect("write to memory");
        for rec in &report.results {
            let row: Vec<String> = header
                .iter()
                .map(|k| rec.get(k).map(cell_text).unwrap_or_default())
                .collect();
            w.write_record(&row).expect("write to memory");
        }
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let report = match execute(&cli, err) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => to_csv(&report),
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &text),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return 2;
    }
    for f in &report.failures {
        let _ = writeln!(err, "FAIL {}: {}", f.cell, f.witness);
    }
    debug_assert!(report.status != Status::Error);
    report.status.exit_code()
}
