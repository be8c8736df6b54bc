//! `spiked`: spectra, wavefunctions and table reproduction for the spiked
//! harmonic oscillator.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{ArgGroup, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spiked_core::eigen::det_spectrum;
use spiked_core::hmatrix::{self, hamiltonian, matrix_spectrum, LaguerreBasis, OverlapQuadrature};
use spiked_core::pps::{pps_spectrum, PpsConfig, DEFAULT_FIT_POINTS};
use spiked_core::reproduce;
use spiked_core::selfcheck;
use spiked_core::spectrum::EnergySpectrum;
use spiked_core::wavefn::{fig1_data, RadialGrid, FIG1_STATES};
use spiked_core::PhysicalParamsF64 as Params;

/// Significant digits written for every number.
const DIGITS: usize = 12;

#[derive(Parser)]
#[command(name = "spiked", version, about = "Bound states of the spiked harmonic oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy levels by curve crossing, Hamiltonian matrix or fixed-N determinant.
    Spectrum(SpectrumArgs),
    /// The six lowest radial wavefunctions on a grid.
    Fig1(Fig1Args),
    /// Recompute a published table and compare cell by cell.
    Reproduce(ReproduceArgs),
    /// Run the invariant suite.
    Check(CheckArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("strength").required(true).args(["a", "a2"])))]
struct PhysArgs {
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Singularity strength a.
    #[arg(long)]
    a: Option<f64>,
    /// a² instead of a.
    #[arg(long)]
    a2: Option<f64>,
    #[arg(long)]
    ell: u32,
}

impl PhysArgs {
    fn params(&self) -> Result<Params, String> {
        let r = match (self.a, self.a2) {
            (Some(a), _) => Params::new(self.omega, a, self.ell),
            (None, Some(a2)) => Params::from_a2(self.omega, a2, self.ell),
            (None, None) => unreachable!("clap enforces the group"),
        };
        r.map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Pps,
    Matrix,
    Det,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quadrature {
    /// Gauss rule of the basis weight (reproduces the published matrix table).
    Basis,
    /// Rule exact for the 1/r⁴ overlaps.
    Exact,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl OutputArgs {
    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        })
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = Method::Pps)]
    method: Method,
    #[command(flatten)]
    phys: PhysArgs,
    /// Upper end of the energy grid (pps). Default ω(ℓ+22).
    #[arg(long)]
    emax: Option<f64>,
    /// Lower end of the energy grid (pps). Default just above ω.
    #[arg(long)]
    emin: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_FIT_POINTS)]
    fit_points: usize,
    /// Basis dimension M (matrix).
    #[arg(long, default_value_t = hmatrix::DEFAULT_SIZE)]
    size: usize,
    /// Basis scale λ² (matrix). Default ω.
    #[arg(long)]
    lambda2: Option<f64>,
    #[arg(long, value_enum, default_value_t = Quadrature::Basis)]
    quadrature: Quadrature,
    /// Number of levels reported by the matrix method.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Fixed series length N (det).
    #[arg(long)]
    n: Option<usize>,
    /// Energy window for the determinant roots (det). Default [ω(ℓ+1), ω(ℓ+22)].
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    window: Option<Vec<f64>>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct Fig1Args {
    #[command(flatten)]
    phys: PhysArgs,
    #[arg(long)]
    emax: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_FIT_POINTS)]
    fit_points: usize,
    #[arg(long, default_value_t = 0.05)]
    r_min: f64,
    #[arg(long, default_value_t = 10.0)]
    r_max: f64,
    #[arg(long, default_value_t = 5000)]
    points: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Table number, 1 to 4.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    table: u8,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    out: OutputArgs,
}

/// Error split by exit status.
enum Failure {
    Usage(String),
    Compute(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<spiked_core::Error> for Failure {
    fn from(e: spiked_core::Error) -> Self {
        Failure::Compute(e.into())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Fig1(a) => cmd_fig1(a),
        Command::Reproduce(a) => cmd_reproduce(a),
        Command::Check(a) => cmd_check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => Cli::command().error(ErrorKind::ValueValidation, msg).exit(),
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// `v` with `DIGITS` significant digits in positional notation.
fn fmt_sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i64;
    let decimals = (DIGITS as i64 - 1 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

#[derive(Serialize)]
struct LevelRow {
    k: usize,
    #[serde(rename = "E")]
    energy: f64,
    #[serde(rename = "dE")]
    delta: f64,
}

#[derive(Serialize)]
struct SpectrumOut<'a> {
    method: &'a str,
    omega: f64,
    a: f64,
    ell: u32,
    levels: Vec<LevelRow>,
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<(), Failure> {
    let p = args.phys.params().map_err(Failure::Usage)?;
    let ell = p.ell as f64;
    let (name, spec): (&str, EnergySpectrum<f64>) = match args.method {
        Method::Pps => {
            let e_max = args.emax.unwrap_or(p.omega * (ell + 22.0));
            let mut cfg = PpsConfig::new(e_max, args.fit_points);
            if let Some(lo) = args.emin {
                cfg = cfg.with_e_min(lo);
            }
            ("pps", pps_spectrum(&p, &cfg)?.spectrum)
        }
        Method::Matrix => {
            let basis = LaguerreBasis::new(p.ell, args.lambda2.unwrap_or(p.omega), args.size)?;
            let quad = match args.quadrature {
                Quadrature::Basis => OverlapQuadrature::default(),
                Quadrature::Exact => OverlapQuadrature::ExactSingular,
            };
            ("matrix", matrix_spectrum(&hamiltonian(&p, &basis, quad)?, args.count)?)
        }
        Method::Det => {
            let n = args.n.ok_or_else(|| Failure::Usage("--method det needs --n".into()))?;
            let (lo, hi) = match args.window.as_deref() {
                Some([lo, hi]) => (*lo, *hi),
                _ => (p.omega * (ell + 1.0), p.omega * (ell + 22.0)),
            };
            ("det", det_spectrum(&p, n, lo, hi)?)
        }
    };
    let rows: Vec<LevelRow> = spec
        .levels
        .iter()
        .zip(&spec.deltas)
        .enumerate()
        .map(|(k, (&energy, &delta))| LevelRow { k, energy, delta })
        .collect();
    let mut w = args.out.writer()?;
    match args.out.format {
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record(["k", "E", "dE"]).context("write")?;
            for r in &rows {
                c.write_record([r.k.to_string(), fmt_sig(r.energy), fmt_sig(r.delta)]).context("write")?;
            }
            c.flush().context("write")?;
        }
        Format::Json => {
            let out = SpectrumOut { method: name, omega: p.omega, a: p.a, ell: p.ell, levels: rows };
            serde_json::to_writer_pretty(&mut w, &out).context("write")?;
            writeln!(w).context("write")?;
        }
    }
    w.flush().context("write")?;
    Ok(())
}

fn cmd_fig1(args: &Fig1Args) -> Result<(), Failure> {
    let p = args.phys.params().map_err(Failure::Usage)?;
    let grid = RadialGrid::new(args.r_min, args.r_max, args.points).map_err(|e| Failure::Usage(e.to_string()))?;
    let e_max = args.emax.unwrap_or(p.omega * (p.ell as f64 + 22.0));
    let cfg = PpsConfig::new(e_max, args.fit_points).with_e_min(p.omega * (p.ell as f64 + 1.0));
    let spec = pps_spectrum(&p, &cfg)?.spectrum;
    let data = fig1_data(&p, &spec, &grid)?;
    let mut w = args.out.writer()?;
    match args.out.format {
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            let mut header = vec!["r".to_string()];
            header.extend((0..FIG1_STATES).map(|k| format!("psi{k}")));
            c.write_record(&header).context("write")?;
            for (i, r) in data.r.iter().enumerate() {
                let mut rec = vec![fmt_sig(*r)];
                rec.extend(data.psi.iter().map(|s| fmt_sig(s[i])));
                c.write_record(&rec).context("write")?;
            }
            c.flush().context("write")?;
        }
        Format::Json => {
            serde_json::to_writer(&mut w, &data).context("write")?;
            writeln!(w).context("write")?;
        }
    }
    w.flush().context("write")?;
    Ok(())
}

fn cmd_reproduce(args: &ReproduceArgs) -> Result<(), Failure> {
    let rep = reproduce::table(args.table).expect("clap restricts the table number");
    let mut w = args.out.writer()?;
    match args.out.format {
        Format::Csv => writeln!(w, "{rep}").context("write")?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &rep).context("write")?;
            writeln!(w).context("write")?;
        }
    }
    w.flush().context("write")?;
    Ok(())
}

fn cmd_check(args: &CheckArgs) -> Result<(), Failure> {
    let checks = selfcheck::run_all();
    let mut w = args.out.writer()?;
    match args.out.format {
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            for ch in &checks {
                c.serialize(ch).context("write")?;
            }
            c.flush().context("write")?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &checks).context("write")?;
            writeln!(w).context("write")?;
        }
    }
    w.flush().context("write")?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    eprintln!("{} of {} checks passed", checks.len() - failed, checks.len());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(6.505038139123), "6.50503813912");
        assert_eq!(fmt_sig(0.005038139), "0.00503813900000");
        assert_eq!(fmt_sig(41.50031254), "41.5003125400");
        assert_eq!(fmt_sig(0.0), "0");
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
