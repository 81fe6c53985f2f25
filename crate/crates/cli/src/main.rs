//! `fwm`: sweeps, reports and figure datasets for the four-wave-mixing model.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 failed
//! consistency check.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fwm_core::selftest;
use fwm_core::sweep::{
    parse_config, parse_observables, reproduce_figure, write_csv, write_eigs, write_report, Figure,
    LengthGrid, Observable, SweepError, SweepSpec,
};
use fwm_core::DeltaSign;

const EXIT_USAGE: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fwm",
    version,
    about = "Phase-sensitive non-Hermitian four-wave mixing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and symmetry region for each delta ratio and phase.
    Eigs(SpecArgs),
    /// Full (delta, phi, kappa_L) sweep as CSV.
    Sweep(SpecArgs),
    /// All requested observables at one kappa_L, with consistency checks.
    Report {
        #[command(flatten)]
        spec: SpecArgs,
        /// Propagation length in units of 1/kappa.
        #[arg(long, default_value_t = 1.0)]
        length: f64,
    },
    /// Plot-ready dataset for one figure.
    Reproduce {
        /// fig1b, fig2, fig3, fig4, figS1 or figS2.
        figure: String,
        #[arg(long, default_value = "-")]
        output: String,
    },
    /// Runs the bundled verification checks.
    Selftest {
        /// Run a single check (1 to 11).
        #[arg(long)]
        criterion: Option<u32>,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    kappa: Option<f64>,
    /// |Delta| / kappa; repeatable.
    #[arg(long = "delta-ratio", allow_negative_numbers = true)]
    delta_ratio: Vec<f64>,
    /// Branch of Delta = -+ delta * kappa.
    #[arg(long = "delta-sign")]
    delta_sign: Option<DeltaSign>,
    /// Pump phase in radians; repeatable.
    #[arg(long, allow_negative_numbers = true)]
    phi: Vec<f64>,
    /// kappa_L grid as start:stop:count.
    #[arg(long)]
    lengths: Option<LengthGrid>,
    /// Comma list of p1, p2, e1, e2, e_n, var_q, eigenvalues.
    #[arg(long, value_parser = parse_observable_list)]
    observables: Option<ObservableList>,
    /// key = value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path, or '-' for stdout.
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Clone)]
struct ObservableList(Vec<Observable>);

fn parse_observable_list(s: &str) -> Result<ObservableList, String> {
    parse_observables(s).map(ObservableList)
}

impl SpecArgs {
    fn spec(&self) -> Result<SweepSpec, SweepError> {
        let mut spec = match &self.config {
            Some(path) => parse_config(path)?,
            None => SweepSpec::default(),
        };
        if let Some(k) = self.kappa {
            spec.kappa = k;
        }
        if !self.delta_ratio.is_empty() {
            spec.delta_ratios = self.delta_ratio.clone();
        }
        if let Some(s) = self.delta_sign {
            spec.delta_sign = s;
        }
        if !self.phi.is_empty() {
            spec.phis = self.phi.clone();
        }
        if let Some(l) = self.lengths {
            spec.lengths = l;
        }
        if let Some(o) = &self.observables {
            spec.observables = o.0.clone();
        }
        Ok(spec)
    }
}

fn open_output(path: &str) -> io::Result<Box<dyn Write>> {
    Ok(if path == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(File::create(path)?))
    })
}

fn emit(
    output: &str,
    body: impl FnOnce(&mut Box<dyn Write>) -> Result<(), SweepError>,
) -> Result<(), SweepError> {
    let mut out = open_output(output)?;
    body(&mut out)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, SweepError> {
    match cli.command {
        Command::Eigs(args) => {
            let spec = args.spec()?;
            emit(&args.output, |out| write_eigs(&spec, out).map(drop))?;
        }
        Command::Sweep(args) => {
            let spec = args.spec()?;
            emit(&args.output, |out| write_csv(&spec, out).map(drop))?;
        }
        Command::Report { spec: args, length } => {
            let spec = args.spec()?;
            emit(&args.output, |out| {
                write_report(&spec, length, out).map(drop)
            })?;
        }
        Command::Reproduce { figure, output } => {
            let figure: Figure = figure.parse()?;
            emit(&output, |out| reproduce_figure(figure, out))?;
        }
        Command::Selftest { criterion } => {
            let results = match criterion {
                Some(id) => match selftest::run(id) {
                    Some(r) => vec![r],
                    None => {
                        eprintln!("error: no check numbered {id}; valid checks are 1 to 11");
                        return Ok(ExitCode::from(EXIT_USAGE));
                    }
                },
                None => selftest::run_all(),
            };
            let mut failed = 0;
            for r in &results {
                println!("{r}");
                failed += usize::from(!r.passed);
            }
            println!(
                "{} of {} checks passed",
                results.len() - failed,
                results.len()
            );
            if failed > 0 {
                return Ok(ExitCode::from(EXIT_CONSISTENCY));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(SweepError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_CONSISTENCY
            })
        }
    }
}
