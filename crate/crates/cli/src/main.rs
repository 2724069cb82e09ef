mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lamb_core::constants::CONSTANTS_FILE_ENV;
use lamb_core::shift::{decay_rates, total_rate, DEFAULT_CUTOFFS};
use lamb_core::tables::parse_j2;
use lamb_core::{
    bethe_log, default_constants, dipole_lamb_full, generate_table, lamb_shift, DipoleOptions,
    Error, PhysicalConstants, QuadratureSpec, QuantumState,
};

use render::{Format, Report};

const EXIT_INTERNAL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lambshift",
    version,
    about = "Lamb shifts and radiative decay rates of hydrogen-like ions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lamb shift and decay rates of one state.
    Shift(StateArgs),
    /// Partial and total radiative decay rates of one state.
    Rates(StateArgs),
    /// Bethe logarithm, optionally with the full dipole Lamb shift for `--j`.
    Bethe(StateArgs),
    /// Recompute a reference table and compare.
    Table(TableArgs),
    /// Quick self-consistency checks against independent evaluators.
    #[command(hide = true)]
    Verify(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1e-14)]
    abs_tol: f64,
    #[arg(long, env = CONSTANTS_FILE_ENV)]
    constants_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StateArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    l: u32,
    /// Total angular momentum, e.g. `1/2` or `3/2`.
    #[arg(long)]
    j: Option<String>,
    #[arg(long, default_value_t = 1)]
    z: u32,
    #[arg(long)]
    dipole: bool,
    /// Photon-energy cutoff `ħω/(2mc²)` for dipole-mode shifts.
    #[arg(long)]
    cutoff_x: Option<f64>,
    /// Comma-separated ascending cutoffs for the Bethe logarithm.
    #[arg(long, value_delimiter = ',')]
    cutoffs: Option<Vec<f64>>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    id: u8,
    #[command(flatten)]
    common: CommonArgs,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidState(_) | Error::InvalidArgument(_) | Error::Constants(_) => {
                EXIT_INVALID
            }
            Error::NotInGroup(_) | Error::NonFinite(_) => EXIT_INTERNAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

impl CommonArgs {
    fn spec(&self) -> Result<QuadratureSpec, Failure> {
        let spec = QuadratureSpec {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            ..Default::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    fn constants(&self) -> Result<PhysicalConstants, Failure> {
        match &self.constants_file {
            Some(path) => Ok(PhysicalConstants::from_file(path)?),
            None => Ok(default_constants()),
        }
    }
}

impl StateArgs {
    fn state(&self) -> Result<QuantumState, Failure> {
        let state = QuantumState::new(self.n, self.l, self.z)?;
        match &self.j {
            Some(j) => {
                let j2 = parse_j2(j).ok_or_else(|| invalid(format!("cannot parse J = {j:?}")))?;
                Ok(state.with_j2(j2)?)
            }
            None => Ok(state),
        }
    }

    fn options(&self) -> Result<DipoleOptions, Failure> {
        match (self.dipole, self.cutoff_x) {
            (false, None) => Ok(DipoleOptions::non_dipole()),
            (false, Some(_)) => Err(invalid("--cutoff-x requires --dipole")),
            (true, Some(x)) => Ok(DipoleOptions::dipole(x)),
            (true, None) => Ok(DipoleOptions::dipole_rates()),
        }
    }
}

fn run(cli: &Cli) -> Result<(Report, Format), Failure> {
    match &cli.command {
        Command::Shift(args) => {
            let state = args.state()?;
            let options = args.options()?;
            if options.enabled && options.cutoff_x.is_none() {
                return Err(invalid(
                    "dipole-mode shifts need --cutoff-x; use `bethe` for the cutoff-free result",
                ));
            }
            let (spec, c) = (args.common.spec()?, args.common.constants()?);
            Ok((
                Report::Shift(lamb_shift(&state, &options, &spec, &c)?),
                args.common.format,
            ))
        }
        Command::Rates(args) => {
            let state = args.state()?;
            let options = args.options()?;
            let c = args.common.constants()?;
            let rates = decay_rates(
                &state,
                &DipoleOptions {
                    cutoff_x: None,
                    ..options
                },
                &c,
            )?;
            let total = total_rate(&rates);
            Ok((
                Report::Rates {
                    state,
                    dipole: options.enabled,
                    rates,
                    total,
                },
                args.common.format,
            ))
        }
        Command::Bethe(args) => {
            let state = args.state()?;
            let cutoffs = args
                .cutoffs
                .clone()
                .unwrap_or_else(|| DEFAULT_CUTOFFS.to_vec());
            let (spec, c) = (args.common.spec()?, args.common.constants()?);
            let bethe = bethe_log(&state, &cutoffs, &spec, &c)?;
            let full = match state.j2 {
                Some(_) => Some(dipole_lamb_full(&state, &bethe, &c)?),
                None => None,
            };
            Ok((Report::Bethe { state, bethe, full }, args.common.format))
        }
        Command::Table(args) => {
            let (spec, c) = (args.common.spec()?, args.common.constants()?);
            if c != default_constants() {
                eprintln!("note: reference values assume the default constants");
            }
            Ok((
                Report::Table(generate_table(args.id, &spec, &c)?),
                args.common.format,
            ))
        }
        Command::Verify(common) => {
            let c = common.constants()?;
            Ok((Report::Verify(render::verify(&c)?), common.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, format)) => {
            match report.write(format, &mut std::io::stdout().lock()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INTERNAL);
                }
                Ok(()) => {}
            }
            match report.status() {
                render::Status::Ok => ExitCode::SUCCESS,
                render::Status::NotConverged => {
                    eprintln!("warning: quadrature or extrapolation did not converge");
                    ExitCode::from(EXIT_NOT_CONVERGED)
                }
                render::Status::Failed => ExitCode::from(EXIT_INTERNAL),
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
