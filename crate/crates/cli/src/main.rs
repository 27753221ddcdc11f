use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use unruh_cli::{cmd_eval, run_figure, CliError, CliResult, Command, EvalParams, Overrides, Quantity, RunConfig};

/// Photon-counting datasets for inertial and uniformly accelerated detectors.
#[derive(Debug, Parser)]
#[command(name = "unruh", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Plane-wave amplitudes in the localized Minkowski basis against K/a.
    Fig3(Common),
    /// Localized-to-localized coefficients against aξ - ln|ax|.
    Fig4(Common),
    /// Coincidence densities against aΔv.
    Fig5(Common),
    /// Prints a single quantity.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Chart constant a (natural units).
    #[arg(long)]
    a: Option<f64>,
    /// Damping regulator ε.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Lower cutoff x₀ of 1/x integrands.
    #[arg(long)]
    x0: Option<f64>,
    /// Cutoff frequency Ω₀; repeat for several curves.
    #[arg(long)]
    omega0: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    grid_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    grid_max: Option<f64>,
    #[arg(long)]
    grid_step: Option<f64>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit 0 even when rows are flagged as not converged.
    #[arg(long)]
    allow_flags: bool,
    /// Use the doubled a/π single-rate prefactor.
    #[arg(long)]
    paper_prefactor: bool,
    /// Add the x₀ boundary term to the coefficients.
    #[arg(long)]
    include_f_term: bool,
    /// Flat key=value file; flags take precedence over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Localized Minkowski position in units of 1/a.
    #[arg(long, allow_hyphen_values = true)]
    ax: Option<f64>,
    /// Rindler position of the absorbing surfaces.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<f64>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// One of beta2, g2, unruh_temp, one_detector_rate, single_rate,
    /// coincidence, proper_accel, si_convert.
    quantity: String,
    #[command(flatten)]
    common: Common,
    /// Minkowski wave vector k.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    /// Rindler wave vector K.
    #[arg(long = "K", allow_hyphen_values = true)]
    big_k: Option<f64>,
    /// Null-coordinate separation Δv.
    #[arg(long, allow_hyphen_values = true)]
    dv: Option<f64>,
    #[arg(long)]
    temp_kelvin: Option<f64>,
    /// Proper acceleration in m/s².
    #[arg(long)]
    accel_si: Option<f64>,
}

impl Common {
    fn resolve(self, command: Command) -> CliResult<RunConfig> {
        let file = match &self.config {
            Some(path) => Overrides::from_config_file(path)?,
            None => Overrides::default(),
        };
        let flags = Overrides {
            a: self.a,
            epsilon: self.epsilon,
            x0: self.x0,
            omega0: self.omega0,
            grid_min: self.grid_min,
            grid_max: self.grid_max,
            grid_step: self.grid_step,
            out: self.out,
            allow_flags: self.allow_flags,
            paper_prefactor: self.paper_prefactor,
            include_f_term: self.include_f_term,
            ax: self.ax,
            xi: self.xi,
        };
        RunConfig::resolve(command, flags.over(file))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let (command, common) = match cli.command {
        Sub::Fig3(c) => (Command::Fig3, c),
        Sub::Fig4(c) => (Command::Fig4, c),
        Sub::Fig5(c) => (Command::Fig5, c),
        Sub::Eval(e) => {
            let quantity = Quantity::parse(&e.quantity)?;
            let cfg = e.common.resolve(Command::Eval)?;
            let params = EvalParams {
                k: e.k,
                big_k: e.big_k,
                dv: e.dv,
                temp_kelvin: e.temp_kelvin,
                accel_si: e.accel_si,
            };
            let result = cmd_eval(&cfg, quantity, &params)?;
            out.write_all(result.render().as_bytes())?;
            if !result.converged && !cfg.allow_flags {
                return Err(CliError::NotConverged(format!("{} quadrature", quantity.name())));
            }
            return Ok(());
        }
    };
    let cfg = common.resolve(command)?;
    run_figure(&cfg, &mut out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("unruh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
