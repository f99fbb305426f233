use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hbsqueeze::figures::{closed_radial_grid, evaluate_point, run_sweep, DEFAULT_EPS};
use hbsqueeze::output::{render, render_point, render_sweep};
use hbsqueeze::{
    run_figure, Error, Execution, FigureId, FluidParams, Format, SolverTolerances, SweepSpec,
};

#[derive(Parser)]
#[command(
    name = "hbsqueeze",
    version,
    about = "Squeeze flow of a Herschel-Bulkley fluid between parallel plates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the dataset for one figure (fig2, fig3, fig4a, fig4b, fig5, fig6).
    Figure {
        id: String,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Force breakdown and unyielded-zone radius over a (B, n) grid.
    Sweep {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Field values at one radius, for one height or a profile across the gap.
    Point {
        #[arg(long = "B", value_name = "B", allow_negative_numbers = true)]
        bingham: f64,
        #[arg(long = "n", value_name = "N", allow_negative_numbers = true)]
        index: f64,
        #[arg(long, default_value_t = DEFAULT_EPS, allow_negative_numbers = true)]
        eps: f64,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        /// Single height; without it the profile over --z-grid heights is emitted.
        #[arg(long, allow_negative_numbers = true)]
        z: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated Bingham numbers (figure defaults when omitted).
    #[arg(
        long = "B",
        value_name = "LIST",
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    bingham: Vec<f64>,
    /// Comma-separated power-law indices (figure defaults when omitted).
    #[arg(
        long = "n",
        value_name = "LIST",
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    index: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_EPS, allow_negative_numbers = true)]
    eps: f64,
    /// Evaluate parameter points on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct Common {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: Format,
    /// Absolute tolerance of the yield-surface root solve.
    #[arg(long, allow_negative_numbers = true)]
    tol_root: Option<f64>,
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, allow_negative_numbers = true)]
    tol_quad: Option<f64>,
    #[arg(long, default_value_t = hbsqueeze::figures::DEFAULT_R_GRID)]
    r_grid: usize,
    #[arg(long, default_value_t = hbsqueeze::figures::DEFAULT_Z_GRID)]
    z_grid: usize,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Common {
    fn tolerances(&self) -> hbsqueeze::Result<SolverTolerances> {
        let mut tol = SolverTolerances::default();
        if let Some(t) = self.tol_root {
            tol.root = tol.root.with_abs(t);
        }
        if let Some(t) = self.tol_quad {
            tol.quad = tol.quad.with_rel(t);
        }
        tol.root.check()?;
        tol.quad.check()?;
        Ok(tol)
    }

    fn spec(&self, sweep: SweepArgs) -> hbsqueeze::Result<(SweepSpec, Execution)> {
        let exec = if sweep.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        };
        let spec = SweepSpec {
            bingham: sweep.bingham,
            index: sweep.index,
            eps: sweep.eps,
            r_grid: self.r_grid,
            z_grid: self.z_grid,
            tolerances: self.tolerances()?,
        };
        Ok((spec, exec))
    }

    fn write(&self, text: &str) -> hbsqueeze::Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            }),
            None => std::io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                }),
        }
    }
}

fn run(cli: Cli) -> hbsqueeze::Result<()> {
    match cli.command {
        Command::Figure { id, sweep, common } => {
            let id: FigureId = id.parse()?;
            let (spec, exec) = common.spec(sweep)?;
            log::info!(
                "{id}: {:?} over B={:?} n={:?}",
                exec,
                spec.bingham,
                spec.index
            );
            let data = run_figure(&spec, id, exec)?;
            common.write(&render(&data, common.format)?)
        }
        Command::Sweep { sweep, common } => {
            let (spec, exec) = common.spec(sweep)?;
            let table = run_sweep(&spec, exec)?;
            common.write(&render_sweep(&table, common.format)?)
        }
        Command::Point {
            bingham,
            index,
            eps,
            r,
            z,
            common,
        } => {
            let params = FluidParams::stokes(bingham, index, eps)?;
            if common.z_grid < 2 {
                return Err(Error::InvalidSweep("grids need at least two points"));
            }
            let heights = match z {
                Some(z) => vec![z],
                None => closed_radial_grid(common.z_grid),
            };
            let report = evaluate_point(params, common.tolerances()?, r, &heights)?;
            common.write(&render_point(&report, common.format)?)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            if e.is_parameter_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
