use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nlc_cli::config::parse_side;
use nlc_cli::runner::DEFAULT_RK4_STEP;
use nlc_cli::{
    emit, load_config, run_simulation, run_sweep, validate_command, CliError, FigurePreset,
    OutputFormat, RunConfig, SweepSpec, SweptParameter, Table,
};
use nlc_core::{LocalSide, TimeGrid};

#[derive(Parser)]
#[command(
    name = "nlc",
    version,
    about = "Two-qubit XYZ + DM + field dynamics under intrinsic decoherence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Output file, `-` for stdout (overrides the config)
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    format: Option<OutputFormat>,
}

impl OutputArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(path) = &self.output {
            cfg.output_path = path.clone();
        }
        if let Some(format) = self.format {
            cfg.output_format = format;
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one trajectory from a config file
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Scan one parameter (or a `+`-joined group, e.g. dx+dy) over a list of values
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        values: Vec<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a figure preset (fig1a..fig7b)
    Preset {
        #[arg(long)]
        id: FigurePreset,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_parser = parse_side)]
        lqfi_side: Option<LocalSide>,
        #[arg(long, value_parser = parse_side)]
        lqu_side: Option<LocalSide>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cross-check the closed-form trajectory against RK4
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RK4_STEP)]
        rk4_step: f64,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Simulate { config, out } => {
            let mut cfg = load_config(&config)?;
            out.apply(&mut cfg);
            let rows = run_simulation(&cfg)?;
            emit(
                Table::Simulation(&rows),
                cfg.output_format,
                &cfg.output_path,
            )
        }
        Command::Sweep {
            config,
            param,
            values,
            out,
        } => {
            let mut cfg = load_config(&config)?;
            out.apply(&mut cfg);
            let spec = SweepSpec::new(cfg, SweptParameter::parse(&param)?, values)?;
            let rows = run_sweep(&spec)?;
            emit(
                Table::Sweep(&rows),
                spec.base.output_format,
                &spec.base.output_path,
            )
        }
        Command::Preset {
            id,
            t_end,
            samples,
            lqfi_side,
            lqu_side,
            out,
        } => {
            let mut cfg = id.config();
            if t_end.is_some() || samples.is_some() {
                cfg.grid = TimeGrid::new(
                    cfg.grid.t_start(),
                    t_end.unwrap_or(cfg.grid.t_end()),
                    samples.unwrap_or(cfg.grid.samples()),
                )
                .map_err(|e| CliError::Validation(e.to_string()))?;
            }
            cfg.lqfi_side = lqfi_side.unwrap_or(cfg.lqfi_side);
            cfg.lqu_side = lqu_side.unwrap_or(cfg.lqu_side);
            out.apply(&mut cfg);
            let rows = run_simulation(&cfg)?;
            emit(
                Table::Simulation(&rows),
                cfg.output_format,
                &cfg.output_path,
            )
        }
        Command::Validate { config, rk4_step } => {
            let report = validate_command(&load_config(&config)?, rk4_step)?;
            println!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Numerical {
                    t: None,
                    source: nlc_core::Error::NumericalDefect(format!(
                        "RK4 deviation {:e} exceeds {:e}",
                        report.max_deviation, report.threshold
                    )),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.kind().to_string();
            let detail = e.to_string();
            let first = detail
                .lines()
                .next()
                .unwrap_or(&message)
                .trim_start_matches("error: ");
            eprintln!("error kind=config: {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.machine_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
