//! `sutte` - Sutte Indicator analysis pipeline.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/validation error,
//! 3 network error.

mod artifacts;
mod chart;
mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::Pipeline;
use config::{OutputFormat, PartialConfig, RunConfig};
use error::CliError;

#[derive(Parser)]
#[command(
    name = "sutte",
    version,
    about = "Sutte Indicator analysis over daily OHLC bars: ingest, indicators, signals, evaluation, charts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fetch (or copy) the raw CSV and persist it with a validation report
    Fetch(CommonArgs),
    /// Parse the input and print every validation finding
    Validate(CommonArgs),
    /// Compute and persist SUTTE%L, SUTTE%H, SUTTE-PRED, SMA, and MACD
    Indicators(CommonArgs),
    /// Detect SUTTE%L/SUTTE%H crossovers and persist buy/sell signals
    Signals(CommonArgs),
    /// Compare forecast reliability (MAD, MSE, MAPE) across methods
    Evaluate {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated subset of methods: sutte, sma, macd
        #[arg(long, value_name = "LIST")]
        methods: Option<String>,
    },
    /// Export an SVG chart plus a tidy long-format CSV
    Plot(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// CSV file path or http(s) URL
    #[arg(long)]
    input: Option<String>,

    /// Ticker symbol the data belongs to
    #[arg(long)]
    symbol: Option<String>,

    /// Window start date (inclusive, YYYY-MM-DD)
    #[arg(long)]
    start: Option<NaiveDate>,

    /// Window end date (inclusive, YYYY-MM-DD)
    #[arg(long)]
    end: Option<NaiveDate>,

    /// SMA window length
    #[arg(long = "sma-window", value_name = "N")]
    sma_window: Option<usize>,

    /// MACD windows as SHORT,LONG
    #[arg(long, value_name = "SHORT,LONG", value_parser = parse_macd_arg)]
    macd: Option<(usize, usize)>,

    /// Bars ahead that a forecast targets
    #[arg(long, value_name = "H")]
    horizon: Option<usize>,

    /// Treat validation findings as errors
    #[arg(long)]
    strict: bool,

    /// Artifact format
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,

    /// Output directory (default: sutte-out)
    #[arg(long = "out", value_name = "DIR")]
    out: Option<PathBuf>,

    /// Flat key=value config file (flags override its values)
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// HTTP timeout in seconds
    #[arg(long = "timeout-secs", value_name = "SECS")]
    timeout_secs: Option<u64>,
}

fn parse_macd_arg(value: &str) -> Result<(usize, usize), String> {
    config::parse_macd(value)
}

impl CommonArgs {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let flags = PartialConfig {
            input: self.input.clone(),
            symbol: self.symbol.clone(),
            start: self.start,
            end: self.end,
            sma_window: self.sma_window,
            macd: self.macd,
            horizon: self.horizon,
            strict_validation: self.strict.then_some(true),
            output_format: self.format,
            output_dir: self.out.clone(),
            timeout_secs: self.timeout_secs,
        };
        RunConfig::resolve(flags, self.config.as_deref())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fetch(args) => Pipeline::new(args.resolve()?).cmd_fetch(),
        Command::Validate(args) => Pipeline::new(args.resolve()?).cmd_validate(),
        Command::Indicators(args) => Pipeline::new(args.resolve()?).cmd_indicators(),
        Command::Signals(args) => Pipeline::new(args.resolve()?).cmd_signals(),
        Command::Evaluate { common, methods } => {
            let config = common.resolve()?;
            let specs = commands::parse_methods(methods.as_deref(), &config)?;
            Pipeline::new(config).cmd_evaluate(&specs)
        }
        Command::Plot(args) => Pipeline::new(args.resolve()?).cmd_plot(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
