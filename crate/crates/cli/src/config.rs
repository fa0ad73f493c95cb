//! Effective run configuration.
//!
//! Precedence: command-line flags override config-file values override
//! defaults. The config file is a flat `key = value` text file whose
//! keys mirror the field names below ('#' starts a comment).
//!
//! The config hash covers exactly the fields that influence computed
//! values (input, symbol, window, indicator parameters, horizon,
//! strictness) - not output locations or formats. It is embedded in
//! every artifact header so stale artifacts from a different
//! configuration are never silently mistaken for current ones.

use std::fmt;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format '{other}' (csv or json)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: String,
    pub symbol: String,
    pub start: Option<NaiveDate>,
    pub end: Option<NaiveDate>,
    pub sma_window: usize,
    pub macd_short: usize,
    pub macd_long: usize,
    pub horizon: usize,
    pub strict_validation: bool,
    pub output_format: OutputFormat,
    pub output_dir: PathBuf,
    pub timeout_secs: u64,
}

/// Unresolved values from one source (flags or a config file); `None`
/// means "not given here".
#[derive(Debug, Default, Clone)]
pub struct PartialConfig {
    pub input: Option<String>,
    pub symbol: Option<String>,
    pub start: Option<NaiveDate>,
    pub end: Option<NaiveDate>,
    pub sma_window: Option<usize>,
    pub macd: Option<(usize, usize)>,
    pub horizon: Option<usize>,
    pub strict_validation: Option<bool>,
    pub output_format: Option<OutputFormat>,
    pub output_dir: Option<PathBuf>,
    pub timeout_secs: Option<u64>,
}

impl PartialConfig {
    /// Take values from `self`, falling back to `fallback`.
    fn or(self, fallback: PartialConfig) -> PartialConfig {
        PartialConfig {
            input: self.input.or(fallback.input),
            symbol: self.symbol.or(fallback.symbol),
            start: self.start.or(fallback.start),
            end: self.end.or(fallback.end),
            sma_window: self.sma_window.or(fallback.sma_window),
            macd: self.macd.or(fallback.macd),
            horizon: self.horizon.or(fallback.horizon),
            strict_validation: self.strict_validation.or(fallback.strict_validation),
            output_format: self.output_format.or(fallback.output_format),
            output_dir: self.output_dir.or(fallback.output_dir),
            timeout_secs: self.timeout_secs.or(fallback.timeout_secs),
        }
    }
}

/// Parse the flat key-value config file.
pub fn load_config_file(path: &Path) -> Result<PartialConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config file {}: {e}", path.display())))?;
    let mut out = PartialConfig::default();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| {
            CliError::Usage(format!(
                "{} line {}: {msg}",
                path.display(),
                lineno + 1
            ))
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad("expected 'key = value'".to_string()))?;
        let key = key.trim();
        let value = value.trim();

        match key {
            "input" => out.input = Some(value.to_string()),
            "symbol" => out.symbol = Some(value.to_string()),
            "start" => out.start = Some(parse_date(value).map_err(bad)?),
            "end" => out.end = Some(parse_date(value).map_err(bad)?),
            "sma_window" => out.sma_window = Some(parse_num(key, value).map_err(bad)?),
            "macd_windows" => out.macd = Some(parse_macd(value).map_err(bad)?),
            "horizon" => out.horizon = Some(parse_num(key, value).map_err(bad)?),
            "strict_validation" => {
                out.strict_validation = Some(match value.to_ascii_lowercase().as_str() {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    other => return Err(bad(format!("bad boolean '{other}'"))),
                })
            }
            "output_format" => out.output_format = Some(value.parse().map_err(bad)?),
            "output_dir" => out.output_dir = Some(PathBuf::from(value)),
            "timeout_secs" => out.timeout_secs = Some(parse_num(key, value).map_err(bad)?),
            other => return Err(bad(format!("unknown key '{other}'"))),
        }
    }
    Ok(out)
}

fn parse_date(value: &str) -> Result<NaiveDate, String> {
    NaiveDate::parse_from_str(value, "%Y-%m-%d")
        .map_err(|_| format!("bad date '{value}' (expected YYYY-MM-DD)"))
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("bad value '{value}' for {key}"))
}

/// "SHORT,LONG" pair, e.g. `12,26`.
pub fn parse_macd(value: &str) -> Result<(usize, usize), String> {
    let (s, l) = value
        .split_once(',')
        .ok_or_else(|| format!("bad MACD windows '{value}' (expected SHORT,LONG)"))?;
    Ok((parse_num("macd short", s.trim())?, parse_num("macd long", l.trim())?))
}

impl RunConfig {
    /// Resolve flags over file values over defaults, then validate.
    pub fn resolve(
        flags: PartialConfig,
        config_file: Option<&Path>,
    ) -> Result<RunConfig, CliError> {
        let file_values = match config_file {
            Some(path) => load_config_file(path)?,
            None => PartialConfig::default(),
        };
        let merged = flags.or(file_values);

        let input = merged
            .input
            .ok_or_else(|| CliError::Usage("--input is required".to_string()))?;
        let symbol = merged
            .symbol
            .ok_or_else(|| CliError::Usage("--symbol is required".to_string()))?;
        let (macd_short, macd_long) = merged.macd.unwrap_or((12, 26));

        let config = RunConfig {
            input,
            symbol,
            start: merged.start,
            end: merged.end,
            sma_window: merged.sma_window.unwrap_or(5),
            macd_short,
            macd_long,
            horizon: merged.horizon.unwrap_or(1),
            strict_validation: merged.strict_validation.unwrap_or(false),
            output_format: merged.output_format.unwrap_or(OutputFormat::Csv),
            output_dir: merged.output_dir.unwrap_or_else(|| PathBuf::from("sutte-out")),
            timeout_secs: merged.timeout_secs.unwrap_or(30),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.sma_window < 1 {
            return Err(CliError::Usage("--sma-window must be at least 1".to_string()));
        }
        if self.macd_short < 1 || self.macd_long < 1 {
            return Err(CliError::Usage("MACD windows must be at least 1".to_string()));
        }
        if self.macd_short >= self.macd_long {
            return Err(CliError::Usage(format!(
                "MACD short window {} must be less than long window {}",
                self.macd_short, self.macd_long
            )));
        }
        if self.horizon < 1 {
            return Err(CliError::Usage("--horizon must be at least 1".to_string()));
        }
        if let (Some(start), Some(end)) = (self.start, self.end) {
            if start > end {
                return Err(CliError::Usage(format!(
                    "--start {start} is after --end {end}"
                )));
            }
        }
        Ok(())
    }

    /// Canonical one-line rendering of the value-affecting fields; the
    /// preimage of the config hash and the echo in artifact headers.
    pub fn canonical(&self) -> String {
        let date = |d: Option<NaiveDate>| {
            d.map(|d| d.format("%Y-%m-%d").to_string()).unwrap_or_default()
        };
        format!(
            "end={} horizon={} input={} macd={},{} sma_window={} start={} strict={} symbol={}",
            date(self.end),
            self.horizon,
            self.input,
            self.macd_short,
            self.macd_long,
            self.sma_window,
            date(self.start),
            self.strict_validation,
            self.symbol,
        )
    }

    /// First 12 hex chars of the SHA-256 of the canonical config.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        hex[..12].to_string()
    }

    /// Cache directory for fetched raw CSV; `SUTTE_CACHE_DIR` overrides
    /// the default of `<output_dir>/raw`.
    pub fn cache_dir(&self) -> PathBuf {
        match std::env::var_os("SUTTE_CACHE_DIR") {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => self.output_dir.join("raw"),
        }
    }

    pub fn timeout(&self) -> std::time::Duration {
        std::time::Duration::from_secs(self.timeout_secs)
    }
}
