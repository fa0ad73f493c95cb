//! The six pipeline commands. Each is runnable on its own: upstream
//! values are recomputed from the input, and any artifacts already on
//! disk are only trusted after their embedded config hash matches the
//! current one.

use serde_json::json;
use sutte_core::evaluation::{self, MethodSpec};
use sutte_core::market_data::{fetch_csv, parse_csv, validate_series, ValidationReport};
use sutte_core::signal::{self, SignalKind};
use sutte_core::{sutte, BarSeries, IndicatorSeries};

use crate::artifacts::{
    self, check_integrity, indicator_paths, json_meta, signals_path, text_header, write_file,
    write_json, RawCache,
};
use crate::chart::{self, ChartInput};
use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;

pub struct Pipeline {
    config: RunConfig,
}

struct Ingested {
    series: BarSeries,
    report: ValidationReport,
}

impl Pipeline {
    pub fn new(config: RunConfig) -> Pipeline {
        Pipeline { config }
    }

    fn is_url_input(&self) -> bool {
        self.config.input.starts_with("http://") || self.config.input.starts_with("https://")
    }

    /// Raw CSV text: via the config-hash-keyed cache for URLs, straight
    /// from disk for local paths.
    fn obtain_raw(&self) -> Result<String, CliError> {
        if self.is_url_input() {
            let cache = RawCache::for_config(&self.config);
            if let Some(body) = cache.lookup(&self.config) {
                return Ok(body);
            }
            let body = fetch_csv(&self.config.input, self.config.timeout())?;
            cache.store(&self.config, &body)?;
            Ok(body)
        } else {
            std::fs::read_to_string(&self.config.input)
                .map_err(|e| CliError::io(&format!("reading {}", self.config.input), e))
        }
    }

    /// Parse and validate; parse-time warnings (dropped rows) are
    /// merged into the report. Strictness is not enforced here.
    fn ingest_text(&self, raw: &str) -> Result<Ingested, CliError> {
        let parsed = parse_csv(raw, &self.config.symbol)?;
        let mut report = validate_series(&parsed.series, self.config.strict_validation);
        let mut issues = parsed.issues;
        issues.append(&mut report.issues);
        report.issues = issues;
        Ok(Ingested {
            series: parsed.series,
            report,
        })
    }

    fn ingest(&self) -> Result<Ingested, CliError> {
        let raw = self.obtain_raw()?;
        self.ingest_text(&raw)
    }

    fn enforce_strict(&self, report: &ValidationReport) -> Result<(), CliError> {
        if self.config.strict_validation && report.has_errors() {
            let n = report
                .issues
                .iter()
                .filter(|i| i.severity == sutte_core::Severity::Error)
                .count();
            return Err(CliError::Data(format!(
                "strict validation failed for '{}': {n} error(s)",
                report.symbol
            )));
        }
        Ok(())
    }

    /// Fully checked, windowed series ready for computation.
    fn load_series(&self) -> Result<BarSeries, CliError> {
        let ingested = self.ingest()?;
        self.enforce_strict(&ingested.report)?;
        self.window(ingested.series)
    }

    fn window(&self, series: BarSeries) -> Result<BarSeries, CliError> {
        match (self.config.start, self.config.end) {
            (None, None) => Ok(series),
            (start, end) => {
                let start = start.unwrap_or_else(|| series.first_date());
                let end = end.unwrap_or_else(|| series.last_date());
                Ok(series.slice_by_date(start, end)?)
            }
        }
    }

    fn sutte_pair(
        &self,
        series: &BarSeries,
    ) -> Result<(IndicatorSeries, IndicatorSeries), CliError> {
        Ok((sutte::sutte_l(series)?, sutte::sutte_h(series)?))
    }

    fn all_indicators(&self, series: &BarSeries) -> Result<Vec<IndicatorSeries>, CliError> {
        Ok(vec![
            sutte::sutte_l(series)?,
            sutte::sutte_h(series)?,
            sutte::sutte_pred(series)?,
            sutte_core::indicators::sma(series, self.config.sma_window)?,
            sutte_core::indicators::macd(series, self.config.macd_short, self.config.macd_long)?,
        ])
    }

    fn persist_indicator(&self, ind: &IndicatorSeries) -> Result<std::path::PathBuf, CliError> {
        let dir = self.config.output_dir.join("indicators");
        let slug = artifacts::file_slug(ind.name());
        let path = dir.join(format!("{slug}.{}", self.config.output_format.extension()));
        match self.config.output_format {
            OutputFormat::Csv => {
                let body = format!("{}{}", text_header(&self.config, "#"), ind.to_csv());
                write_file(&path, &body)?;
            }
            OutputFormat::Json => {
                let mut value = ind.to_json();
                value["meta"] = json_meta(&self.config);
                write_json(&path, &value)?;
            }
        }
        Ok(path)
    }

    // --- commands -----------------------------------------------------------

    /// Persist the raw CSV under `raw/` together with its validation
    /// report; nonzero exit when strict mode finds errors.
    pub fn cmd_fetch(&self) -> Result<(), CliError> {
        let raw = self.obtain_raw()?;

        let raw_dir = self.config.output_dir.join("raw");
        let csv_path = raw_dir.join(format!("{}.csv", self.config.symbol));
        write_file(&csv_path, &raw)?;
        write_json(
            &raw_dir.join(format!("{}.meta.json", self.config.symbol)),
            &json!({
                "tool": "sutte",
                "version": crate::config::TOOL_VERSION,
                "config_hash": self.config.hash(),
                "source": self.config.input,
            }),
        )?;
        println!("stored {}", csv_path.display());

        let ingested = self.ingest_text(&raw)?;
        let report_path = raw_dir.join(format!("{}.validation.json", self.config.symbol));
        write_json(
            &report_path,
            &json!({
                "meta": json_meta(&self.config),
                "report": ingested.report,
            }),
        )?;
        print_report_summary(&ingested.report);
        println!("stored {}", report_path.display());

        self.enforce_strict(&ingested.report)
    }

    /// Print every validation finding; exit nonzero under strict mode
    /// with errors.
    pub fn cmd_validate(&self) -> Result<(), CliError> {
        let ingested = self.ingest()?;
        print_report_summary(&ingested.report);
        for issue in &ingested.report.issues {
            let severity = match issue.severity {
                sutte_core::Severity::Warning => "warning",
                sutte_core::Severity::Error => "error",
            };
            println!(
                "  row {} [{severity}] {}: {}",
                issue.row, issue.field, issue.description
            );
        }
        self.enforce_strict(&ingested.report)
    }

    /// Compute and persist SUTTE%L, SUTTE%H, SUTTE-PRED, SMA, and MACD.
    pub fn cmd_indicators(&self) -> Result<(), CliError> {
        let series = self.load_series()?;
        for ind in self.all_indicators(&series)? {
            let path = self.persist_indicator(&ind)?;
            println!(
                "wrote {} ({} points from bar {})",
                path.display(),
                ind.len(),
                ind.valid_from()
            );
        }
        Ok(())
    }

    /// Detect crossovers and persist the signal list.
    pub fn cmd_signals(&self) -> Result<(), CliError> {
        let series = self.load_series()?;
        check_integrity(&indicator_paths(&self.config), &self.config)?;

        let (l, h) = self.sutte_pair(&series)?;
        let events = signal::detect_crossovers(&l, &h)?;

        let path = signals_path(&self.config);
        match self.config.output_format {
            OutputFormat::Csv => {
                let body = format!(
                    "{}{}",
                    text_header(&self.config, "#"),
                    signal::signals_to_csv(&events)
                );
                write_file(&path, &body)?;
            }
            OutputFormat::Json => {
                write_json(
                    &path,
                    &json!({
                        "meta": json_meta(&self.config),
                        "signals": signal::signals_to_json(&events),
                    }),
                )?;
            }
        }

        let buys = events.iter().filter(|e| e.kind == SignalKind::Buy).count();
        let sells = events.len() - buys;
        println!("{} signal(s): {buys} buy, {sells} sell", events.len());
        if let (Some(first), Some(last)) = (events.first(), events.last()) {
            println!("first {} {}, last {} {}",
                first.kind.as_str(), first.date, last.kind.as_str(), last.date);
        }
        println!("wrote {}", path.display());
        Ok(())
    }

    /// Score the requested methods over a common domain and print the
    /// comparison table.
    pub fn cmd_evaluate(&self, methods: &[MethodSpec]) -> Result<(), CliError> {
        let series = self.load_series()?;
        check_integrity(&indicator_paths(&self.config), &self.config)?;

        let reports = evaluation::compare_methods(&series, methods, self.config.horizon)?;

        let reports_json: Vec<serde_json::Value> = reports
            .iter()
            .map(|r| {
                let mut value = serde_json::to_value(r).expect("report serializes");
                for key in ["mad", "mse", "mape"] {
                    if let Some(x) = value[key].as_f64() {
                        value[key] = json!(sutte_core::numfmt::round_to_significant(x, 9));
                    }
                }
                value
            })
            .collect();
        let path = self.config.output_dir.join("evaluation").join("report.json");
        write_json(
            &path,
            &json!({
                "meta": json_meta(&self.config),
                "reports": reports_json,
            }),
        )?;

        print!("{}", evaluation::render_table(&reports));
        println!("wrote {}", path.display());
        Ok(())
    }

    /// Export the SVG chart and tidy long-format CSV.
    pub fn cmd_plot(&self) -> Result<(), CliError> {
        let series = self.load_series()?;
        let mut upstream = indicator_paths(&self.config);
        upstream.extend(artifacts::signals_check_paths(&self.config));
        check_integrity(&upstream, &self.config)?;

        let (l, h) = self.sutte_pair(&series)?;
        let pred = sutte::sutte_pred(&series)?;
        let events = signal::detect_crossovers(&l, &h)?;
        let input = ChartInput {
            series: &series,
            sutte_l: &l,
            sutte_h: &h,
            sutte_pred: &pred,
            signals: &events,
        };

        let comment = format!(
            "sutte {} config={} {}",
            crate::config::TOOL_VERSION,
            self.config.hash(),
            self.config.canonical()
        );
        let svg = chart::render_svg(&input, &comment);
        let csv = chart::render_tidy_csv(&input, &text_header(&self.config, "#"));

        let dir = self.config.output_dir.join("plot");
        let svg_path = dir.join("chart.svg");
        let csv_path = dir.join("chart.csv");
        write_file(&svg_path, &svg)?;
        write_file(&csv_path, &csv)?;
        println!("wrote {}", svg_path.display());
        println!("wrote {}", csv_path.display());
        Ok(())
    }
}

fn print_report_summary(report: &ValidationReport) {
    let errors = report
        .issues
        .iter()
        .filter(|i| i.severity == sutte_core::Severity::Error)
        .count();
    let warnings = report.issues.len() - errors;
    println!(
        "validation report for {}: {} rows checked, {warnings} warning(s), {errors} error(s)",
        report.symbol, report.rows_checked
    );
}

/// Parse the `--methods` list (e.g. `sutte,sma,macd`) into method
/// specs using the configured windows.
pub fn parse_methods(list: Option<&str>, config: &RunConfig) -> Result<Vec<MethodSpec>, CliError> {
    let Some(list) = list else {
        return Ok(default_methods(config));
    };
    let mut out = Vec::new();
    for item in list.split(',') {
        match item.trim().to_ascii_lowercase().as_str() {
            "sutte" | "sutte-pred" => out.push(MethodSpec::SuttePred),
            "sma" => out.push(MethodSpec::Sma {
                window: config.sma_window,
            }),
            "macd" => out.push(MethodSpec::Macd {
                short: config.macd_short,
                long: config.macd_long,
            }),
            other => {
                return Err(CliError::Usage(format!(
                    "unknown method '{other}' (expected sutte, sma, or macd)"
                )))
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("--methods list is empty".to_string()));
    }
    Ok(out)
}

pub fn default_methods(config: &RunConfig) -> Vec<MethodSpec> {
    vec![
        MethodSpec::SuttePred,
        MethodSpec::Sma {
            window: config.sma_window,
        },
        MethodSpec::Macd {
            short: config.macd_short,
            long: config.macd_long,
        },
    ]
}
