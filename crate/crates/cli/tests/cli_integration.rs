//! End-to-end tests of the `sutte` binary: exit codes, artifact
//! layout, determinism, caching, and the per-command contracts.

use std::fs;
use std::io::{Read, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::thread;

const BIN: &str = env!("CARGO_BIN_EXE_sutte");

const FIXTURE_60: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/../core/tests/fixtures/fixture_60.csv"
);

/// Close pinned to the top of each bar's range for three bars, then to
/// the bottom: the Sutte curves cross exactly once (bearish), at bar 4.
const ONE_SELL_CROSS: &str = "\
Date,Open,High,Low,Close,Adj Close,Volume
2016-09-01,100,100.5,94,100,100,1000
2016-09-02,100,104.5,98,104,104,1000
2016-09-05,104,105.5,99,105,105,1000
2016-09-06,105,105.5,95.5,96,96,1000
2016-09-07,96,101.5,95,95.5,95.5,1000
2016-09-08,95.5,100,94,94.5,94.5,1000
";

/// The mirror image: close in the lower half of the range for three
/// bars, then in the upper half, for one bullish crossing at bar 4.
const ONE_BUY_CROSS: &str = "\
Date,Open,High,Low,Close,Adj Close,Volume
2016-09-01,100,106,99.5,100,100,1000
2016-09-02,100,109,99.5,104,104,1000
2016-09-05,104,110,103.5,105,105,1000
2016-09-06,105,105.5,86,96,96,1000
2016-09-07,96,96.5,86,95.5,95.5,1000
2016-09-08,95.5,96,86,94.5,94.5,1000
";

/// Every close at the top of its range: one regime, no crossings.
const MONOTONE_REGIME: &str = "\
Date,Open,High,Low,Close,Adj Close,Volume
2016-09-01,100,100.5,94,100,100,1000
2016-09-02,100,104.5,98,104,104,1000
2016-09-05,104,105.5,99,105,105,1000
2016-09-06,105,108.5,101,108,108,1000
2016-09-07,108,110.5,104,110,110,1000
";

const INCONSISTENT_ROW: &str = "\
Date,Open,High,Low,Close,Adj Close,Volume
2016-09-01,100,110,90,105,105,1000
2016-09-02,95,90,85,105,105,1000
2016-09-05,104,111,99,106,106,1000
";

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Workspace {
        Workspace {
            dir: tempfile::tempdir().expect("create temp dir"),
        }
    }

    fn with_fixture(fixture: &str) -> Workspace {
        let ws = Workspace::new();
        ws.write("input.csv", fixture);
        ws
    }

    fn with_fixture_60() -> Workspace {
        let ws = Workspace::new();
        fs::copy(FIXTURE_60, ws.path().join("input.csv")).expect("copy fixture");
        ws
    }

    fn path(&self) -> &Path {
        self.dir.path()
    }

    fn write(&self, name: &str, contents: &str) {
        fs::write(self.path().join(name), contents).expect("write fixture");
    }

    fn read(&self, rel: &str) -> String {
        fs::read_to_string(self.path().join(rel))
            .unwrap_or_else(|e| panic!("reading {rel}: {e}"))
    }

    fn exists(&self, rel: &str) -> bool {
        self.path().join(rel).exists()
    }

    /// Run `sutte` with cwd inside the workspace.
    fn run(&self, args: &[&str]) -> Output {
        Command::new(BIN)
            .args(args)
            .current_dir(self.path())
            .output()
            .expect("spawn sutte")
    }

    fn run_env(&self, args: &[&str], key: &str, value: &str) -> Output {
        Command::new(BIN)
            .args(args)
            .env(key, value)
            .current_dir(self.path())
            .output()
            .expect("spawn sutte")
    }
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

fn assert_exit(output: &Output, code: i32) {
    assert_eq!(
        output.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        stdout(output),
        stderr(output)
    );
}

fn base_args<'a>(rest: &[&'a str]) -> Vec<&'a str> {
    let mut args = rest.to_vec();
    args.extend(["--input", "input.csv", "--symbol", "T", "--out", "out"]);
    args
}

// --- exit codes --------------------------------------------------------------

#[test]
fn unknown_flag_is_a_usage_error() {
    let ws = Workspace::with_fixture(MONOTONE_REGIME);
    assert_exit(&ws.run(&["indicators", "--bogus"]), 1);
}

#[test]
fn missing_required_flags_is_a_usage_error() {
    let ws = Workspace::new();
    assert_exit(&ws.run(&["indicators"]), 1);
}

#[test]
fn inverted_window_is_a_usage_error() {
    let ws = Workspace::with_fixture(MONOTONE_REGIME);
    let args = base_args(&["indicators", "--start", "2016-09-07", "--end", "2016-09-01"]);
    assert_exit(&ws.run(&args), 1);
}

#[test]
fn help_and_version_exit_zero() {
    let ws = Workspace::new();
    assert_exit(&ws.run(&["--help"]), 0);
    assert_exit(&ws.run(&["--version"]), 0);
}

#[test]
fn missing_input_file_is_a_data_error() {
    let ws = Workspace::new();
    assert_exit(&ws.run(&base_args(&["indicators"])), 2);
}

#[test]
fn unreachable_url_is_a_network_error() {
    let ws = Workspace::new();
    let output = ws.run(&[
        "fetch",
        "--input",
        "http://127.0.0.1:9/nothing.csv",
        "--symbol",
        "T",
        "--out",
        "out",
        "--timeout-secs",
        "2",
    ]);
    assert_exit(&output, 3);
    assert!(stderr(&output).contains("network"), "{}", stderr(&output));
}

// --- fetch / validate ---------------------------------------------------------

#[test]
fn fetch_from_file_persists_raw_and_report() {
    let ws = Workspace::with_fixture_60();
    let output = ws.run(&base_args(&["fetch"]));
    assert_exit(&output, 0);
    assert_eq!(ws.read("out/raw/T.csv"), ws.read("input.csv"));
    let report = ws.read("out/raw/T.validation.json");
    assert!(report.contains("\"rows_checked\": 60"));
    assert!(report.contains("config_hash"));
}

#[test]
fn strict_fetch_rejects_inconsistent_bar_but_persists_the_report() {
    let ws = Workspace::with_fixture(INCONSISTENT_ROW);
    let output = ws.run(&base_args(&["fetch", "--strict"]));
    assert_exit(&output, 2);
    assert!(ws.exists("out/raw/T.validation.json"));
    assert!(stdout(&output).contains("error(s)"));
}

#[test]
fn lenient_fetch_warns_but_succeeds() {
    let ws = Workspace::with_fixture(INCONSISTENT_ROW);
    let output = ws.run(&base_args(&["fetch"]));
    assert_exit(&output, 0);
    assert!(stdout(&output).contains("warning"));
}

#[test]
fn validate_lists_findings() {
    let ws = Workspace::with_fixture(INCONSISTENT_ROW);
    let output = ws.run(&base_args(&["validate"]));
    assert_exit(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("high < close"), "{text}");
    assert_exit(&ws.run(&base_args(&["validate", "--strict"])), 2);
}

// --- fetch over HTTP ------------------------------------------------------------

fn serve_fixture(times: usize) -> (String, thread::JoinHandle<usize>) {
    let body = fs::read_to_string(FIXTURE_60).unwrap();
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let handle = thread::spawn(move || {
        let mut served = 0;
        for _ in 0..times {
            listener.set_nonblocking(false).unwrap();
            let Ok((mut stream, _)) = listener.accept() else { break };
            let mut buf = [0u8; 4096];
            let _ = stream.read(&mut buf);
            let response = format!(
                "HTTP/1.1 200 OK\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{}",
                body.len(),
                body
            );
            let _ = stream.write_all(response.as_bytes());
            served += 1;
        }
        served
    });
    (format!("http://{addr}/T.csv"), handle)
}

#[test]
fn fetch_from_url_caches_by_config_hash() {
    let ws = Workspace::new();
    let (url, handle) = serve_fixture(1);
    let cache = ws.path().join("cache");
    let cache_str = cache.to_str().unwrap().to_string();

    let args = ["fetch", "--input", &url, "--symbol", "T", "--out", "out"];
    let output = ws.run_env(&args, "SUTTE_CACHE_DIR", &cache_str);
    assert_exit(&output, 0);
    assert!(cache.join("T.csv").exists(), "cache populated");
    assert!(ws.exists("out/raw/T.csv"));

    // Second run must hit the cache: the server only answers once.
    let output = ws.run_env(&args, "SUTTE_CACHE_DIR", &cache_str);
    assert_exit(&output, 0);
    assert_eq!(handle.join().unwrap(), 1, "exactly one HTTP request served");
}

#[test]
fn http_404_is_a_network_error() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    thread::spawn(move || {
        if let Ok((mut stream, _)) = listener.accept() {
            let mut buf = [0u8; 1024];
            let _ = stream.read(&mut buf);
            let _ = stream.write_all(
                b"HTTP/1.1 404 Not Found\r\nContent-Length: 0\r\nConnection: close\r\n\r\n",
            );
        }
    });
    let ws = Workspace::new();
    let url = format!("http://{addr}/missing.csv");
    let output = ws.run(&["fetch", "--input", &url, "--symbol", "T", "--out", "out"]);
    assert_exit(&output, 3);
    assert!(stderr(&output).contains("404"), "{}", stderr(&output));
    assert!(!ws.exists("out/raw/T.csv"), "no partial artifact");
}

// --- indicators -----------------------------------------------------------------

#[test]
fn indicators_writes_five_files_with_warmup_metadata() {
    let ws = Workspace::with_fixture_60();
    let output = ws.run(&base_args(&["indicators"]));
    assert_exit(&output, 0);
    for file in [
        "out/indicators/sutte_l.csv",
        "out/indicators/sutte_h.csv",
        "out/indicators/sutte_pred.csv",
        "out/indicators/sma_5.csv",
        "out/indicators/macd_12_26.csv",
    ] {
        assert!(ws.exists(file), "{file} missing");
    }
    let sutte_l = ws.read("out/indicators/sutte_l.csv");
    let first_row = sutte_l.lines().nth(3).unwrap();
    assert!(first_row.starts_with("2,"), "valid_from 2, got {first_row}");
}

#[test]
fn indicators_on_one_bar_names_the_failing_series() {
    let ws = Workspace::with_fixture(
        "Date,Open,High,Low,Close,Adj Close,Volume\n2016-09-01,100,101,99,100,100,10\n",
    );
    let output = ws.run(&base_args(&["indicators"]));
    assert_exit(&output, 2);
    assert!(stderr(&output).contains("SUTTE%L"), "{}", stderr(&output));
}

#[test]
fn rerunning_indicators_produces_byte_identical_files() {
    let ws = Workspace::with_fixture_60();
    assert_exit(&ws.run(&base_args(&["indicators"])), 0);
    let first = ws.read("out/indicators/sutte_pred.csv");
    assert_exit(&ws.run(&base_args(&["indicators"])), 0);
    assert_eq!(ws.read("out/indicators/sutte_pred.csv"), first);
}

#[test]
fn json_format_indicators_carry_meta() {
    let ws = Workspace::with_fixture_60();
    assert_exit(&ws.run(&base_args(&["indicators", "--format", "json"])), 0);
    let value: serde_json::Value =
        serde_json::from_str(&ws.read("out/indicators/sma_5.json")).unwrap();
    assert_eq!(value["name"], "SMA(5)");
    assert_eq!(value["valid_from"], 5);
    assert_eq!(value["params"]["n"], 5);
    assert!(value["meta"]["config_hash"].is_string());
    assert_eq!(value["points"].as_array().unwrap().len(), 56);
}

// --- signals ----------------------------------------------------------------------

#[test]
fn engineered_cross_emits_exactly_one_sell() {
    let ws = Workspace::with_fixture(ONE_SELL_CROSS);
    let output = ws.run(&base_args(&["signals"]));
    assert_exit(&output, 0);
    assert!(stdout(&output).contains("1 signal(s): 0 buy, 1 sell"));
    let csv = ws.read("out/signals/signals.csv");
    let rows: Vec<&str> = csv.lines().skip(3).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("2016-09-06,sell,"), "{}", rows[0]);
}

#[test]
fn engineered_cross_emits_exactly_one_buy() {
    let ws = Workspace::with_fixture(ONE_BUY_CROSS);
    let output = ws.run(&base_args(&["signals"]));
    assert_exit(&output, 0);
    assert!(stdout(&output).contains("1 signal(s): 1 buy, 0 sell"), "{}", stdout(&output));
    let csv = ws.read("out/signals/signals.csv");
    let rows: Vec<&str> = csv.lines().skip(3).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("2016-09-06,buy,"), "{}", rows[0]);
}

#[test]
fn monotone_regime_emits_no_signals() {
    let ws = Workspace::with_fixture(MONOTONE_REGIME);
    let output = ws.run(&base_args(&["signals"]));
    assert_exit(&output, 0);
    assert!(stdout(&output).contains("0 signal(s)"));
}

#[test]
fn signals_refuses_indicator_artifacts_from_another_config() {
    let ws = Workspace::with_fixture_60();
    assert_exit(&ws.run(&base_args(&["indicators"])), 0);
    // Same output dir, different indicator parameters: the cached
    // sutte files now carry a stale hash.
    let output = ws.run(&base_args(&["signals", "--sma-window", "9"]));
    assert_exit(&output, 2);
    assert!(stderr(&output).contains("config"), "{}", stderr(&output));
}

#[test]
fn integrity_check_sees_artifacts_in_either_format() {
    let ws = Workspace::with_fixture_60();
    assert_exit(&ws.run(&base_args(&["indicators"])), 0);
    // Stale CSV artifacts are caught even when the new run writes JSON.
    let output = ws.run(&base_args(&["signals", "--sma-window", "9", "--format", "json"]));
    assert_exit(&output, 2);
    // Matching config passes regardless of the format switch.
    assert_exit(&ws.run(&base_args(&["signals", "--format", "json"])), 0);
}

// --- evaluate ----------------------------------------------------------------------

#[test]
fn evaluate_prints_three_rows_with_equal_n() {
    let ws = Workspace::with_fixture_60();
    let output = ws.run(&base_args(&["evaluate"]));
    assert_exit(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("SUTTE-PRED"));
    assert!(text.contains("SMA(5)"));
    assert!(text.contains("MACD(12,26)"));
    let n_columns: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("SUTTE-PRED") || l.starts_with("SMA") || l.starts_with("MACD"))
        .map(|l| l.rsplit('|').next().unwrap().trim())
        .collect();
    assert_eq!(n_columns, vec!["55", "55", "55"]);
}

#[test]
fn evaluate_single_method_prints_one_row() {
    let ws = Workspace::with_fixture_60();
    let output = ws.run(&base_args(&["evaluate", "--methods", "sutte"]));
    assert_exit(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("SUTTE-PRED"));
    assert!(!text.contains("SMA(5)"));
    let value: serde_json::Value =
        serde_json::from_str(&ws.read("out/evaluation/report.json")).unwrap();
    assert_eq!(value["reports"].as_array().unwrap().len(), 1);
}

#[test]
fn evaluate_unknown_method_is_a_usage_error() {
    let ws = Workspace::with_fixture_60();
    assert_exit(&ws.run(&base_args(&["evaluate", "--methods", "rsi"])), 1);
}

#[test]
fn evaluate_constant_prices_scores_sutte_and_sma_at_zero() {
    let mut flat = String::from("Date,Open,High,Low,Close,Adj Close,Volume\n");
    for day in 1..=28 {
        flat.push_str(&format!("2016-09-{day:02},100,100,100,100,100,1000\n"));
    }
    let ws = Workspace::with_fixture(&flat);
    let output = ws.run(&base_args(&["evaluate", "--methods", "sutte,sma"]));
    assert_exit(&output, 0);
    for line in stdout(&output)
        .lines()
        .filter(|l| l.starts_with("SUTTE-PRED") || l.starts_with("SMA"))
    {
        let cells: Vec<&str> = line.split('|').map(str::trim).collect();
        assert_eq!(&cells[1..4], &["0", "0", "0"], "{line}");
    }
}

// --- plot --------------------------------------------------------------------------

#[test]
fn plot_emits_polylines_markers_and_tidy_csv() {
    let ws = Workspace::with_fixture(ONE_SELL_CROSS);
    let output = ws.run(&base_args(&["plot"]));
    assert_exit(&output, 0);
    let svg = ws.read("out/plot/chart.svg");
    assert_eq!(svg.matches("<polyline").count(), 4);
    assert_eq!(svg.matches("signal-marker").count(), 1);
    assert!(svg.contains("date-label"));
    let tidy = ws.read("out/plot/chart.csv");
    assert_eq!(tidy.lines().nth(2), Some("series,date,value"));
    assert!(tidy.contains("close,2016-09-01,100"));
}

#[test]
fn plot_with_empty_window_writes_nothing() {
    let ws = Workspace::with_fixture(MONOTONE_REGIME);
    let args = base_args(&["plot", "--start", "2001-01-01", "--end", "2001-12-31"]);
    let output = ws.run(&args);
    assert_exit(&output, 2);
    assert!(!ws.exists("out/plot"), "no plot directory on failure");
}

#[test]
fn plot_without_signals_is_still_a_valid_chart() {
    let ws = Workspace::with_fixture(MONOTONE_REGIME);
    assert_exit(&ws.run(&base_args(&["plot"])), 0);
    let svg = ws.read("out/plot/chart.svg");
    assert_eq!(svg.matches("signal-marker").count(), 0);
    assert_eq!(svg.matches("<polyline").count(), 4);
    assert!(svg.contains("</svg>"));
}

// --- config file ----------------------------------------------------------------------

#[test]
fn config_file_supplies_values_and_flags_override() {
    let ws = Workspace::with_fixture_60();
    ws.write(
        "run.conf",
        "input = input.csv\nsymbol = CONF\nsma_window = 7\noutput_dir = out\n",
    );
    let output = ws.run(&["indicators", "--config", "run.conf", "--sma-window", "3"]);
    assert_exit(&output, 0);
    assert!(ws.exists("out/indicators/sma_3.csv"), "flag overrides file");

    let text = ws.read("out/indicators/sma_3.csv");
    assert!(text.contains("symbol=CONF"));
}

// --- windowing --------------------------------------------------------------------------

#[test]
fn date_window_restricts_the_computation() {
    let ws = Workspace::with_fixture_60();
    let args = base_args(&["indicators", "--start", "2016-02-01", "--end", "2016-02-29"]);
    assert_exit(&ws.run(&args), 0);
    let sutte_l = ws.read("out/indicators/sutte_l.csv");
    let dates: Vec<&str> = sutte_l
        .lines()
        .skip(3)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert!(dates.first().unwrap() >= &"2016-02-01");
    assert!(dates.last().unwrap() <= &"2016-02-29");
}

#[test]
fn full_pipeline_from_a_single_workspace() {
    let ws = Workspace::with_fixture_60();
    for cmd in ["fetch", "indicators", "signals", "evaluate", "plot"] {
        assert_exit(&ws.run(&base_args(&[cmd])), 0);
    }
    let expected: Vec<PathBuf> = [
        "out/raw/T.csv",
        "out/raw/T.meta.json",
        "out/raw/T.validation.json",
        "out/indicators/sutte_l.csv",
        "out/indicators/sutte_h.csv",
        "out/indicators/sutte_pred.csv",
        "out/indicators/sma_5.csv",
        "out/indicators/macd_12_26.csv",
        "out/signals/signals.csv",
        "out/evaluation/report.json",
        "out/plot/chart.svg",
        "out/plot/chart.csv",
    ]
    .iter()
    .map(PathBuf::from)
    .collect();
    for path in expected {
        assert!(ws.exists(path.to_str().unwrap()), "{}", path.display());
    }
}
