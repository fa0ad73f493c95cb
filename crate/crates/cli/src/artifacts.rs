//! Artifact persistence.
//!
//! Every generated file carries the tool version and config hash: text
//! artifacts (CSV, SVG) as leading comment lines, JSON artifacts in a
//! `meta` object. Commands use the embedded hash to refuse artifacts
//! left behind by a run with a different configuration; cache
//! invalidation is by config hash, never by timestamps.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use crate::config::{RunConfig, TOOL_VERSION};
use crate::error::CliError;

/// Slug used for an indicator's artifact file name, e.g.
/// `SUTTE%L -> sutte_l`, `MACD(12,26) -> macd_12_26`.
pub fn file_slug(name: &str) -> String {
    let mut slug = String::new();
    let mut last_was_sep = true;
    for c in name.chars() {
        if c.is_ascii_alphanumeric() {
            slug.push(c.to_ascii_lowercase());
            last_was_sep = false;
        } else if !last_was_sep {
            slug.push('_');
            last_was_sep = true;
        }
    }
    slug.trim_end_matches('_').to_string()
}

/// Two comment lines carrying version, hash, and the effective config.
pub fn text_header(config: &RunConfig, comment: &str) -> String {
    format!(
        "{comment} sutte {TOOL_VERSION} config={}\n{comment} {}\n",
        config.hash(),
        config.canonical()
    )
}

/// `meta` object embedded in JSON artifacts.
pub fn json_meta(config: &RunConfig) -> serde_json::Value {
    json!({
        "tool": "sutte",
        "version": TOOL_VERSION,
        "config_hash": config.hash(),
        "config": config.canonical(),
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .map_err(|e| CliError::io(&format!("creating {}", parent.display()), e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(&format!("writing {}", path.display()), e))
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Data(format!("serializing {}: {e}", path.display())))?;
    text.push('\n');
    write_file(path, &text)
}

/// Extract the config hash from an existing artifact, if recognizable.
pub fn embedded_hash(path: &Path) -> Option<String> {
    let text = fs::read_to_string(path).ok()?;
    if path.extension().is_some_and(|e| e == "json") {
        let value: serde_json::Value = serde_json::from_str(&text).ok()?;
        return value["meta"]["config_hash"].as_str().map(str::to_string);
    }
    let first = text.lines().next()?;
    let hash = first.split("config=").nth(1)?;
    Some(hash.trim().to_string())
}

/// Refuse to run over artifacts produced under a different config.
pub fn check_integrity(paths: &[PathBuf], config: &RunConfig) -> Result<(), CliError> {
    let current = config.hash();
    for path in paths {
        if !path.exists() {
            continue;
        }
        match embedded_hash(path) {
            Some(hash) if hash == current => {}
            Some(hash) => {
                return Err(CliError::Data(format!(
                    "cached artifact {} was produced under config {hash}, current config is {current}; \
                     remove it or rerun with the original configuration",
                    path.display()
                )))
            }
            None => {
                return Err(CliError::Data(format!(
                    "cached artifact {} carries no recognizable config header",
                    path.display()
                )))
            }
        }
    }
    Ok(())
}

/// Indicator artifact paths in both formats, used by downstream
/// commands for integrity checks (a stale file from another config is
/// a problem whichever format it was written in).
pub fn indicator_paths(config: &RunConfig) -> Vec<PathBuf> {
    let dir = config.output_dir.join("indicators");
    ["SUTTE%L", "SUTTE%H", "SUTTE-PRED"]
        .iter()
        .map(|n| file_slug(n))
        .chain([
            file_slug(&format!("SMA({})", config.sma_window)),
            file_slug(&format!("MACD({},{})", config.macd_short, config.macd_long)),
        ])
        .flat_map(|slug| {
            let dir = dir.clone();
            ["csv", "json"].map(move |ext| dir.join(format!("{slug}.{ext}")))
        })
        .collect()
}

/// Where the signals command writes in the configured format.
pub fn signals_path(config: &RunConfig) -> PathBuf {
    config
        .output_dir
        .join("signals")
        .join(format!("signals.{}", config.output_format.extension()))
}

/// Both possible signal artifact locations, for integrity checks.
pub fn signals_check_paths(config: &RunConfig) -> Vec<PathBuf> {
    ["csv", "json"]
        .iter()
        .map(|ext| config.output_dir.join("signals").join(format!("signals.{ext}")))
        .collect()
}

// --- raw-data cache ---------------------------------------------------------

pub struct RawCache {
    csv_path: PathBuf,
    meta_path: PathBuf,
}

impl RawCache {
    pub fn for_config(config: &RunConfig) -> RawCache {
        let dir = config.cache_dir();
        RawCache {
            csv_path: dir.join(format!("{}.csv", config.symbol)),
            meta_path: dir.join(format!("{}.meta.json", config.symbol)),
        }
    }

    /// Cached body, only when the stored meta matches the current
    /// config hash (hash mismatch means a different input/window/
    /// parameter set, so the cache entry is stale by definition).
    pub fn lookup(&self, config: &RunConfig) -> Option<String> {
        let meta: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&self.meta_path).ok()?).ok()?;
        if meta["config_hash"].as_str() != Some(config.hash().as_str()) {
            return None;
        }
        fs::read_to_string(&self.csv_path).ok()
    }

    pub fn store(&self, config: &RunConfig, body: &str) -> Result<(), CliError> {
        write_file(&self.csv_path, body)?;
        let meta = json!({
            "tool": "sutte",
            "version": TOOL_VERSION,
            "config_hash": config.hash(),
            "source": config.input,
        });
        write_json(&self.meta_path, &meta)
    }
}
