//! A named numeric series aligned to bar indices.
//!
//! Bar indices are 1-based and contiguous from `valid_from` (the first
//! index the indicator is defined at, after warm-up) to the last bar of
//! the source series. Each point carries the source bar's date, so a
//! series is self-describing when serialized or compared.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde_json::json;
use thiserror::Error;

use crate::numfmt::{format_value, round_to_significant};

#[derive(Debug, Error)]
pub enum IndicatorError {
    #[error("window length must be at least 1")]
    ZeroWindow,
    #[error("{name} needs at least {needed} bars, '{symbol}' has {actual}")]
    InsufficientBars {
        name: String,
        needed: usize,
        actual: usize,
        symbol: String,
    },
    #[error("short window {short} must be less than long window {long}")]
    WindowOrder { short: usize, long: usize },
    #[error("'{name}' produced a non-finite value at bar {index}")]
    NonFinite { name: String, index: usize },
    #[error("indicator series must contain at least one value")]
    EmptySeries,
    #[error("dates and values differ in length ({dates} vs {values})")]
    LengthMismatch { dates: usize, values: usize },
    #[error("valid_from must be a 1-based bar index (got 0)")]
    InvalidValidFrom,
}

/// Integer parameters of an indicator (window lengths), keyed by name.
pub type Params = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSeries {
    name: String,
    symbol: String,
    params: Params,
    valid_from: usize,
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

impl IndicatorSeries {
    pub fn new(
        name: impl Into<String>,
        symbol: impl Into<String>,
        params: Params,
        valid_from: usize,
        dates: Vec<NaiveDate>,
        values: Vec<f64>,
    ) -> Result<Self, IndicatorError> {
        let name = name.into();
        if valid_from == 0 {
            return Err(IndicatorError::InvalidValidFrom);
        }
        if values.is_empty() {
            return Err(IndicatorError::EmptySeries);
        }
        if dates.len() != values.len() {
            return Err(IndicatorError::LengthMismatch {
                dates: dates.len(),
                values: values.len(),
            });
        }
        if let Some(offset) = values.iter().position(|v| !v.is_finite()) {
            return Err(IndicatorError::NonFinite {
                name,
                index: valid_from + offset,
            });
        }
        Ok(IndicatorSeries {
            name,
            symbol: symbol.into(),
            params,
            valid_from,
            dates,
            values,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// First 1-based bar index at which the indicator is defined.
    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    /// Last 1-based bar index covered.
    pub fn last_index(&self) -> usize {
        self.valid_from + self.values.len() - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    /// Value at 1-based bar index `k`, or `None` outside the domain.
    pub fn value_at(&self, k: usize) -> Option<f64> {
        if k < self.valid_from {
            return None;
        }
        self.values.get(k - self.valid_from).copied()
    }

    /// Date at 1-based bar index `k`.
    pub fn date_at(&self, k: usize) -> Option<NaiveDate> {
        if k < self.valid_from {
            return None;
        }
        self.dates.get(k - self.valid_from).copied()
    }

    /// Iterate `(bar index, date, value)` in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, NaiveDate, f64)> + '_ {
        self.dates
            .iter()
            .zip(self.values.iter())
            .enumerate()
            .map(move |(i, (d, v))| (self.valid_from + i, *d, *v))
    }

    /// `index,date,value` CSV with artifact number formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,date,value\n");
        for (k, date, value) in self.iter() {
            out.push_str(&format!(
                "{},{},{}\n",
                k,
                date.format("%Y-%m-%d"),
                format_value(value)
            ));
        }
        out
    }

    /// JSON record `{name, params, valid_from, points: [{date, value}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let points: Vec<serde_json::Value> = self
            .iter()
            .map(|(_, date, value)| {
                json!({
                    "date": date.format("%Y-%m-%d").to_string(),
                    "value": round_to_significant(value, 9),
                })
            })
            .collect();
        json!({
            "name": self.name,
            "params": self.params,
            "valid_from": self.valid_from,
            "points": points,
        })
    }
}
