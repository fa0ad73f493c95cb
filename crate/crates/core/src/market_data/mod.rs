//! OHLC market-data ingestion: bar types, CSV parsing, validation,
//! HTTP fetching, and date windowing.
//!
//! A [`BarSeries`] is immutable once built and guarantees strictly
//! increasing dates, so every downstream consumer can index by bar
//! position without re-checking order. Indices in this crate are
//! 1-based "bar indices" (the first bar of a series is bar 1), matching
//! how warm-ups are described throughout the indicator modules.

mod csv;
mod fetch;
mod validate;

pub use csv::{parse_csv, ParsedCsv};
pub use fetch::{fetch_csv, FetchError};
pub use validate::{validate_series, Issue, Severity, ValidationReport};

use chrono::NaiveDate;
use serde::Serialize;
use thiserror::Error;

/// Errors from parsing and windowing bar data.
#[derive(Debug, Error)]
pub enum MarketDataError {
    #[error("missing required column '{0}' in CSV header")]
    MissingColumn(String),
    #[error("row {row}: cannot parse {field} from '{value}'")]
    ParseField {
        row: usize,
        field: &'static str,
        value: String,
    },
    #[error("duplicate date {0} in input")]
    DuplicateDate(NaiveDate),
    #[error("CSV contains no data rows")]
    EmptyData,
    #[error("series must contain at least one bar")]
    EmptySeries,
    #[error("bar dates must be strictly increasing (offending date: {0})")]
    UnorderedDates(NaiveDate),
    #[error("window start {start} is after window end {end}")]
    InvalidWindow { start: NaiveDate, end: NaiveDate },
    #[error("no bars of '{symbol}' between {start} and {end}")]
    EmptyWindow {
        symbol: String,
        start: NaiveDate,
        end: NaiveDate,
    },
}

/// One trading day's open/high/low/close prices plus optional volume.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bar {
    pub date: NaiveDate,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub volume: Option<u64>,
}

impl Bar {
    /// True when all prices are finite, strictly positive, and the
    /// high/low envelope contains both open and close.
    pub fn is_consistent(&self) -> bool {
        let prices = [self.open, self.high, self.low, self.close];
        prices.iter().all(|p| p.is_finite() && *p > 0.0)
            && self.low <= self.open.min(self.close)
            && self.high >= self.open.max(self.close)
            && self.low <= self.high
    }
}

/// Date-ordered, non-empty sequence of bars for one symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct BarSeries {
    symbol: String,
    bars: Vec<Bar>,
}

impl BarSeries {
    /// Build a series, rejecting empty input and out-of-order or
    /// duplicate dates.
    pub fn new(symbol: impl Into<String>, bars: Vec<Bar>) -> Result<Self, MarketDataError> {
        if bars.is_empty() {
            return Err(MarketDataError::EmptySeries);
        }
        for pair in bars.windows(2) {
            if pair[1].date <= pair[0].date {
                return Err(MarketDataError::UnorderedDates(pair[1].date));
            }
        }
        Ok(BarSeries {
            symbol: symbol.into(),
            bars,
        })
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Bar at 1-based index `k`, or `None` when out of range.
    pub fn bar(&self, k: usize) -> Option<&Bar> {
        if k == 0 {
            return None;
        }
        self.bars.get(k - 1)
    }

    /// Closing price at 1-based index `k`.
    pub fn close(&self, k: usize) -> Option<f64> {
        self.bar(k).map(|b| b.close)
    }

    pub fn first_date(&self) -> NaiveDate {
        self.bars[0].date
    }

    pub fn last_date(&self) -> NaiveDate {
        self.bars[self.bars.len() - 1].date
    }

    /// Bars with `start <= date <= end`, order preserved. An empty
    /// result is an error so "no data in window" is distinguishable
    /// from a successful parse.
    pub fn slice_by_date(
        &self,
        start: NaiveDate,
        end: NaiveDate,
    ) -> Result<BarSeries, MarketDataError> {
        if start > end {
            return Err(MarketDataError::InvalidWindow { start, end });
        }
        let bars: Vec<Bar> = self
            .bars
            .iter()
            .filter(|b| b.date >= start && b.date <= end)
            .cloned()
            .collect();
        if bars.is_empty() {
            return Err(MarketDataError::EmptyWindow {
                symbol: self.symbol.clone(),
                start,
                end,
            });
        }
        BarSeries::new(self.symbol.clone(), bars)
    }
}
