//! Yahoo-layout historical CSV parsing and the mirroring writer.
//!
//! Expected layout: `Date,Open,High,Low,Close,Adj Close,Volume` with a
//! header row, ISO-8601 dates, and '.' as the decimal separator.
//! Column order is free (headers are matched case-insensitively);
//! `Adj Close` and `Volume` are optional. `Adj Close` is parsed and
//! discarded: the indicator formulas consume raw closes.

use chrono::NaiveDate;

use super::validate::{Issue, Severity};
use super::{Bar, BarSeries, MarketDataError};

/// Result of a CSV parse: the series plus any rows that were dropped
/// (vendor "null" sentinels) as warning issues.
#[derive(Debug)]
pub struct ParsedCsv {
    pub series: BarSeries,
    pub issues: Vec<Issue>,
}

const PRICE_FIELDS: [&str; 4] = ["open", "high", "low", "close"];

/// Parse Yahoo-style historical CSV text into a [`BarSeries`].
///
/// Rows are re-sorted into ascending date order regardless of input
/// order. A row with the literal value `null` in any of the four price
/// columns is dropped and reported as a warning. Duplicate dates are a
/// hard error (silent merging would corrupt bar indexing).
pub fn parse_csv(text: &str, symbol: &str) -> Result<ParsedCsv, MarketDataError> {
    let mut lines = text.lines().enumerate();

    let header = loop {
        match lines.next() {
            Some((_, line)) if line.trim().is_empty() => continue,
            Some((_, line)) => break line,
            None => return Err(MarketDataError::EmptyData),
        }
    };
    let columns = header_index(header)?;

    let mut bars: Vec<Bar> = Vec::new();
    let mut issues: Vec<Issue> = Vec::new();

    'rows: for (line_idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line_idx + 1; // 1-based CSV line number, header is row 1
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();

        let field = |col: usize| fields.get(col).copied().unwrap_or("");

        // Drop-and-warn on the vendor "null" sentinel in price columns.
        for name in PRICE_FIELDS {
            if field(columns.get(name)) == "null" {
                issues.push(Issue {
                    row,
                    field: name.to_string(),
                    description: "price is 'null'; row dropped".to_string(),
                    severity: Severity::Warning,
                });
                continue 'rows;
            }
        }

        let date_text = field(columns.date);
        let date = NaiveDate::parse_from_str(date_text, "%Y-%m-%d").map_err(|_| {
            MarketDataError::ParseField {
                row,
                field: "date",
                value: date_text.to_string(),
            }
        })?;

        let price = |name: &'static str, col: usize| -> Result<f64, MarketDataError> {
            let raw = field(col);
            raw.parse::<f64>().map_err(|_| MarketDataError::ParseField {
                row,
                field: name,
                value: raw.to_string(),
            })
        };

        let open = price("open", columns.open)?;
        let high = price("high", columns.high)?;
        let low = price("low", columns.low)?;
        let close = price("close", columns.close)?;

        // Adj Close is validated when present but not kept.
        if let Some(col) = columns.adj_close {
            let raw = field(col);
            if !raw.is_empty() && raw != "null" {
                raw.parse::<f64>().map_err(|_| MarketDataError::ParseField {
                    row,
                    field: "adj close",
                    value: raw.to_string(),
                })?;
            }
        }

        let volume = match columns.volume {
            Some(col) => {
                let raw = field(col);
                if raw.is_empty() || raw == "null" {
                    None
                } else {
                    Some(raw.parse::<u64>().map_err(|_| MarketDataError::ParseField {
                        row,
                        field: "volume",
                        value: raw.to_string(),
                    })?)
                }
            }
            None => None,
        };

        bars.push(Bar {
            date,
            open,
            high,
            low,
            close,
            volume,
        });
    }

    if bars.is_empty() {
        return Err(MarketDataError::EmptyData);
    }

    bars.sort_by_key(|b| b.date);
    for pair in bars.windows(2) {
        if pair[1].date == pair[0].date {
            return Err(MarketDataError::DuplicateDate(pair[1].date));
        }
    }

    let series = BarSeries::new(symbol, bars)?;
    Ok(ParsedCsv { series, issues })
}

struct ColumnIndex {
    date: usize,
    open: usize,
    high: usize,
    low: usize,
    close: usize,
    adj_close: Option<usize>,
    volume: Option<usize>,
}

impl ColumnIndex {
    fn get(&self, name: &str) -> usize {
        match name {
            "open" => self.open,
            "high" => self.high,
            "low" => self.low,
            "close" => self.close,
            _ => unreachable!("unknown price field {name}"),
        }
    }
}

fn header_index(header: &str) -> Result<ColumnIndex, MarketDataError> {
    let mut date = None;
    let mut open = None;
    let mut high = None;
    let mut low = None;
    let mut close = None;
    let mut adj_close = None;
    let mut volume = None;

    for (i, raw) in header.split(',').enumerate() {
        match raw.trim().to_ascii_lowercase().as_str() {
            "date" => date = Some(i),
            "open" => open = Some(i),
            "high" => high = Some(i),
            "low" => low = Some(i),
            "close" => close = Some(i),
            "adj close" => adj_close = Some(i),
            "volume" => volume = Some(i),
            _ => {}
        }
    }

    let require = |col: Option<usize>, name: &str| {
        col.ok_or_else(|| MarketDataError::MissingColumn(name.to_string()))
    };
    Ok(ColumnIndex {
        date: require(date, "Date")?,
        open: require(open, "Open")?,
        high: require(high, "High")?,
        low: require(low, "Low")?,
        close: require(close, "Close")?,
        adj_close,
        volume,
    })
}

impl BarSeries {
    /// Serialize back to the input CSV layout. Prices use shortest
    /// round-trip formatting so `parse_csv(series.to_csv())` returns
    /// the bars unchanged; `Adj Close` mirrors the close.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("Date,Open,High,Low,Close,Adj Close,Volume\n");
        for b in self.bars() {
            let volume = b.volume.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                b.date.format("%Y-%m-%d"),
                b.open,
                b.high,
                b.low,
                b.close,
                b.close,
                volume,
            ));
        }
        out
    }
}
