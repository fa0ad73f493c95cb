//! Bar-level consistency checks.
//!
//! Findings are reported, not thrown: real vendor feeds violate OHLC
//! consistency occasionally, so the default severity is a warning and
//! strict mode upgrades every finding to an error.

use serde::Serialize;

use super::BarSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

/// One finding against one bar (or CSV row).
#[derive(Debug, Clone, Serialize)]
pub struct Issue {
    /// 1-based bar index for validation findings; CSV line number for
    /// parse-time findings.
    pub row: usize,
    pub field: String,
    pub description: String,
    pub severity: Severity,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub symbol: String,
    pub issues: Vec<Issue>,
    pub rows_checked: usize,
}

impl ValidationReport {
    pub fn has_errors(&self) -> bool {
        self.issues.iter().any(|i| i.severity == Severity::Error)
    }

    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Record every bar-invariant violation in the series. Severity is
/// `Error` under strict mode, `Warning` otherwise.
pub fn validate_series(series: &BarSeries, strict: bool) -> ValidationReport {
    let severity = if strict {
        Severity::Error
    } else {
        Severity::Warning
    };
    let mut issues = Vec::new();
    let mut push = |row: usize, field: &str, description: String| {
        issues.push(Issue {
            row,
            field: field.to_string(),
            description,
            severity,
        });
    };

    for (i, bar) in series.bars().iter().enumerate() {
        let row = i + 1;
        for (field, price) in [
            ("open", bar.open),
            ("high", bar.high),
            ("low", bar.low),
            ("close", bar.close),
        ] {
            if !price.is_finite() {
                push(row, field, format!("non-finite price {price}"));
            } else if price <= 0.0 {
                push(row, field, format!("non-positive price {price}"));
            }
        }
        if bar.high < bar.open {
            push(row, "high", "high < open".to_string());
        }
        if bar.high < bar.close {
            push(row, "high", "high < close".to_string());
        }
        if bar.low > bar.open {
            push(row, "low", "low > open".to_string());
        }
        if bar.low > bar.close {
            push(row, "low", "low > close".to_string());
        }
        if bar.low > bar.high {
            push(row, "low", "low > high".to_string());
        }
    }

    ValidationReport {
        symbol: series.symbol().to_string(),
        issues,
        rows_checked: series.len(),
    }
}
