//! Crossover detection between the SUTTE%L and SUTTE%H curves.
//!
//! A Buy fires at the bar where %L completes a crossing above %H, a
//! Sell where %H completes a crossing above %L. Exact equality defers
//! the event: the crossing completes only at the first subsequent
//! strict inequality, attributed to that later bar. An event at bar `k`
//! uses only values at `k-1` and `k` (no look-ahead), and the first bar
//! of the domain never hosts an event, so a series that begins already
//! in one regime emits no synthetic opening signal.

use chrono::NaiveDate;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::indicators::IndicatorSeries;
use crate::numfmt::format_value;
use crate::sutte::{SUTTE_H, SUTTE_L};

#[derive(Debug, Error)]
pub enum SignalError {
    #[error("expected a series named '{expected}', got '{actual}'")]
    UnexpectedSeries {
        expected: &'static str,
        actual: String,
    },
    #[error("series domains differ: {0}")]
    DomainMismatch(String),
    #[error("bar index {index} is outside the domain {from}..={to}")]
    IndexOutOfDomain {
        index: usize,
        from: usize,
        to: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignalKind {
    Buy,
    Sell,
}

impl SignalKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignalKind::Buy => "buy",
            SignalKind::Sell => "sell",
        }
    }
}

/// A dated buy or sell event at the bar where a crossing completed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignalEvent {
    pub bar_index: usize,
    pub date: NaiveDate,
    pub kind: SignalKind,
    /// SUTTE%L at the crossing bar.
    pub l_value: f64,
    /// SUTTE%H at the crossing bar.
    pub h_value: f64,
}

/// Which curve currently dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Bullish,
    Bearish,
    Neutral,
}

fn check_pair(l: &IndicatorSeries, h: &IndicatorSeries) -> Result<(), SignalError> {
    if l.name() != SUTTE_L {
        return Err(SignalError::UnexpectedSeries {
            expected: SUTTE_L,
            actual: l.name().to_string(),
        });
    }
    if h.name() != SUTTE_H {
        return Err(SignalError::UnexpectedSeries {
            expected: SUTTE_H,
            actual: h.name().to_string(),
        });
    }
    if l.valid_from() != h.valid_from() || l.len() != h.len() {
        return Err(SignalError::DomainMismatch(format!(
            "{} covers {}..={} ({} points), {} covers {}..={} ({} points)",
            SUTTE_L,
            l.valid_from(),
            l.last_index(),
            l.len(),
            SUTTE_H,
            h.valid_from(),
            h.last_index(),
            h.len(),
        )));
    }
    if l.dates() != h.dates() {
        return Err(SignalError::DomainMismatch(
            "curves were computed from different bar series".to_string(),
        ));
    }
    Ok(())
}

fn sign(l: f64, h: f64) -> i8 {
    if l > h {
        1
    } else if l < h {
        -1
    } else {
        0
    }
}

/// Detect completed %L/%H crossings and emit alternating buy/sell
/// events, in ascending bar order.
pub fn detect_crossovers(
    l: &IndicatorSeries,
    h: &IndicatorSeries,
) -> Result<Vec<SignalEvent>, SignalError> {
    detect_crossovers_confirmed(l, h, 0)
}

/// Crossover detection with a confirmation filter: the new regime must
/// hold for `confirm_bars` additional strict bars before the event is
/// emitted, attributed to the confirming bar. Equality bars pause the
/// count; a reversal back to the standing regime cancels the candidate.
/// `confirm_bars = 0` emits at the crossing bar itself.
pub fn detect_crossovers_confirmed(
    l: &IndicatorSeries,
    h: &IndicatorSeries,
    confirm_bars: usize,
) -> Result<Vec<SignalEvent>, SignalError> {
    check_pair(l, h)?;

    let mut events = Vec::new();
    // Last sign that was established (by the opening bar or a confirmed
    // crossing); 0 when the series has only shown equality so far.
    let mut standing: i8 = 0;
    let mut candidate: Option<(i8, usize)> = None;

    for (i, ((&lv, &hv), &date)) in l
        .values()
        .iter()
        .zip(h.values())
        .zip(l.dates())
        .enumerate()
    {
        let k = l.valid_from() + i;
        let s = sign(lv, hv);
        if i == 0 {
            standing = s;
            continue;
        }
        if s == 0 {
            continue;
        }
        if s == standing {
            candidate = None;
            continue;
        }
        let run = match candidate {
            Some((cs, run)) if cs == s => run + 1,
            _ => 1,
        };
        if run > confirm_bars {
            events.push(SignalEvent {
                bar_index: k,
                date,
                kind: if s > 0 { SignalKind::Buy } else { SignalKind::Sell },
                l_value: lv,
                h_value: hv,
            });
            standing = s;
            candidate = None;
        } else {
            candidate = Some((s, run));
        }
    }
    Ok(events)
}

/// Regime at 1-based bar index `k`: Bullish when %L is above %H,
/// Bearish when %H is above %L, Neutral on exact equality.
pub fn regime_at(
    l: &IndicatorSeries,
    h: &IndicatorSeries,
    k: usize,
) -> Result<Regime, SignalError> {
    let out_of_domain = |s: &IndicatorSeries| SignalError::IndexOutOfDomain {
        index: k,
        from: s.valid_from(),
        to: s.last_index(),
    };
    let lv = l.value_at(k).ok_or_else(|| out_of_domain(l))?;
    let hv = h.value_at(k).ok_or_else(|| out_of_domain(h))?;
    Ok(match sign(lv, hv) {
        1 => Regime::Bullish,
        -1 => Regime::Bearish,
        _ => Regime::Neutral,
    })
}

/// `date,kind,sutte_l,sutte_h` CSV rows.
pub fn signals_to_csv(events: &[SignalEvent]) -> String {
    let mut out = String::from("date,kind,sutte_l,sutte_h\n");
    for e in events {
        out.push_str(&format!(
            "{},{},{},{}\n",
            e.date.format("%Y-%m-%d"),
            e.kind.as_str(),
            format_value(e.l_value),
            format_value(e.h_value),
        ));
    }
    out
}

/// JSON array of event records.
pub fn signals_to_json(events: &[SignalEvent]) -> serde_json::Value {
    serde_json::Value::Array(
        events
            .iter()
            .map(|e| {
                json!({
                    "bar_index": e.bar_index,
                    "date": e.date.format("%Y-%m-%d").to_string(),
                    "kind": e.kind.as_str(),
                    "sutte_l": crate::numfmt::round_to_significant(e.l_value, 9),
                    "sutte_h": crate::numfmt::round_to_significant(e.h_value, 9),
                })
            })
            .collect(),
    )
}
