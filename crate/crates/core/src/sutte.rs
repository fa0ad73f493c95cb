//! The Sutte Indicator curves.
//!
//! For bar `k` (1-based, `k >= 2`) with closes `C`, highs `H`, lows `L`:
//!
//! ```text
//! SUTTE%L    = (C_k + C_{k-1}) / 2 + (C_k - L_k)
//! SUTTE%H    = (C_k + C_{k-1}) / 2 + (H_k - C_k)
//! SUTTE-PRED = (SUTTE%L + SUTTE%H) / 2
//! ```
//!
//! All three start at bar 2; there is no back-fill for the first bar.
//! SUTTE-PRED is computed as the literal mean of the two curve values,
//! so `sutte_pred == (sutte_l + sutte_h) / 2` holds bit-for-bit.
//!
//! The curve difference collapses to `SUTTE%L - SUTTE%H = 2*C_k - H_k -
//! L_k`: %L is above %H exactly when the close sits in the upper half
//! of the bar's range, which is what makes the crossover rule track
//! price direction. Bars that violate OHLC consistency (possible under
//! lenient ingestion) are computed over verbatim; that sign relation
//! may then fail.

use crate::indicators::{IndicatorError, IndicatorSeries, Params};
use crate::market_data::{Bar, BarSeries};

pub const SUTTE_L: &str = "SUTTE%L";
pub const SUTTE_H: &str = "SUTTE%H";
pub const SUTTE_PRED: &str = "SUTTE-PRED";

fn two_day_midpoint(prev_close: f64, bar: &Bar) -> f64 {
    (bar.close + prev_close) / 2.0
}

fn l_value(prev_close: f64, bar: &Bar) -> f64 {
    two_day_midpoint(prev_close, bar) + (bar.close - bar.low)
}

fn h_value(prev_close: f64, bar: &Bar) -> f64 {
    two_day_midpoint(prev_close, bar) + (bar.high - bar.close)
}

fn build(
    series: &BarSeries,
    name: &'static str,
    value: impl Fn(f64, &Bar) -> f64,
) -> Result<IndicatorSeries, IndicatorError> {
    let bars = series.bars();
    if bars.len() < 2 {
        return Err(IndicatorError::InsufficientBars {
            name: name.to_string(),
            needed: 2,
            actual: bars.len(),
            symbol: series.symbol().to_string(),
        });
    }
    let mut dates = Vec::with_capacity(bars.len() - 1);
    let mut values = Vec::with_capacity(bars.len() - 1);
    for pair in bars.windows(2) {
        dates.push(pair[1].date);
        values.push(value(pair[0].close, &pair[1]));
    }
    IndicatorSeries::new(name, series.symbol(), Params::new(), 2, dates, values)
}

/// Lower Sutte curve: two-day close midpoint plus the close's distance
/// above the bar's low.
pub fn sutte_l(series: &BarSeries) -> Result<IndicatorSeries, IndicatorError> {
    build(series, SUTTE_L, l_value)
}

/// Upper Sutte curve: two-day close midpoint plus the high's distance
/// above the close.
pub fn sutte_h(series: &BarSeries) -> Result<IndicatorSeries, IndicatorError> {
    build(series, SUTTE_H, h_value)
}

/// Point forecast: the mean of the two curves, equivalently
/// `(C_k + C_{k-1})/2 + (H_k - L_k)/2`.
pub fn sutte_pred(series: &BarSeries) -> Result<IndicatorSeries, IndicatorError> {
    build(series, SUTTE_PRED, |prev_close, bar| {
        (l_value(prev_close, bar) + h_value(prev_close, bar)) / 2.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;
    use crate::market_data::test_util::series_from_closes;

    fn series(bars: &[(f64, f64, f64, f64)]) -> BarSeries {
        let start = NaiveDate::from_ymd_opt(2016, 9, 1).unwrap();
        let bars = bars
            .iter()
            .enumerate()
            .map(|(i, &(open, high, low, close))| Bar {
                date: start + chrono::Duration::days(i as i64),
                open,
                high,
                low,
                close,
                volume: None,
            })
            .collect();
        BarSeries::new("T", bars).unwrap()
    }

    #[test]
    fn flat_bars_collapse_to_the_price() {
        let s = series(&[(100.0, 100.0, 100.0, 100.0), (100.0, 100.0, 100.0, 100.0)]);
        assert_eq!(sutte_l(&s).unwrap().value_at(2), Some(100.0));
        assert_eq!(sutte_h(&s).unwrap().value_at(2), Some(100.0));
        assert_eq!(sutte_pred(&s).unwrap().value_at(2), Some(100.0));
    }

    #[test]
    fn hand_evaluated_bar() {
        // C_{k-1} = 10, C_k = 12, H_k = 13, L_k = 9
        let s = series(&[(10.0, 10.5, 9.5, 10.0), (10.0, 13.0, 9.0, 12.0)]);
        assert_eq!(sutte_l(&s).unwrap().value_at(2), Some(14.0));
        assert_eq!(sutte_h(&s).unwrap().value_at(2), Some(12.0));
        assert_eq!(sutte_pred(&s).unwrap().value_at(2), Some(13.0));
    }

    #[test]
    fn close_at_low_leaves_only_the_midpoint() {
        let s = series(&[(10.0, 10.5, 9.5, 10.0), (10.0, 13.0, 12.0, 12.0)]);
        assert_eq!(sutte_l(&s).unwrap().value_at(2), Some(11.0));
    }

    #[test]
    fn close_at_high_leaves_only_the_midpoint() {
        let s = series(&[(10.0, 10.5, 9.5, 10.0), (10.0, 12.0, 9.0, 12.0)]);
        assert_eq!(sutte_h(&s).unwrap().value_at(2), Some(11.0));
    }

    #[test]
    fn series_start_at_bar_two() {
        let s = series_from_closes(&[10.0, 11.0, 12.0]);
        for mk in [sutte_l, sutte_h, sutte_pred] {
            let out = mk(&s).unwrap();
            assert_eq!(out.valid_from(), 2);
            assert_eq!(out.last_index(), 3);
            assert_eq!(out.len(), 2);
        }
    }

    #[test]
    fn fewer_than_two_bars_is_an_error() {
        let s = series_from_closes(&[10.0]);
        assert!(matches!(
            sutte_l(&s),
            Err(IndicatorError::InsufficientBars { needed: 2, .. })
        ));
        assert!(sutte_h(&s).is_err());
        assert!(sutte_pred(&s).is_err());
    }

    #[test]
    fn pred_is_bitwise_mean_of_the_curves() {
        let closes: Vec<f64> = (0..50)
            .map(|i| 100.0 + (i as f64 * 0.37).sin() * 7.0 + (i as f64 * 0.11).cos())
            .collect();
        let s = series_from_closes(&closes);
        let l = sutte_l(&s).unwrap();
        let h = sutte_h(&s).unwrap();
        let p = sutte_pred(&s).unwrap();
        for (k, _, pv) in p.iter() {
            let expected = (l.value_at(k).unwrap() + h.value_at(k).unwrap()) / 2.0;
            assert_eq!(pv, expected);
        }
    }
}
