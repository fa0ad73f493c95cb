//! Baseline indicators over close prices: SMA, EMA, and MACD.

mod series;

pub use series::{IndicatorError, IndicatorSeries, Params};

use crate::market_data::BarSeries;

/// Recompute the sliding-window sum from scratch this often, bounding
/// floating-point drift on long inputs.
const RESUM_INTERVAL: usize = 4096;

/// Simple moving average of the last `n` closes.
///
/// The value at bar `t` (1-based, `t >= n`) is the mean of the closes
/// at bars `t - n + 1 ..= t`; `valid_from = n`.
pub fn sma(series: &BarSeries, n: usize) -> Result<IndicatorSeries, IndicatorError> {
    if n == 0 {
        return Err(IndicatorError::ZeroWindow);
    }
    let name = format!("SMA({n})");
    let bars = series.bars();
    if bars.len() < n {
        return Err(IndicatorError::InsufficientBars {
            name,
            needed: n,
            actual: bars.len(),
            symbol: series.symbol().to_string(),
        });
    }

    let mut values = Vec::with_capacity(bars.len() - n + 1);
    let mut sum: f64 = bars[..n].iter().map(|b| b.close).sum();
    values.push(sum / n as f64);
    for (steps, t) in (n..bars.len()).enumerate() {
        if (steps + 1) % RESUM_INTERVAL == 0 {
            sum = bars[t + 1 - n..=t].iter().map(|b| b.close).sum();
        } else {
            sum += bars[t].close - bars[t - n].close;
        }
        values.push(sum / n as f64);
    }

    let dates = bars[n - 1..].iter().map(|b| b.date).collect();
    IndicatorSeries::new(
        name,
        series.symbol(),
        Params::from([("n".to_string(), n as i64)]),
        n,
        dates,
        values,
    )
}

/// Exponential moving average with smoothing `alpha = 2 / (n + 1)`,
/// seeded at the first close; `valid_from = 1`.
pub fn ema(series: &BarSeries, n: usize) -> Result<IndicatorSeries, IndicatorError> {
    if n == 0 {
        return Err(IndicatorError::ZeroWindow);
    }
    let name = format!("EMA({n})");
    let bars = series.bars();
    if bars.is_empty() {
        return Err(IndicatorError::InsufficientBars {
            name,
            needed: 1,
            actual: 0,
            symbol: series.symbol().to_string(),
        });
    }

    let alpha = 2.0 / (n as f64 + 1.0);
    let mut values = Vec::with_capacity(bars.len());
    let mut current = bars[0].close;
    values.push(current);
    for bar in &bars[1..] {
        // alpha*C + (1-alpha)*E rearranged so a repeated close leaves
        // the average bit-for-bit unchanged.
        current += alpha * (bar.close - current);
        values.push(current);
    }

    let dates = bars.iter().map(|b| b.date).collect();
    IndicatorSeries::new(
        name,
        series.symbol(),
        Params::from([("n".to_string(), n as i64)]),
        1,
        dates,
        values,
    )
}

/// MACD line: pointwise `ema(short_n) - ema(long_n)`; `valid_from = 1`
/// since both averages seed at the first bar.
pub fn macd(
    series: &BarSeries,
    short_n: usize,
    long_n: usize,
) -> Result<IndicatorSeries, IndicatorError> {
    if short_n == 0 || long_n == 0 {
        return Err(IndicatorError::ZeroWindow);
    }
    if short_n >= long_n {
        return Err(IndicatorError::WindowOrder {
            short: short_n,
            long: long_n,
        });
    }
    let short = ema(series, short_n)?;
    let long = ema(series, long_n)?;
    let values = short
        .values()
        .iter()
        .zip(long.values())
        .map(|(s, l)| s - l)
        .collect();

    IndicatorSeries::new(
        format!("MACD({short_n},{long_n})"),
        series.symbol(),
        Params::from([
            ("short".to_string(), short_n as i64),
            ("long".to_string(), long_n as i64),
        ]),
        1,
        short.dates().to_vec(),
        values,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market_data::test_util::series_from_closes;

    fn assert_close(actual: f64, expected: f64) {
        assert!(
            (actual - expected).abs() <= 1e-12 * expected.abs().max(1.0),
            "expected {expected}, got {actual}"
        );
    }

    #[test]
    fn sma_of_constant_closes_is_the_constant_exactly() {
        let series = series_from_closes(&[100.0; 10]);
        for n in [1, 3, 7] {
            let out = sma(&series, n).unwrap();
            assert_eq!(out.valid_from(), n);
            assert!(out.values().iter().all(|&v| v == 100.0));
        }
    }

    #[test]
    fn sma_hand_computed_window_of_three() {
        let series = series_from_closes(&[1.0, 2.0, 3.0, 4.0]);
        let out = sma(&series, 3).unwrap();
        assert_eq!(out.valid_from(), 3);
        assert_eq!(out.value_at(3), Some(2.0));
        assert_eq!(out.value_at(4), Some(3.0));
    }

    #[test]
    fn sma_window_of_one_is_identity_on_closes() {
        let closes = [5.0, 7.5, 6.25];
        let out = sma(&series_from_closes(&closes), 1).unwrap();
        assert_eq!(out.valid_from(), 1);
        assert_eq!(out.values(), &closes);
    }

    #[test]
    fn sma_rejects_short_series_and_zero_window() {
        let series = series_from_closes(&[1.0, 2.0]);
        assert!(matches!(
            sma(&series, 3),
            Err(IndicatorError::InsufficientBars { needed: 3, actual: 2, .. })
        ));
        assert!(matches!(sma(&series, 0), Err(IndicatorError::ZeroWindow)));
    }

    #[test]
    fn ema_constant_closes_is_fixed_point() {
        let series = series_from_closes(&[42.5; 8]);
        let out = ema(&series, 5).unwrap();
        assert!(out.values().iter().all(|&v| v == 42.5));
    }

    #[test]
    fn ema_two_step_hand_recursion() {
        // n = 3 gives alpha = 0.5
        let out = ema(&series_from_closes(&[10.0, 20.0]), 3).unwrap();
        assert_eq!(out.valid_from(), 1);
        assert_close(out.value_at(1).unwrap(), 10.0);
        assert_close(out.value_at(2).unwrap(), 15.0);
    }

    #[test]
    fn ema_three_step_hand_recursion() {
        let out = ema(&series_from_closes(&[10.0, 20.0, 10.0]), 3).unwrap();
        assert_close(out.value_at(1).unwrap(), 10.0);
        assert_close(out.value_at(2).unwrap(), 15.0);
        assert_close(out.value_at(3).unwrap(), 12.5);
    }

    #[test]
    fn macd_constant_closes_is_zero() {
        let out = macd(&series_from_closes(&[250.0; 30]), 12, 26).unwrap();
        assert!(out.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn macd_hand_recursion_with_tiny_windows() {
        // EMA(1) = closes; EMA(3) = [10, 15]
        let out = macd(&series_from_closes(&[10.0, 20.0]), 1, 3).unwrap();
        assert_close(out.value_at(1).unwrap(), 0.0);
        assert_close(out.value_at(2).unwrap(), 5.0);
    }

    #[test]
    fn macd_is_pointwise_ema_difference() {
        let closes: Vec<f64> = (0..40).map(|i| 100.0 + (i as f64 * 0.7).sin() * 5.0).collect();
        let series = series_from_closes(&closes);
        let out = macd(&series, 12, 26).unwrap();
        let short = ema(&series, 12).unwrap();
        let long = ema(&series, 26).unwrap();
        for (k, _, v) in out.iter() {
            assert_eq!(v, short.value_at(k).unwrap() - long.value_at(k).unwrap());
        }
    }

    #[test]
    fn sma_periodic_resummation_matches_naive_on_long_series() {
        let closes: Vec<f64> = (0..9000)
            .map(|i| 100.0 + (i as f64 * 0.013).sin() * 20.0 + (i % 97) as f64 * 0.01)
            .collect();
        let series = series_from_closes(&closes);
        let out = sma(&series, 20).unwrap();
        for (i, value) in out.values().iter().enumerate() {
            let naive: f64 = closes[i..i + 20].iter().sum::<f64>() / 20.0;
            assert!(
                (value - naive).abs() <= 1e-9 * naive.abs(),
                "drift at {i}: {value} vs {naive}"
            );
        }
    }

    #[test]
    fn macd_rejects_inverted_windows() {
        let series = series_from_closes(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            macd(&series, 26, 12),
            Err(IndicatorError::WindowOrder { .. })
        ));
        assert!(matches!(
            macd(&series, 12, 12),
            Err(IndicatorError::WindowOrder { .. })
        ));
    }
}
