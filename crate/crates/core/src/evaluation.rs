//! Forecast reliability: pair indicator values against later realized
//! closes and score them with MAD, MSE, and MAPE.
//!
//! The value an indicator produces at bar `k` is treated as the
//! forecast of the close `horizon` bars later (default 1), so every
//! compared method uses only information through bar `k`. When several
//! methods are compared, they are scored over the intersection of
//! their paired domains so the pair count `n` is identical across
//! methods; anything else would make the numbers incomparable.

use chrono::NaiveDate;
use serde::Serialize;
use thiserror::Error;

use crate::indicators::{self, IndicatorError, IndicatorSeries, Params};
use crate::market_data::BarSeries;
use crate::numfmt::format_value;
use crate::sutte;

#[derive(Debug, Error)]
pub enum EvaluationError {
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("no overlapping pairs between '{0}' forecasts and realized closes")]
    EmptyPairing(String),
    #[error("'{method}' was not computed from this bar series (dates differ at bar {index})")]
    ProvenanceMismatch { method: String, index: usize },
    #[error("pair indices must be strictly increasing")]
    UnorderedPairs,
    #[error("pair at t={index} has a zero or non-finite value")]
    InvalidPair { index: usize },
    #[error(transparent)]
    Indicator(#[from] IndicatorError),
}

/// One scored point: realized close `actual` at bar `index` (1-based)
/// against the forecast `predicted` made `horizon` bars earlier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForecastPair {
    pub index: usize,
    pub actual: f64,
    pub predicted: f64,
}

/// Forecast/actual pairs with the alignment metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSeries {
    pairs: Vec<ForecastPair>,
    horizon: usize,
    skipped_zero_actuals: usize,
}

impl PairedSeries {
    pub fn new(
        pairs: Vec<ForecastPair>,
        horizon: usize,
        skipped_zero_actuals: usize,
    ) -> Result<Self, EvaluationError> {
        if horizon == 0 {
            return Err(EvaluationError::ZeroHorizon);
        }
        if pairs.is_empty() {
            return Err(EvaluationError::EmptyPairing("paired series".to_string()));
        }
        for pair in &pairs {
            if !pair.actual.is_finite() || !pair.predicted.is_finite() || pair.actual == 0.0 {
                return Err(EvaluationError::InvalidPair { index: pair.index });
            }
        }
        for w in pairs.windows(2) {
            if w[1].index <= w[0].index {
                return Err(EvaluationError::UnorderedPairs);
            }
        }
        Ok(PairedSeries {
            pairs,
            horizon,
            skipped_zero_actuals,
        })
    }

    pub fn pairs(&self) -> &[ForecastPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn skipped_zero_actuals(&self) -> usize {
        self.skipped_zero_actuals
    }
}

/// Pair each indicator value at bar `k` with the realized close at
/// `k + horizon`. Zero (or non-finite) actuals are excluded and
/// counted rather than failing, matching the `y != 0` guard on the
/// percentage error.
pub fn align_forecast(
    ind: &IndicatorSeries,
    series: &BarSeries,
    horizon: usize,
) -> Result<PairedSeries, EvaluationError> {
    if horizon == 0 {
        return Err(EvaluationError::ZeroHorizon);
    }
    for (k, date, _) in ind.iter() {
        let bar_date = series.bar(k).map(|b| b.date);
        if bar_date != Some(date) {
            return Err(EvaluationError::ProvenanceMismatch {
                method: ind.name().to_string(),
                index: k,
            });
        }
    }

    let mut pairs = Vec::new();
    let mut skipped = 0usize;
    for (k, _, predicted) in ind.iter() {
        let t = k + horizon;
        let Some(actual) = series.close(t) else {
            break;
        };
        if actual == 0.0 || !actual.is_finite() {
            skipped += 1;
            continue;
        }
        pairs.push(ForecastPair {
            index: t,
            actual,
            predicted,
        });
    }
    if pairs.is_empty() {
        return Err(EvaluationError::EmptyPairing(ind.name().to_string()));
    }
    PairedSeries::new(pairs, horizon, skipped)
}

/// Mean absolute deviation of the residuals.
pub fn mad(p: &PairedSeries) -> f64 {
    let sum: f64 = p
        .pairs()
        .iter()
        .map(|x| (x.actual - x.predicted).abs())
        .sum();
    sum / p.len() as f64
}

/// Mean squared error of the residuals.
pub fn mse(p: &PairedSeries) -> f64 {
    let sum: f64 = p
        .pairs()
        .iter()
        .map(|x| {
            let r = x.actual - x.predicted;
            r * r
        })
        .sum();
    sum / p.len() as f64
}

/// Mean absolute percentage error, in percent.
pub fn mape(p: &PairedSeries) -> f64 {
    let sum: f64 = p
        .pairs()
        .iter()
        .map(|x| ((x.actual - x.predicted) / x.actual).abs())
        .sum();
    sum / p.len() as f64 * 100.0
}

/// A forecasting method to score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSpec {
    SuttePred,
    Sma { window: usize },
    Macd { short: usize, long: usize },
}

impl MethodSpec {
    pub fn compute(&self, series: &BarSeries) -> Result<IndicatorSeries, IndicatorError> {
        match *self {
            MethodSpec::SuttePred => sutte::sutte_pred(series),
            MethodSpec::Sma { window } => indicators::sma(series, window),
            MethodSpec::Macd { short, long } => indicators::macd(series, short, long),
        }
    }

    fn note(&self) -> Option<String> {
        match self {
            // The MACD line itself is scored against price, so its
            // errors are on the scale of the price level.
            MethodSpec::Macd { .. } => {
                Some("raw MACD value scored directly against price".to_string())
            }
            _ => None,
        }
    }
}

/// Per-method reliability scores plus pairing metadata.
#[derive(Debug, Clone, Serialize)]
pub struct EvaluationReport {
    pub method: String,
    pub params: Params,
    pub mad: f64,
    pub mse: f64,
    pub mape: f64,
    pub n: usize,
    pub horizon: usize,
    pub date_range: (NaiveDate, NaiveDate),
    pub skipped_zero_actuals: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Score every method over the intersection of their paired domains,
/// one report per method in the given order, all with identical `n`.
pub fn compare_methods(
    series: &BarSeries,
    methods: &[MethodSpec],
    horizon: usize,
) -> Result<Vec<EvaluationReport>, EvaluationError> {
    if horizon == 0 {
        return Err(EvaluationError::ZeroHorizon);
    }
    let computed: Vec<(MethodSpec, IndicatorSeries)> = methods
        .iter()
        .map(|m| m.compute(series).map(|s| (*m, s)))
        .collect::<Result<_, _>>()?;

    let Some(start_t) = computed
        .iter()
        .map(|(_, s)| s.valid_from() + horizon)
        .max()
    else {
        return Ok(Vec::new());
    };

    let mut reports = Vec::with_capacity(computed.len());
    for (method, ind) in &computed {
        let mut pairs = Vec::new();
        let mut skipped = 0usize;
        for t in start_t..=series.len() {
            let actual = series.close(t).expect("t is within the series");
            if actual == 0.0 || !actual.is_finite() {
                skipped += 1;
                continue;
            }
            let predicted = ind
                .value_at(t - horizon)
                .expect("t - horizon is past every warm-up");
            pairs.push(ForecastPair {
                index: t,
                actual,
                predicted,
            });
        }
        if pairs.is_empty() {
            return Err(EvaluationError::EmptyPairing(ind.name().to_string()));
        }
        let first = series.bar(pairs[0].index).unwrap().date;
        let last = series.bar(pairs[pairs.len() - 1].index).unwrap().date;
        let paired = PairedSeries::new(pairs, horizon, skipped)?;
        reports.push(EvaluationReport {
            method: ind.name().to_string(),
            params: ind.params().clone(),
            mad: mad(&paired),
            mse: mse(&paired),
            mape: mape(&paired),
            n: paired.len(),
            horizon,
            date_range: (first, last),
            skipped_zero_actuals: paired.skipped_zero_actuals(),
            note: method.note(),
        });
    }

    debug_assert!(reports.windows(2).all(|w| w[0].n == w[1].n));
    Ok(reports)
}

/// Aligned-text comparison table (`Indicator | MSE | MAD | MAPE | n`),
/// with a footnote per method note.
pub fn render_table(reports: &[EvaluationReport]) -> String {
    let mut rows: Vec<[String; 5]> = vec![[
        "Indicator".to_string(),
        "MSE".to_string(),
        "MAD".to_string(),
        "MAPE".to_string(),
        "n".to_string(),
    ]];
    for r in reports {
        let marker = if r.note.is_some() { "*" } else { "" };
        rows.push([
            format!("{}{}", r.method, marker),
            format_value(r.mse),
            format_value(r.mad),
            format_value(r.mape),
            r.n.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();

    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
        if i == 0 {
            let sep: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            out.push_str(&sep.join("-|-"));
            out.push('\n');
        }
    }
    for r in reports {
        if let Some(note) = &r.note {
            out.push_str(&format!("* {}: {}\n", r.method, note));
        }
    }
    out
}
