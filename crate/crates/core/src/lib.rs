//! Sutte Indicator analytics over daily OHLC bars.
//!
//! The crate covers the full pipeline behind the `sutte` CLI:
//!
//! - [`market_data`]: Yahoo-layout CSV ingestion, validation, HTTP
//!   fetching, and date windowing into an immutable [`BarSeries`].
//! - [`indicators`]: the comparison baselines SMA, EMA, and the MACD
//!   line, producing index-aligned [`IndicatorSeries`] values.
//! - [`sutte`]: the SUTTE%L / SUTTE%H curves and the SUTTE-PRED point
//!   forecast.
//! - [`signal`]: buy/sell events from completed %L/%H crossovers.
//! - [`evaluation`]: MAD / MSE / MAPE reliability scoring of one-step
//!   (or `horizon`-step) forecasts, with a multi-method comparison
//!   table.
//!
//! Everything except `market_data::fetch_csv` is a pure function over
//! immutable inputs, so series and indicators can be shared freely
//! across threads.

pub mod evaluation;
pub mod indicators;
pub mod market_data;
pub mod numfmt;
pub mod signal;
pub mod sutte;

pub use evaluation::{
    align_forecast, compare_methods, mad, mape, mse, render_table, EvaluationError,
    EvaluationReport, ForecastPair, MethodSpec, PairedSeries,
};
pub use indicators::{ema, macd, sma, IndicatorError, IndicatorSeries, Params};
pub use market_data::{
    fetch_csv, parse_csv, validate_series, Bar, BarSeries, FetchError, Issue, MarketDataError,
    ParsedCsv, Severity, ValidationReport,
};
pub use signal::{
    detect_crossovers, detect_crossovers_confirmed, regime_at, signals_to_csv, signals_to_json,
    Regime, SignalError, SignalEvent, SignalKind,
};
pub use sutte::{sutte_h, sutte_l, sutte_pred};
