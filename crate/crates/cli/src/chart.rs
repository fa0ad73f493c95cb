//! Static SVG chart export: close price and the three Sutte curves as
//! polylines, one marker per buy/sell signal, and a date axis.
//!
//! The writer is deliberately hand-rolled: output must be byte-stable
//! across platforms for golden-file tests, and downstream checks count
//! `<polyline>` and `signal-marker` elements.

use sutte_core::{BarSeries, IndicatorSeries, SignalEvent, SignalKind};

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 540.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 56.0;

struct SeriesStyle {
    class: &'static str,
    label: &'static str,
    color: &'static str,
}

const STYLES: [SeriesStyle; 4] = [
    SeriesStyle { class: "series-close", label: "close", color: "#333333" },
    SeriesStyle { class: "series-sutte-l", label: "SUTTE%L", color: "#1f77b4" },
    SeriesStyle { class: "series-sutte-h", label: "SUTTE%H", color: "#d62728" },
    SeriesStyle { class: "series-sutte-pred", label: "SUTTE-PRED", color: "#2ca02c" },
];

pub struct ChartInput<'a> {
    pub series: &'a BarSeries,
    pub sutte_l: &'a IndicatorSeries,
    pub sutte_h: &'a IndicatorSeries,
    pub sutte_pred: &'a IndicatorSeries,
    pub signals: &'a [SignalEvent],
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

struct Scale {
    len: usize,
    min: f64,
    max: f64,
}

impl Scale {
    fn x(&self, bar_index: usize) -> f64 {
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        if self.len <= 1 {
            return MARGIN_LEFT + plot_w / 2.0;
        }
        MARGIN_LEFT + (bar_index - 1) as f64 / (self.len - 1) as f64 * plot_w
    }

    fn y(&self, value: f64) -> f64 {
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let range = (self.max - self.min).max(f64::MIN_POSITIVE);
        MARGIN_TOP + (1.0 - (value - self.min) / range) * plot_h
    }
}

/// Render the chart. `header_comment` (version + config hash) becomes
/// the first line of the file.
pub fn render_svg(input: &ChartInput, header_comment: &str) -> String {
    let ChartInput { series, sutte_l, sutte_h, sutte_pred, signals } = input;

    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for bar in series.bars() {
        min = min.min(bar.close);
        max = max.max(bar.close);
    }
    for ind in [sutte_l, sutte_h, sutte_pred] {
        for v in ind.values() {
            min = min.min(*v);
            max = max.max(*v);
        }
    }
    let pad = (max - min).max(1e-9) * 0.05;
    let scale = Scale { len: series.len(), min: min - pad, max: max + pad };

    let mut svg = String::new();
    svg.push_str(&format!("<!-- {header_comment} -->\n"));
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
    ));

    render_axes(&mut svg, series, &scale);

    // Close polyline spans every bar; the Sutte curves start at bar 2.
    let close_points: Vec<(usize, f64)> = series
        .bars()
        .iter()
        .enumerate()
        .map(|(i, b)| (i + 1, b.close))
        .collect();
    render_polyline(&mut svg, &STYLES[0], &close_points, &scale);
    for (style, ind) in STYLES[1..].iter().zip([sutte_l, sutte_h, sutte_pred]) {
        let points: Vec<(usize, f64)> = ind.iter().map(|(k, _, v)| (k, v)).collect();
        render_polyline(&mut svg, style, &points, &scale);
    }

    for event in *signals {
        let class = match event.kind {
            SignalKind::Buy => "signal-marker signal-buy",
            SignalKind::Sell => "signal-marker signal-sell",
        };
        let color = match event.kind {
            SignalKind::Buy => "#2ca02c",
            SignalKind::Sell => "#d62728",
        };
        let cy = scale.y((event.l_value + event.h_value) / 2.0);
        svg.push_str(&format!(
            "  <circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{color}\" \
             stroke=\"#ffffff\" stroke-width=\"1.5\"><title>{} {}</title></circle>\n",
            fmt(scale.x(event.bar_index)),
            fmt(cy),
            event.kind.as_str(),
            event.date.format("%Y-%m-%d"),
        ));
    }

    render_legend(&mut svg, series.symbol(), signals.len());
    svg.push_str("</svg>\n");
    svg
}

fn render_axes(svg: &mut String, series: &BarSeries, scale: &Scale) {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;

    svg.push_str("  <g class=\"axes\" stroke=\"#444444\" stroke-width=\"1\">\n");
    svg.push_str(&format!(
        "    <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\"/>\n"
    ));
    svg.push_str(&format!(
        "    <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\"/>\n"
    ));
    svg.push_str("  </g>\n");

    // Date labels on up to six evenly spaced bars.
    let ticks = series.len().clamp(1, 6);
    svg.push_str("  <g class=\"x-labels\" fill=\"#333333\" text-anchor=\"middle\">\n");
    for i in 0..ticks {
        let k = if ticks == 1 {
            1
        } else {
            1 + i * (series.len() - 1) / (ticks - 1)
        };
        let date = series.bar(k).expect("tick index in range").date;
        svg.push_str(&format!(
            "    <text class=\"date-label\" x=\"{}\" y=\"{}\">{}</text>\n",
            fmt(scale.x(k)),
            fmt(HEIGHT - MARGIN_BOTTOM + 20.0),
            date.format("%Y-%m-%d"),
        ));
    }
    svg.push_str("  </g>\n");

    // Five value labels along the y axis.
    svg.push_str("  <g class=\"y-labels\" fill=\"#333333\" text-anchor=\"end\">\n");
    for i in 0..5 {
        let value = scale.min + (scale.max - scale.min) * i as f64 / 4.0;
        svg.push_str(&format!(
            "    <text x=\"{}\" y=\"{}\">{}</text>\n",
            fmt(MARGIN_LEFT - 8.0),
            fmt(scale.y(value) + 4.0),
            fmt(value),
        ));
    }
    svg.push_str("  </g>\n");
}

fn render_polyline(svg: &mut String, style: &SeriesStyle, points: &[(usize, f64)], scale: &Scale) {
    let coords: Vec<String> = points
        .iter()
        .map(|(k, v)| format!("{},{}", fmt(scale.x(*k)), fmt(scale.y(*v))))
        .collect();
    svg.push_str(&format!(
        "  <polyline class=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        style.class,
        style.color,
        coords.join(" "),
    ));
}

fn render_legend(svg: &mut String, symbol: &str, signal_count: usize) {
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"14\" font-weight=\"bold\" fill=\"#333333\">{symbol}</text>\n",
        fmt(MARGIN_LEFT + 8.0),
        fmt(MARGIN_TOP + 16.0),
    ));
    for (i, style) in STYLES.iter().enumerate() {
        let y = MARGIN_TOP + 34.0 + i as f64 * 16.0;
        svg.push_str(&format!(
            "  <rect x=\"{}\" y=\"{}\" width=\"12\" height=\"3\" fill=\"{}\"/>\n",
            fmt(MARGIN_LEFT + 8.0),
            fmt(y - 4.0),
            style.color,
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" fill=\"#333333\">{}</text>\n",
            fmt(MARGIN_LEFT + 26.0),
            fmt(y),
            style.label,
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" fill=\"#333333\">{signal_count} signal(s)</text>\n",
        fmt(MARGIN_LEFT + 8.0),
        fmt(MARGIN_TOP + 34.0 + STYLES.len() as f64 * 16.0),
    ));
}

/// Tidy long-format companion CSV: `series,date,value` for every
/// plotted point, grouped by series in legend order.
pub fn render_tidy_csv(input: &ChartInput, header: &str) -> String {
    let mut out = String::from(header);
    out.push_str("series,date,value\n");
    for bar in input.series.bars() {
        out.push_str(&format!(
            "close,{},{}\n",
            bar.date.format("%Y-%m-%d"),
            sutte_core::numfmt::format_value(bar.close)
        ));
    }
    for ind in [input.sutte_l, input.sutte_h, input.sutte_pred] {
        for (_, date, value) in ind.iter() {
            out.push_str(&format!(
                "{},{},{}\n",
                ind.name(),
                date.format("%Y-%m-%d"),
                sutte_core::numfmt::format_value(value)
            ));
        }
    }
    out
}
