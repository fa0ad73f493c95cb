#!/usr/bin/env python3
"""Independent reference calculator for the indicator test fixtures.

Reads an OHLC CSV (Yahoo layout) and recomputes every series and error
metric with plain, literal arithmetic - no shared code with the Rust
implementation. The frozen JSON output is what the test suites assert
against.

Usage: oracle.py [input.csv] [output.json]
"""

import json
import os
import sys

HERE = os.path.dirname(__file__)
DEFAULT_IN = os.path.join(HERE, "..", "crates", "core", "tests", "fixtures", "fixture_60.csv")
DEFAULT_OUT = os.path.join(HERE, "..", "crates", "core", "tests", "fixtures", "expected_60.json")


def load_csv(path):
    dates, opens, highs, lows, closes = [], [], [], [], []
    with open(path) as f:
        header = f.readline().strip().split(",")
        idx = {name.strip().lower(): i for i, name in enumerate(header)}
        for line in f:
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            dates.append(fields[idx["date"]])
            opens.append(float(fields[idx["open"]]))
            highs.append(float(fields[idx["high"]]))
            lows.append(float(fields[idx["low"]]))
            closes.append(float(fields[idx["close"]]))
    return dates, opens, highs, lows, closes


def sma(closes, n):
    # value at 1-based bar t (t >= n) is the mean of closes t-n+1..t
    values = []
    for t in range(n, len(closes) + 1):
        window = closes[t - n : t]
        values.append(sum(window) / n)
    return {"valid_from": n, "values": values}


def ema(closes, n):
    alpha = 2.0 / (n + 1)
    values = [closes[0]]
    for c in closes[1:]:
        values.append(alpha * c + (1.0 - alpha) * values[-1])
    return {"valid_from": 1, "values": values}


def macd(closes, short_n, long_n):
    short = ema(closes, short_n)["values"]
    long_ = ema(closes, long_n)["values"]
    return {"valid_from": 1, "values": [s - l for s, l in zip(short, long_)]}


def sutte_l(closes, lows):
    values = []
    for k in range(1, len(closes)):
        values.append((closes[k] + closes[k - 1]) / 2.0 + closes[k] - lows[k])
    return {"valid_from": 2, "values": values}


def sutte_h(closes, highs):
    values = []
    for k in range(1, len(closes)):
        values.append((closes[k] + closes[k - 1]) / 2.0 + highs[k] - closes[k])
    return {"valid_from": 2, "values": values}


def sutte_pred(closes, highs, lows):
    sl = sutte_l(closes, lows)["values"]
    sh = sutte_h(closes, highs)["values"]
    return {"valid_from": 2, "values": [(a + b) / 2.0 for a, b in zip(sl, sh)]}


def metrics(pairs):
    n = len(pairs)
    mad = sum(abs(y - p) for y, p in pairs) / n
    mse = sum(abs(y - p) ** 2 for y, p in pairs) / n
    mape = sum(abs((y - p) / y) for y, p in pairs) / n * 100.0
    return {"mad": mad, "mse": mse, "mape": mape, "n": n}


def compare(closes, methods, horizon):
    # Pair predicted value at bar k against the realized close at k+horizon,
    # scoring every method over the intersection of their paired domains.
    n_bars = len(closes)
    start_t = max(m["valid_from"] for m in methods.values()) + horizon  # 1-based
    out = {}
    for name, series in methods.items():
        pairs = []
        for t in range(start_t, n_bars + 1):
            k = t - horizon
            y = closes[t - 1]
            if y == 0.0:
                continue
            pred = series["values"][k - series["valid_from"]]
            pairs.append((y, pred))
        out[name] = metrics(pairs)
    return out


def main():
    src = sys.argv[1] if len(sys.argv) > 1 else DEFAULT_IN
    dst = sys.argv[2] if len(sys.argv) > 2 else DEFAULT_OUT
    dates, _, highs, lows, closes = load_csv(src)

    series = {
        "SUTTE%L": sutte_l(closes, lows),
        "SUTTE%H": sutte_h(closes, highs),
        "SUTTE-PRED": sutte_pred(closes, highs, lows),
        "SMA(5)": sma(closes, 5),
        "EMA(12)": ema(closes, 12),
        "EMA(26)": ema(closes, 26),
        "MACD(12,26)": macd(closes, 12, 26),
    }
    comparison = compare(
        closes,
        {
            "SUTTE-PRED": series["SUTTE-PRED"],
            "SMA(5)": series["SMA(5)"],
            "MACD(12,26)": series["MACD(12,26)"],
        },
        horizon=1,
    )

    payload = {
        "source": os.path.basename(src),
        "bars": len(closes),
        "first_date": dates[0],
        "last_date": dates[-1],
        "series": series,
        "comparison": {"horizon": 1, "reports": comparison},
    }
    with open(dst, "w") as f:
        json.dump(payload, f, indent=1)
        f.write("\n")
    print("wrote %s" % dst)
    for name, m in comparison.items():
        print("  %-12s mad=%.6f mse=%.6f mape=%.6f n=%d" % (name, m["mad"], m["mse"], m["mape"], m["n"]))


if __name__ == "__main__":
    main()
