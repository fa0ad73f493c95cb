#!/usr/bin/env python3
"""Generate the deterministic 60-bar OHLC fixture used by the test suites.

Writes a Yahoo-layout CSV (Date,Open,High,Low,Close,Adj Close,Volume) with
business-day dates and a seeded random walk, so the fixture is reproducible
from this script alone. Prices are rounded to 4 decimals.
"""

import datetime
import os

OUT = os.path.join(
    os.path.dirname(__file__), "..", "crates", "core", "tests", "fixtures", "fixture_60.csv"
)

N_BARS = 60


class Lcg:
    """Tiny deterministic generator (numerical recipes constants)."""

    def __init__(self, seed):
        self.state = seed & 0xFFFFFFFF

    def next_u32(self):
        self.state = (1664525 * self.state + 1013904223) & 0xFFFFFFFF
        return self.state

    def uniform(self):
        return self.next_u32() / 4294967296.0


def business_days(start, count):
    days = []
    d = start
    while len(days) < count:
        if d.weekday() < 5:
            days.append(d)
        d += datetime.timedelta(days=1)
    return days


def main():
    rng = Lcg(20160104)
    dates = business_days(datetime.date(2016, 1, 4), N_BARS)

    rows = []
    close = 100.0
    for date in dates:
        prev_close = close
        ret = (rng.uniform() - 0.5) * 0.04  # +/- 2% daily move
        close = round(prev_close * (1.0 + ret), 4)
        open_ = round(prev_close * (1.0 + (rng.uniform() - 0.5) * 0.01), 4)
        hi_base = max(open_, close)
        lo_base = min(open_, close)
        high = round(hi_base * (1.0 + rng.uniform() * 0.01), 4)
        low = round(lo_base * (1.0 - rng.uniform() * 0.01), 4)
        volume = 1000 + rng.next_u32() % 9000
        assert low > 0 and low <= lo_base and high >= hi_base
        rows.append((date.isoformat(), open_, high, low, close, close, volume))

    with open(OUT, "w") as f:
        f.write("Date,Open,High,Low,Close,Adj Close,Volume\n")
        for r in rows:
            f.write("%s,%s,%s,%s,%s,%s,%d\n" % r)
    print("wrote %s (%d bars)" % (OUT, len(rows)))


if __name__ == "__main__":
    main()
