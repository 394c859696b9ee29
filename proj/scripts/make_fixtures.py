#!/usr/bin/env python3
"""Regenerates the synthetic fixture data under data/fixtures/.

The fixtures are representative, deterministic stand-ins for a NSW
residential customer: an hourly load profile for one non-leap year and two
aligned years of hourly insolation/temperature for Sydney. Real smart-meter
and weather exports use the same CSV layout (see docs/formats.md).
"""

import math
import os

LAT, LON, TZ = -33.86, 151.21, 10.0
OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "data", "fixtures")
DAYS_IN_MONTH = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31]


def lcg(seed):
    state = seed & 0xFFFFFFFF

    def nxt():
        nonlocal state
        state = (1103515245 * state + 12345) & 0x7FFFFFFF
        return state / 0x7FFFFFFF

    return nxt


def eot_minutes(n):
    b = math.radians((n - 1) * 360.0 / 365.0)
    return 229.2 * (0.000075 + 0.001868 * math.cos(b) - 0.032077 * math.sin(b)
                    - 0.014615 * math.cos(2 * b) - 0.04089 * math.sin(2 * b))


def extraterrestrial_wh(n, h):
    phi = math.radians(LAT)
    dec = math.radians(23.45 * math.sin(math.radians(360.0 * (284 + n) / 365.0)))
    ecc = 1 + 0.033 * math.cos(math.radians(360.0 * n / 365.0))
    ws = math.degrees(math.acos(max(-1.0, min(1.0, -math.tan(phi) * math.tan(dec)))))

    def omega(std_time):
        solar = std_time + (4.0 * (LON - 15.0 * TZ) + eot_minutes(n)) / 60.0
        return 15.0 * (solar - 12.0)

    w1, w2 = max(omega(h), -ws), min(omega(h + 1), ws)
    if w2 <= w1:
        return 0.0
    io = (12.0 / math.pi) * 1367.0 * ecc * (
        math.cos(phi) * math.cos(dec) * (math.sin(math.radians(w2)) - math.sin(math.radians(w1)))
        + math.pi * (w2 - w1) / 180.0 * math.sin(phi) * math.sin(dec))
    return max(io, 0.0)


def diffuse_fraction(kt):
    # Erbs correlation.
    if kt <= 0.22:
        return 1.0 - 0.09 * kt
    if kt <= 0.80:
        return 0.9511 - 0.1604 * kt + 4.388 * kt ** 2 - 16.638 * kt ** 3 + 12.336 * kt ** 4
    return 0.165


def timestamps(year):
    for month in range(1, 13):
        for day in range(1, DAYS_IN_MONTH[month - 1] + 1):
            for hour in range(24):
                yield month, day, hour


def weather_year(year, cloud_seed):
    rng = lcg(cloud_seed)
    rows = []
    n = 0
    day_cloud = 0.0
    for month, day, hour in timestamps(year):
        if hour == 0:
            n += 1
            r = rng()
            # A mix of clear, partly cloudy and overcast days.
            day_cloud = 0.0 if r < 0.45 else (0.25 if r < 0.8 else 0.55)
        io = extraterrestrial_wh(n, hour)
        kt = max(0.05, min(0.75, 0.68 - day_cloud - 0.06 * rng()))
        g = kt * io
        fd = diffuse_fraction(kt)
        d = fd * g
        b = g - d
        t_mean = 17.5 + 5.5 * math.cos(2 * math.pi * (n - 24) / 365.0)
        t = t_mean - 3.5 * math.cos(2 * math.pi * (hour - 14.5) / 24.0) + 1.5 * (rng() - 0.5)
        rows.append((f"{year:04d}-{month:02d}-{day:02d}T{hour:02d}:00",
                     f"{g:.2f}", f"{b:.2f}", f"{d:.2f}", f"{t:.2f}"))
    return rows


def load_year(year, seed):
    rng = lcg(seed)
    rows = []
    n = 0
    for month, day, hour in timestamps(year):
        if hour == 0:
            n += 1
        weekday = (4 + (n - 1)) % 7 < 5  # 2015-01-01 is a Thursday
        winter = max(0.0, -math.cos(2 * math.pi * (n - 24) / 365.0))
        summer = max(0.0, math.cos(2 * math.pi * (n - 24) / 365.0))

        kwh = 0.28
        if 6 <= hour < 9:
            kwh += (0.45 if weekday else 0.30) + 0.20 * winter
        elif 9 <= hour < 17:
            kwh += 0.08 if weekday else 0.35
        elif 17 <= hour < 23:
            kwh += (1.05 if weekday else 0.95) + 0.55 * winter
        if 13 <= hour < 21:
            kwh += 0.45 * summer
        kwh *= 1.0 + 0.24 * (rng() - 0.5)
        rows.append((f"{year:04d}-{month:02d}-{day:02d}T{hour:02d}:00", f"{kwh:.4f}"))
    return rows


def main():
    os.makedirs(OUT_DIR, exist_ok=True)

    with open(os.path.join(OUT_DIR, "weather_sydney.csv"), "w") as f:
        f.write(f"# latitude: {LAT}\n# longitude: {LON}\n# timezone: {TZ}\n")
        f.write("timestamp,global_whm2,beam_whm2,diffuse_whm2,ambient_c\n")
        total = 0.0
        for year, seed in ((2014, 20140101), (2015, 20150101)):
            rows = weather_year(year, seed)
            total += sum(float(r[1]) for r in rows)
            for r in rows:
                f.write(",".join(r) + "\n")
        print(f"weather: mean annual GHI {total / 2 / 1000.0:.1f} kWh/m2")

    with open(os.path.join(OUT_DIR, "load_customer1.csv"), "w") as f:
        f.write("# customer: customer1\n")
        f.write("timestamp,load_kwh\n")
        rows = load_year(2015, 77001)
        for r in rows:
            f.write(",".join(r) + "\n")
        print(f"load: annual total {sum(float(r[1]) for r in rows):.0f} kWh")


if __name__ == "__main__":
    main()
