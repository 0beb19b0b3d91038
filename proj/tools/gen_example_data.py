#!/usr/bin/env python3
"""Regenerates the example scenario and synthetic RSSI measurements under data/.

The scenario is laid out in local metres (x east, y north) and converted to
WGS-84 with the same equirectangular constants the library uses, around the
reference point in data/scenario/run.cfg.
"""

import math
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
REF_LAT, REF_LON = 22.3, 39.1
M_PER_DEG_LAT = 110574.0
M_PER_DEG_LON = 111320.0 * math.cos(math.radians(REF_LAT))

# Default curves: crossings of -30 dBm at 162 m (indoor) and 725 m (outdoor).
RSSI0 = -30.0
INDOOR = (RSSI0 + 28.0 * math.log10(162.0), 2.8)
OUTDOOR = (RSSI0 + 20.0 * math.log10(725.0), 2.0)


def geo(x, y):
    return REF_LAT + y / M_PER_DEG_LAT, REF_LON + x / M_PER_DEG_LON


def write_scenario(out):
    out.mkdir(parents=True, exist_ok=True)
    uav_alt = 50.0
    with open(out / "waypoints.csv", "w") as f:
        f.write("# 9 prior locations, one every 5 s, 300 m apart heading east\n")
        f.write("t_s,lat,lon,alt_m\n")
        for i in range(9):
            lat, lon = geo(300.0 * i, 0.0)
            f.write(f"{5 * i},{lat:.10f},{lon:.10f},{uav_alt:g}\n")

    nodes = [
        (1, "0013A200400A0101", 150.0, 0.0),
        (2, "0013A200400A0102", 450.0, -450.0),
        (3, "0013A200400A0103", 2250.0, 0.0),
    ]
    with open(out / "nodes.csv", "w") as f:
        f.write("id,mac,lat,lon,alt_m\n")
        for nid, mac, x, y in nodes:
            lat, lon = geo(x, y)
            f.write(f"{nid},{mac},{lat:.10f},{lon:.10f},0\n")

    # corner x, y and dims dx, dy, dz in metres
    obstacles = [
        (1, 650.0, -250.0, 50.0, 50.0, 40.0),   # on the T4 -> N2 link
        (2, 1900.0, -10.0, 50.0, 20.0, 10.0),   # low roof under the T7 -> N3 link
        (3, 1100.0, 200.0, 80.0, 60.0, 30.0),   # off every link
        (4, 300.0, 40.0, 60.0, 40.0, 25.0),     # beside the T3 -> N1 link
    ]
    with open(out / "obstacles.csv", "w") as f:
        f.write("id,lat,lon,dx_m,dy_m,dz_m\n")
        for oid, x, y, dx, dy, dz in obstacles:
            lat, lon = geo(x, y)
            f.write(f"{oid},{lat:.10f},{lon:.10f},{dx:g},{dy:g},{dz:g}\n")


def write_measurements(out, seed=2012):
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    rows = []
    for env, (intercept, n), distances in (
        ("indoor", INDOOR, np.arange(10.0, 301.0, 10.0)),
        ("outdoor", OUTDOOR, np.arange(50.0, 1001.0, 50.0)),
    ):
        for _ in range(4):  # four measurement sets per environment
            noise = rng.uniform(-0.5, 0.5, size=distances.size)
            rssi = intercept - 10.0 * n * np.log10(distances) + noise
            rows += [(d, r, env) for d, r in zip(distances, rssi)]
    with open(out / "measurements.csv", "w") as f:
        f.write("# synthetic: default curves plus uniform +-0.5 dB noise, 4 sets each\n")
        f.write("distance_m,rssi_dbm,environment\n")
        for d, r, env in rows:
            f.write(f"{d:g},{r:.3f},{env}\n")


if __name__ == "__main__":
    write_scenario(ROOT / "data" / "scenario")
    write_measurements(ROOT / "data" / "measurements")
