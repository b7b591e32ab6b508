#!/usr/bin/env python3
"""Regenerate the bundled CSV assets.

Drive cycles are sampled at 1 Hz from piecewise-linear breakpoint tables
(NEDC/WLTC from the public schedules, urban300 is a synthetic test cycle).
Powertrain maps are synthesized analytic surfaces; drop in measured data by
replacing the CSVs, keeping the same column layout.
"""

import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))
ASSETS = os.path.join(HERE, "..", "crates", "core", "assets")

KMH = 1.0 / 3.6
RPM = math.pi / 30.0


def sample_breakpoints(points, dt=1.0):
    """Linear interpolation of (t_s, v_kmh) breakpoints onto a 1 Hz grid."""
    t_end = points[-1][0]
    n = int(round(t_end / dt))
    out = []
    j = 0
    for i in range(n + 1):
        t = i * dt
        while j + 1 < len(points) and points[j + 1][0] < t:
            j += 1
        (t0, v0), (t1, v1) = points[j], points[min(j + 1, len(points) - 1)]
        if t1 == t0:
            v = v1
        else:
            a = (t - t0) / (t1 - t0)
            v = v0 + a * (v1 - v0)
        out.append((t, max(v, 0.0) * KMH))
    return out


def write_cycle(name, samples, comment):
    path = os.path.join(ASSETS, "cycles", name + ".csv")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write("# %s\n" % comment)
        f.write("time_s,speed_mps\n")
        for t, v in samples:
            f.write("%.1f,%.6f\n" % (t, v))
    print("wrote", path, len(samples), "samples")


# ECE-15 elementary urban segment, 195 s.
ECE15 = [
    (0, 0), (11, 0), (15, 15), (23, 15), (28, 0), (49, 0),
    (61, 32), (85, 32), (96, 0), (117, 0), (143, 50), (155, 50),
    (163, 35), (176, 35), (188, 0), (195, 0),
]

# Extra-urban segment, 400 s, peak 120 km/h.
EUDC = [
    (0, 0), (20, 0), (61, 70), (111, 70), (119, 50), (188, 50),
    (201, 70), (251, 70), (286, 100), (316, 100), (336, 120),
    (346, 120), (380, 0), (400, 0),
]


def nedc():
    pts = []
    for rep in range(4):
        off = rep * 195
        for t, v in ECE15:
            if pts and pts[-1][0] == t + off:
                continue
            pts.append((t + off, v))
    for t, v in EUDC:
        if pts and pts[-1][0] == t + 780:
            continue
        pts.append((t + 780, v))
    return sample_breakpoints(pts)


# WLTC class-3 phase structure (low/medium/high/extra-high) with the
# standard durations and phase peaks; intermediate points approximate the
# published curve.
WLTC = [
    (0, 0), (11, 0), (29, 40), (45, 25), (61, 48), (88, 45), (107, 0),
    (123, 0), (141, 32), (160, 20), (177, 35), (199, 30), (217, 0),
    (248, 0), (266, 50), (296, 56.5), (316, 45), (334, 50), (357, 25),
    (372, 30), (386, 0), (410, 0), (427, 35), (448, 30), (467, 40),
    (486, 30), (502, 0), (523, 0), (539, 30), (556, 15), (570, 25),
    (589, 0),
    (600, 0), (625, 50), (652, 40), (672, 60), (702, 55), (721, 70),
    (754, 76.6), (786, 60), (810, 65), (835, 50), (860, 55), (880, 40),
    (905, 48), (930, 30), (950, 0), (975, 0), (995, 45), (1022, 0),
    (1035, 0), (1070, 60), (1105, 50), (1140, 70), (1180, 65),
    (1215, 80), (1260, 75), (1300, 90), (1340, 97.4), (1380, 85),
    (1410, 70), (1440, 40), (1465, 20), (1477, 0),
    (1490, 0), (1525, 70), (1560, 90), (1600, 110), (1640, 120),
    (1680, 131.3), (1710, 125), (1740, 100), (1770, 60), (1790, 20),
    (1800, 0),
]

# 300 s synthetic urban cycle for fast tests: stop-and-go with one faster
# leg, peak 60 km/h.
URBAN300 = [
    (0, 0), (10, 0), (18, 30), (40, 30), (48, 0), (60, 0),
    (70, 40), (95, 40), (105, 20), (120, 20), (130, 50), (160, 50),
    (172, 0), (186, 0), (196, 35), (220, 35), (232, 60), (252, 60),
    (268, 15), (278, 15), (290, 0), (300, 0),
]


def write_grid_map(name, omegas, torques, value_fn, comment):
    path = os.path.join(ASSETS, "maps", name + ".csv")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write("# %s\n" % comment)
        f.write("omega_radps,torque_nm,value\n")
        for w in omegas:
            for tq in torques:
                f.write("%.6f,%.3f,%.6f\n" % (w, tq, value_fn(w, tq)))
    print("wrote", path, len(omegas) * len(torques), "points")


def engine_bsfc(w, tq):
    """Synthetic BSFC surface [g/kWh], peak efficiency 0.38 at 2500 rpm / 180 Nm."""
    lhv = 44.0e6
    s = 1.0 - 0.45 * ((w - 2500 * RPM) / (2700 * RPM)) ** 2
    u = 1.0 - 0.50 * ((tq - 180.0) / 170.0) ** 2
    eta = 0.38 * max(s, 0.3) * max(u, 0.3)
    return 3.6e9 / (eta * lhv)


def machine_eff(peak_w_rpm, torque_span):
    def eff(w, tq):
        s = 1.0 - 0.18 * ((w - peak_w_rpm * RPM) / (peak_w_rpm * RPM)) ** 2
        u = 1.0 - 0.15 * ((abs(tq) - 0.5 * torque_span) / torque_span) ** 2
        return min(max(0.94 * s * u, 0.75), 0.94)
    return eff


def write_battery():
    path = os.path.join(ASSETS, "maps", "battery_curve.csv")
    with open(path, "w", newline="\n") as f:
        f.write("# open-circuit voltage and internal resistance vs SOC\n")
        f.write("soc,u_oc_v,r_ohm\n")
        for i in range(21):
            soc = i * 0.05
            u = 345.0 + 40.0 * (soc - 0.5)
            f.write("%.2f,%.4f,%.4f\n" % (soc, u, 0.1))
    print("wrote", path)


def main():
    write_cycle("nedc", nedc(), "NEDC: 4x ECE-15 + EUDC, 1180 s, peak 120 km/h, 1 Hz")
    write_cycle("wltc", sample_breakpoints(WLTC), "WLTC class-3 phase approximation, 1800 s, peak 131.3 km/h, 1 Hz")
    write_cycle("urban300", sample_breakpoints(URBAN300), "synthetic 300 s urban test cycle, peak 60 km/h, 1 Hz")

    omegas = [(800 + 200 * i) * RPM for i in range(23)]   # 800..5200 rpm
    torques = [10.0 * (i + 1) for i in range(27)]          # 10..270 Nm
    write_grid_map("engine_bsfc", omegas, torques, engine_bsfc,
                   "synthetic engine BSFC map [g/kWh]")

    mg1_omegas = [500 * i * RPM for i in range(1, 19)]     # 500..9000 rpm
    mg1_torques = [5.0 * i for i in range(24)]             # 0..115 Nm
    write_grid_map("mg1_efficiency", mg1_omegas, mg1_torques,
                   machine_eff(4500, 115.0), "synthetic generator efficiency map [-]")

    mg2_omegas = [250 * i * RPM for i in range(1, 25)]     # 250..6000 rpm
    mg2_torques = [10.0 * i for i in range(16)]            # 0..150 Nm
    write_grid_map("mg2_efficiency", mg2_omegas, mg2_torques,
                   machine_eff(3000, 150.0), "synthetic drive-motor efficiency map [-]")

    write_battery()


if __name__ == "__main__":
    main()
