#!/usr/bin/env python3
"""Writes the reconstructed 33-bus case into data/ieee33.

Feeder topology, branch impedances and nominal bus loads are the published
Baran-Wu 33-bus values. Everything else (load and PV shapes, prices, DER and
microgrid parameters, current limits) is synthetic and chosen for this
repository. Loads are doubled and impedances scaled by 0.15 so that the
linearised flow block stays inside the 0.95-1.05 pu window in every scenario.
"""
import math
import os
import sys

BRANCHES = [
    (1, 2, 0.0922, 0.0470), (2, 3, 0.4930, 0.2511), (3, 4, 0.3660, 0.1864),
    (4, 5, 0.3811, 0.1941), (5, 6, 0.8190, 0.7070), (6, 7, 0.1872, 0.6188),
    (7, 8, 0.7114, 0.2351), (8, 9, 1.0300, 0.7400), (9, 10, 1.0440, 0.7400),
    (10, 11, 0.1966, 0.0650), (11, 12, 0.3744, 0.1238), (12, 13, 1.4680, 1.1550),
    (13, 14, 0.5416, 0.7129), (14, 15, 0.5910, 0.5260), (15, 16, 0.7463, 0.5450),
    (16, 17, 1.2890, 1.7210), (17, 18, 0.7320, 0.5740), (2, 19, 0.1640, 0.1565),
    (19, 20, 1.5042, 1.3554), (20, 21, 0.4095, 0.4784), (21, 22, 0.7089, 0.9373),
    (3, 23, 0.4512, 0.3083), (23, 24, 0.8980, 0.7091), (24, 25, 0.8960, 0.7011),
    (6, 26, 0.2030, 0.1034), (26, 27, 0.2842, 0.1447), (27, 28, 1.0590, 0.9337),
    (28, 29, 0.8042, 0.7006), (29, 30, 0.5075, 0.2585), (30, 31, 0.9744, 0.9630),
    (31, 32, 0.3105, 0.3619), (32, 33, 0.3410, 0.5302),
]
LOAD_KW = {
    2: 100, 3: 90, 4: 120, 5: 60, 6: 60, 7: 200, 8: 200, 9: 60, 10: 60, 11: 45,
    12: 60, 13: 60, 14: 120, 15: 60, 16: 60, 17: 60, 18: 90, 19: 90, 20: 90,
    21: 90, 22: 90, 23: 90, 24: 420, 25: 420, 26: 60, 27: 60, 28: 60, 29: 120,
    30: 200, 31: 150, 32: 210, 33: 60,
}
LOAD_SCALE = 2.0
IMPEDANCE_SCALE = 0.15
V_BASE_KV = 12.66

LOAD_SHAPE = [0.62, 0.58, 0.55, 0.54, 0.56, 0.62, 0.70, 0.78, 0.83, 0.86, 0.88, 0.90,
              0.89, 0.88, 0.87, 0.88, 0.92, 0.98, 1.00, 0.98, 0.93, 0.85, 0.76, 0.68]
PV_SHAPE = [0.0, 0.0, 0.0, 0.0, 0.0, 0.02, 0.08, 0.22, 0.40, 0.58, 0.74, 0.86,
            0.92, 0.90, 0.80, 0.63, 0.42, 0.20, 0.05, 0.0, 0.0, 0.0, 0.0, 0.0]
WEM_PRICE = [30, 28, 27, 27, 28, 31, 36, 41, 44, 46, 47, 46,
             44, 43, 43, 46, 55, 63, 68, 64, 52, 44, 37, 33]
DISCO_IL_BID = [75, 75, 75, 75, 75, 75, 78, 80, 80, 82, 82, 85,
                85, 85, 85, 85, 81.25, 100, 100, 106.25, 90, 85, 80, 78]

DISCO_DGS = [  # name, bus, p_min, p_max, ramp_up, ramp_down, p_initial, bid
    ("dg1", 7, 0.0, 1.0, 0.4, 0.4, 0.3, 52.0),
    ("dg2", 14, 0.0, 0.8, 0.3, 0.3, 0.2, 48.0),
    ("dg3", 24, 0.0, 1.0, 0.4, 0.4, 0.3, 55.0),
    ("dg4", 30, 0.0, 0.8, 0.3, 0.3, 0.2, 50.0),
]
PVS = [("pv1", 10, 0.5), ("pv2", 16, 0.6), ("pv3", 21, 0.4), ("pv4", 28, 0.5), ("pv5", 32, 0.6)]

# id, bus, exchange_max, il_cap_fraction, demand peak, pv peak, demand shape skew
MICROGRIDS = [
    (1, 18, 1.5, 0.1, 2.0, 0.8, 0.00),
    (2, 25, 1.5, 0.1, 1.8, 0.6, 0.03),
    (3, 33, 1.5, 0.1, 1.6, 0.9, -0.03),
]
MG_DGS = [  # owner, bus, p_min, p_max, ramp_up, ramp_down, p_initial, bid
    (1, 18, 0.0, 1.4, 0.5, 0.5, 0.2, 45.0),
    (2, 25, 0.0, 1.2, 0.5, 0.5, 0.2, 40.0),
    (3, 33, 0.0, 1.2, 0.5, 0.5, 0.2, 35.0),
]
STORAGE = [  # mg, e_min, e_max, e_initial, p_rate_max, eta_ch, eta_dch
    (1, 0.3, 3.0, 1.0, 0.8, 0.95, 0.95),
    (2, 0.2, 2.0, 0.8, 0.6, 0.95, 0.95),
    (3, 0.2, 2.5, 1.0, 0.7, 0.95, 0.95),
]
# Scenario probabilities in percent, scenario s = 3 * load_branch + pv_branch + 1.
SCENARIO_PCT = [3, 6, 12, 6, 12, 42, 1, 2, 7]

HOURS = 24


def hours_header():
    return ",".join(f"h{h}" for h in range(1, HOURS + 1))


def fmt(v):
    text = f"{v:.6f}".rstrip("0").rstrip(".")
    return text if text not in ("", "-0") else "0"


def series_line(name, values):
    return name + "," + ",".join(fmt(v) for v in values)


def subtree_load(children, bus):
    own = LOAD_KW.get(bus, 0) * LOAD_SCALE / 1000.0
    return own + sum(subtree_load(children, c) for c in children.get(bus, []))


def subtree_exchange(children, bus):
    own = sum(m[2] for m in MICROGRIDS if m[1] == bus)
    return own + sum(subtree_exchange(children, c) for c in children.get(bus, []))


def normal_branches(sigma):
    phi1 = math.exp(-0.5) / math.sqrt(2 * math.pi)
    tail = 0.5 * math.erfc(1 / math.sqrt(2))
    cond = phi1 / tail
    return [1 - sigma * cond, 1.0, 1 + sigma * cond]


def beta_branches(a, b):
    from scipy import stats
    dist = stats.beta(a, b)
    mean = dist.mean()
    out = []
    for lo, hi in [(0, 1 / 3), (1 / 3, 2 / 3), (2 / 3, 1)]:
        ql, qh = dist.ppf(lo), dist.ppf(hi)
        m = stats.beta(a + 1, b)
        cond = mean * (m.cdf(qh) - m.cdf(ql)) / (1 / 3)
        out.append(cond / mean)
    return out


def main(outdir):
    os.makedirs(outdir, exist_ok=True)
    w = lambda name, text: open(os.path.join(outdir, name), "w").write(text)

    children = {}
    for f, t, _, _ in BRANCHES:
        children.setdefault(f, []).append(t)

    buses = ["# reconstructed 33-bus feeder: buses",
             "# peak_load_mw = 2 x nominal Baran-Wu load; hourly load = peak x load_shape",
             "# voltage limits in per unit of v_base_kv (case.cfg); bus 1 is the substation",
             "bus,peak_load_mw,v_min_pu,v_max_pu"]
    for b in range(1, 34):
        vmin, vmax = (1.0, 1.0) if b == 1 else (0.95, 1.05)
        buses.append(f"{b},{fmt(LOAD_KW.get(b, 0) * LOAD_SCALE / 1000.0)},{fmt(vmin)},{fmt(vmax)}")
    w("buses.csv", "\n".join(buses) + "\n")

    lines = ["# reconstructed 33-bus feeder: branches",
             "# r_ohm, x_ohm = 0.15 x Baran-Wu values; |Z| = hypot(r, x)",
             "# i_max_a: synthetic thermal limits sized for 1.2 x peak load plus full microgrid import",
             "from,to,r_ohm,x_ohm,i_max_a"]
    for f, t, r, x in BRANCHES:
        r2, x2 = r * IMPEDANCE_SCALE, x * IMPEDANCE_SCALE
        z = math.hypot(r2, x2)
        flow = 1.2 * subtree_load(children, t) + subtree_exchange(children, t)
        amps = 1000.0 * flow * z / (r2 * V_BASE_KV)
        limit = max(100, 50 * math.ceil(1.25 * amps / 50))
        lines.append(f"{f},{t},{fmt(r2)},{fmt(x2)},{limit}")
    w("lines.csv", "\n".join(lines) + "\n")

    dgs = ["# dispatchable generators; owner is 'disco' or the microgrid id",
           "name,owner,bus,p_min_mw,p_max_mw,ramp_up_mw_h,ramp_down_mw_h,p_initial_mw,bid_usd_mwh"]
    for name, bus, pmin, pmax, ru, rd, ini, bid in DISCO_DGS:
        dgs.append(f"{name},disco,{bus},{fmt(pmin)},{fmt(pmax)},{fmt(ru)},{fmt(rd)},{fmt(ini)},{fmt(bid)}")
    for owner, bus, pmin, pmax, ru, rd, ini, bid in MG_DGS:
        dgs.append(f"mg{owner}_dg,{owner},{bus},{fmt(pmin)},{fmt(pmax)},{fmt(ru)},{fmt(rd)},{fmt(ini)},{fmt(bid)}")
    w("dgs.csv", "\n".join(dgs) + "\n")

    pvs = ["# Disco-side PV; hourly forecast = capacity_mw x pv_shape", "name,bus,capacity_mw"]
    pvs += [f"{n},{b},{fmt(c)}" for n, b, c in PVS]
    w("pvs.csv", "\n".join(pvs) + "\n")

    mgs = ["# microgrids; demand and pv series are mg<id>_demand / mg<id>_pv in profiles.csv",
           "id,bus,exchange_max_mw,il_cap_fraction,initial_exchange_mw"]
    mgs += [f"{i},{b},{fmt(ex)},{fmt(il)},0" for i, b, ex, il, *_ in MICROGRIDS]
    w("microgrids.csv", "\n".join(mgs) + "\n")

    st = ["# microgrid storage", "mg,e_min_mwh,e_max_mwh,e_initial_mwh,p_rate_max_mw,eta_ch,eta_dch"]
    st += [",".join([str(s[0])] + [fmt(v) for v in s[1:]]) for s in STORAGE]
    w("storage.csv", "\n".join(st) + "\n")

    prof = ["# hourly profiles; load_shape and pv_shape are per unit, mg series in MW",
            "series," + hours_header(),
            series_line("load_shape", LOAD_SHAPE),
            series_line("pv_shape", PV_SHAPE)]
    for i, _, _, _, peak, pv_peak, skew in MICROGRIDS:
        demand = [peak * (s + skew * math.sin(2 * math.pi * h / 24)) for h, s in enumerate(LOAD_SHAPE)]
        prof.append(series_line(f"mg{i}_demand", demand))
    for i, _, _, _, peak, pv_peak, skew in MICROGRIDS:
        prof.append(series_line(f"mg{i}_pv", [pv_peak * s for s in PV_SHAPE]))
    w("profiles.csv", "\n".join(prof) + "\n")

    market = ["# prices in $/MWh; penalty, retail and microgrid IL bids default to",
              "# 1.4, 1.2 and 0.8 times the base series (market.cfg factors)",
              "series," + hours_header(),
              series_line("wem_price", WEM_PRICE),
              series_line("disco_il_bid", DISCO_IL_BID)]
    w("market.csv", "\n".join(market) + "\n")

    w("market.cfg", "\n".join([
        "# market caps and derived-price factors",
        "lem_price_cap = 90",
        "wem_purchase_cap = 12",
        "disco_il_cap = 0.5",
        "disco_il_fraction = 0.3",
        "penalty_factor = 1.4",
        "retail_factor = 1.2",
        "mg_il_factor = 0.8",
    ]) + "\n")

    w("case.cfg", "\n".join([
        "# reconstructed 33-bus case with three microgrids",
        "name = ieee33-reconstructed",
        "v_base_kv = 12.66",
        "horizon = 24",
        "horizon_start = 1",
        "flexibility = true",
        "pwl_segments = 6",
        "big_m_primal = auto",
        "big_m_dual = auto",
        "solver_mode = embedded",
        "initial_purchase = none",
        "scenario_source = override",
        "scenario_file = scenarios.csv",
        "scenario_normalize = true",
        "load_sigma = 0.1",
        "pv_distribution = beta",
        "pv_beta_a = 6",
        "pv_beta_b = 2",
    ]) + "\n")

    load_b = normal_branches(0.1)
    pv_b = beta_branches(6, 2)
    sc = ["# scenario probabilities (percent; they total 91, scenario_normalize rescales)",
          "# multipliers: load branch conditional means of N(1, 0.1) split at +-1 sigma,",
          "# pv branch conditional means of a Beta(6, 2) clearness index over tertiles",
          "scenario,probability_pct,series," + hours_header()]
    for s in range(9):
        i, j = divmod(s, 3)
        sc.append(f"{s + 1},{SCENARIO_PCT[s]},load," + ",".join(fmt(load_b[i]) for _ in range(HOURS)))
        sc.append(f"{s + 1},{SCENARIO_PCT[s]},pv," + ",".join(fmt(pv_b[j]) for _ in range(HOURS)))
    w("scenarios.csv", "\n".join(sc) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data", "ieee33"))
