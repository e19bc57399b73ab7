#include "flexsched/bilevel/lower_level.hpp"

#include <algorithm>
#include <string>

namespace flexsched::bilevel {

using milp::Sense;

const char* to_string(LlFamily family) {
  switch (family) {
    case LlFamily::kExchange: return "pmg";
    case LlFamily::kDg: return "pdg";
    case LlFamily::kIl: return "pil";
    case LlFamily::kCharge: return "pch";
    case LlFamily::kDischarge: return "pdch";
    case LlFamily::kEnergy: return "e";
    case LlFamily::kRamp: return "dmg";
    case LlFamily::kOther: return "x";
  }
  return "?";
}

int LowerLevelLp::num_inequalities() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                        [](const LlRow& r) { return r.sense != Sense::kEqual; }));
}

int LowerLevelLp::var_index(LlFamily family, int t) const {
  for (int k = 0; k < num_vars(); ++k) {
    if (vars[k].family == family && vars[k].t == t) return k;
  }
  return -1;
}

int LowerLevelLp::add_var(LlVar v) {
  vars.push_back(std::move(v));
  return num_vars() - 1;
}

int LowerLevelLp::add_row(LlRow r) {
  rows.push_back(std::move(r));
  return num_rows() - 1;
}

double LowerLevelLp::objective(const std::vector<double>& x, const std::vector<double>& prices) const {
  double v = 0.0;
  for (int k = 0; k < num_vars(); ++k) {
    double c = vars[k].cost;
    if (vars[k].price_hour >= 0) c += prices.at(vars[k].price_hour);
    v += c * x[k];
  }
  return v;
}

namespace {

double hour_value(const std::vector<double>& series, int t) {
  return t < static_cast<int>(series.size()) ? series[t] : 0.0;
}

}  // namespace

LowerLevelLp build_ll_lp(const model::Microgrid& mg, int horizon) {
  LowerLevelLp lp;
  lp.name = "mg" + std::to_string(mg.id);
  lp.horizon = horizon;
  const model::DgUnit& dg = mg.dg;
  const model::StorageUnit& es = mg.storage;
  const double pmg = mg.exchange_max;

  auto tag = [](int t) { return "(t" + std::to_string(t + 1) + ")"; };
  std::vector<int> x_mg, x_dg, x_il, x_ch, x_dch, x_e, x_ramp;
  for (int t = 0; t < horizon; ++t) {
    x_mg.push_back(lp.add_var({"pmg" + tag(t), LlFamily::kExchange, t, -pmg, pmg, 0.0, t}));
  }
  for (int t = 0; t < horizon; ++t) {
    x_dg.push_back(lp.add_var({"pdg" + tag(t), LlFamily::kDg, t, dg.p_min, dg.p_max, dg.bid, -1}));
  }
  for (int t = 0; t < horizon; ++t) {
    const double cap = mg.il_cap_fraction * hour_value(mg.demand, t);
    x_il.push_back(lp.add_var({"pil" + tag(t), LlFamily::kIl, t, 0.0, cap, hour_value(mg.il_bid, t), -1}));
  }
  for (int t = 0; t < horizon; ++t) {
    x_ch.push_back(lp.add_var({"pch" + tag(t), LlFamily::kCharge, t, 0.0, es.p_rate_max, 0.0, -1}));
  }
  for (int t = 0; t < horizon; ++t) {
    x_dch.push_back(lp.add_var({"pdch" + tag(t), LlFamily::kDischarge, t, 0.0, es.p_rate_max, 0.0, -1}));
  }
  for (int t = 0; t < horizon; ++t) {
    x_e.push_back(lp.add_var({"e" + tag(t), LlFamily::kEnergy, t, es.e_min, es.e_max, 0.0, -1}));
  }
  for (int t = 0; t < horizon; ++t) {
    const double prev_lo = t == 0 ? mg.initial_exchange : -pmg;
    const double prev_hi = t == 0 ? mg.initial_exchange : pmg;
    x_ramp.push_back(lp.add_var({"dmg" + tag(t), LlFamily::kRamp, t, -pmg - prev_hi, pmg - prev_lo, 0.0, -1}));
  }

  for (int t = 0; t < horizon; ++t) {
    const std::string h = tag(t);
    lp.add_row({"bal" + h, Sense::kEqual, hour_value(mg.demand, t) - hour_value(mg.pv, t),
                {{x_mg[t], 1.0}, {x_dg[t], 1.0}, {x_il[t], 1.0}, {x_dch[t], 1.0}, {x_ch[t], -1.0}}, LlRowKind::kBalance, t});
    lp.add_row({"mgmin" + h, Sense::kGreaterEqual, -pmg, {{x_mg[t], 1.0}}, LlRowKind::kExchangeLimit, t});
    lp.add_row({"mgmax" + h, Sense::kLessEqual, pmg, {{x_mg[t], 1.0}}, LlRowKind::kExchangeLimit, t});
    lp.add_row({"dgmin" + h, Sense::kGreaterEqual, dg.p_min, {{x_dg[t], 1.0}}, LlRowKind::kDgLimit, t});
    lp.add_row({"dgmax" + h, Sense::kLessEqual, dg.p_max, {{x_dg[t], 1.0}}, LlRowKind::kDgLimit, t});
    if (t == 0) {
      lp.add_row({"dgup" + h, Sense::kLessEqual, dg.ramp_up + dg.p_initial, {{x_dg[t], 1.0}}, LlRowKind::kDgRamp, t});
      lp.add_row({"dgdn" + h, Sense::kLessEqual, dg.ramp_down - dg.p_initial, {{x_dg[t], -1.0}}, LlRowKind::kDgRamp, t});
    } else {
      lp.add_row({"dgup" + h, Sense::kLessEqual, dg.ramp_up, {{x_dg[t], 1.0}, {x_dg[t - 1], -1.0}}, LlRowKind::kDgRamp, t});
      lp.add_row({"dgdn" + h, Sense::kLessEqual, dg.ramp_down, {{x_dg[t - 1], 1.0}, {x_dg[t], -1.0}}, LlRowKind::kDgRamp, t});
    }
    lp.add_row({"ilmin" + h, Sense::kGreaterEqual, 0.0, {{x_il[t], 1.0}}, LlRowKind::kIlLimit, t});
    lp.add_row({"ilmax" + h, Sense::kLessEqual, lp.vars[x_il[t]].upper, {{x_il[t], 1.0}}, LlRowKind::kIlLimit, t});
    lp.add_row({"chmin" + h, Sense::kGreaterEqual, 0.0, {{x_ch[t], 1.0}}, LlRowKind::kStorageRate, t});
    lp.add_row({"chmax" + h, Sense::kLessEqual, es.p_rate_max, {{x_ch[t], 1.0}}, LlRowKind::kStorageRate, t});
    lp.add_row({"dchmin" + h, Sense::kGreaterEqual, 0.0, {{x_dch[t], 1.0}}, LlRowKind::kStorageRate, t});
    lp.add_row({"dchmax" + h, Sense::kLessEqual, es.p_rate_max, {{x_dch[t], 1.0}}, LlRowKind::kStorageRate, t});
    lp.add_row({"emin" + h, Sense::kGreaterEqual, es.e_min, {{x_e[t], 1.0}}, LlRowKind::kEnergyLimit, t});
    lp.add_row({"emax" + h, Sense::kLessEqual, es.e_max, {{x_e[t], 1.0}}, LlRowKind::kEnergyLimit, t});
    // E_t - E_{t-1} - eta_ch P^ch + P^dch / eta_dch = 0
    std::vector<LlTerm> dyn = {{x_e[t], 1.0}, {x_ch[t], -es.eta_ch}, {x_dch[t], 1.0 / es.eta_dch}};
    if (t == 0) {
      lp.add_row({"es" + h, Sense::kEqual, es.e_initial, std::move(dyn), LlRowKind::kEnergyBalance, t});
    } else {
      dyn.push_back({x_e[t - 1], -1.0});
      lp.add_row({"es" + h, Sense::kEqual, 0.0, std::move(dyn), LlRowKind::kEnergyBalance, t});
    }
    // Delta_t = P^MG_t - P^MG_{t-1}
    if (t == 0) {
      lp.add_row({"ramp" + h, Sense::kEqual, mg.initial_exchange, {{x_mg[t], 1.0}, {x_ramp[t], -1.0}}, LlRowKind::kExchangeRamp, t});
    } else {
      lp.add_row({"ramp" + h, Sense::kEqual, 0.0,
                  {{x_mg[t], 1.0}, {x_mg[t - 1], -1.0}, {x_ramp[t], -1.0}}, LlRowKind::kExchangeRamp, t});
    }
  }
  return lp;
}

milp::MilpModel to_direct_lp(const LowerLevelLp& lp, const std::vector<double>& prices,
                             bool box_bounds) {
  milp::MilpModel m;
  std::vector<milp::ColId> cols;
  for (const LlVar& v : lp.vars) {
    double c = v.cost + (v.price_hour >= 0 ? prices.at(v.price_hour) : 0.0);
    cols.push_back(box_bounds ? m.add_column(v.name, v.lower, v.upper, c)
                              : m.add_column(v.name, -milp::kInf, milp::kInf, c));
  }
  for (const LlRow& r : lp.rows) {
    std::vector<milp::Term> terms;
    for (const LlTerm& t : r.terms) terms.push_back({cols[t.index], t.coef});
    m.add_row(r.name, r.sense, r.rhs, std::move(terms));
  }
  return m;
}

}  // namespace flexsched::bilevel
