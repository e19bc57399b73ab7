#include "flexsched/bilevel/bilevel_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flexsched/milp/lp_format.hpp"
#include "flexsched/milp/lp_solver.hpp"

namespace flexsched::bilevel {

using milp::ColId;
using milp::kInf;
using milp::RowId;
using milp::Sense;
using milp::Term;

namespace {

std::string hour(int t) { return "(t" + std::to_string(t + 1) + ")"; }

std::string hour_scenario(const char* tag, int index, int t, int s) {
  return std::string("(") + tag + std::to_string(index) + ",t" + std::to_string(t + 1) + ",s" +
         std::to_string(s + 1) + ")";
}

void require_length(const std::vector<double>& series, int horizon, const std::string& what) {
  if (static_cast<int>(series.size()) < horizon) {
    throw milp::ModelError(what + " covers " + std::to_string(series.size()) +
                           " hours, horizon is " + std::to_string(horizon));
  }
}

double at_or_zero(const std::vector<double>& series, int t) {
  return t < static_cast<int>(series.size()) ? series[t] : 0.0;
}

}  // namespace

void add_first_stage(BilevelModel& bm, const model::Case& c) {
  const int T = c.config.horizon;
  const model::MarketData& mk = c.market;
  bm.ul.horizon = T;
  bm.flexibility = c.config.flexibility_enabled;
  for (int t = 0; t < T; ++t) {
    bm.ul.purchase.push_back(bm.milp.add_column("pe" + hour(t), 0.0, mk.wem_purchase_cap, -mk.wem_price[t]));
  }
  for (int t = 0; t < T; ++t) {
    bm.ul.price.push_back(bm.milp.add_column("rho" + hour(t), 0.0, mk.lem_price_cap));
  }
  if (bm.flexibility) {
    for (int t = 0; t < T; ++t) {
      bm.ul.flex.push_back(bm.milp.add_column("df" + hour(t), 0.0, kInf, -at_or_zero(mk.penalty_price, t)));
    }
  }
}

void build_lower_levels(BilevelModel& bm, const model::Case& c) {
  const int T = c.config.horizon;
  PriceSource prices;
  prices.columns = bm.ul.price;
  for (const model::Microgrid& mg : c.microgrids) {
    require_length(mg.demand, T, "mg" + std::to_string(mg.id) + " demand");
    MgBlock b;
    b.mg_id = mg.id;
    b.bus = mg.bus;
    b.lp = build_ll_lp(mg, T);
    b.kkt = derive_kkt(b.lp);
    const std::string prefix = "mg" + std::to_string(mg.id) + "_";
    BigM m = default_big_m(b.lp, b.kkt, c.market.lem_price_cap, c.config.big_m_primal, c.config.big_m_dual);
    b.primal = add_ll_primal(bm.milp, b.lp, prefix);
    b.duals = add_kkt(bm.milp, b.lp, b.kkt, b.primal, prices, m, prefix);
    b.encoding = encode_complementarity(bm.milp, b.lp, b.kkt, b.primal, b.duals, m, prefix);
    b.duality = strong_duality_expr(b.lp, b.kkt, b.primal, b.duals);
    bm.mgs.push_back(std::move(b));
  }
}

void build_upper_level(BilevelModel& bm, const model::Case& c) {
  const int T = c.config.horizon;
  const int S = bm.scenarios.size();
  const model::NetworkModel& net = c.network;
  const model::MarketData& mk = c.market;
  const int N = net.num_buses();
  const int G = static_cast<int>(net.dgs.size());
  UpperLevelIndex& ul = bm.ul;
  ul.num_scenarios = S;
  ul.num_dgs = G;
  ul.num_buses = N;
  milp::MilpModel& m = bm.milp;

  // scenario-dependent data
  bm.bus_load.assign(static_cast<size_t>(S) * T * N, 0.0);
  bm.pv_output.assign(static_cast<size_t>(S) * T * net.pvs.size(), 0.0);
  for (int s = 0; s < S; ++s) {
    const scenario::Scenario& sc = bm.scenarios.scenarios[s];
    for (int t = 0; t < T; ++t) {
      for (int b = 1; b <= N; ++b) {
        bm.bus_load[(s * T + t) * N + b - 1] = net.bus(b).base_load[t] * sc.load_multiplier[t];
      }
      for (size_t k = 0; k < net.pvs.size(); ++k) {
        bm.pv_output[(s * T + t) * net.pvs.size() + k] = net.pvs[k].forecast[t] * sc.pv_multiplier[t];
      }
    }
  }

  // purchase and IL caps as bounds; expected-cost objective terms
  double retail = 0.0;
  for (int s = 0; s < S; ++s) {
    const double pi = bm.scenarios.scenarios[s].probability;
    for (int t = 0; t < T; ++t) {
      for (int g = 0; g < G; ++g) {
        const model::DgUnit& dg = net.dgs[g];
        ul.disco_dg.push_back(m.add_column("dg" + hour_scenario("g", g + 1, t, s), dg.p_min, dg.p_max, -pi * dg.bid));
      }
      for (int b = 1; b <= N; ++b) {
        const double load = bm.load(b, t, s);
        const double cap = std::min(mk.disco_il_cap, mk.disco_il_fraction * load);
        retail += pi * at_or_zero(mk.retail_price, t) * load;
        ul.disco_il.push_back(cap > 0.0 ? m.add_column("il" + hour_scenario("b", b, t, s), 0.0, cap,
                                                       -pi * mk.disco_il_bid[t])
                                        : ColId{});
      }
    }
  }
  m.add_objective_offset(retail);

  // Disco DG limits and ramps
  for (int s = 0; s < S; ++s) {
    for (int g = 0; g < G; ++g) {
      const model::DgUnit& dg = net.dgs[g];
      for (int t = 0; t < T; ++t) {
        const std::string tag = hour_scenario("g", g + 1, t, s);
        const ColId cur = ul.dg(g, t, s);
        if (t == 0) {
          ul.dg_ramp_rows.push_back(m.add_row("dgup" + tag, Sense::kLessEqual, dg.ramp_up + dg.p_initial, {{cur, 1.0}}));
          ul.dg_ramp_rows.push_back(m.add_row("dgdn" + tag, Sense::kLessEqual, dg.ramp_down - dg.p_initial, {{cur, -1.0}}));
        } else {
          const ColId prev = ul.dg(g, t - 1, s);
          ul.dg_ramp_rows.push_back(m.add_row("dgup" + tag, Sense::kLessEqual, dg.ramp_up, {{cur, 1.0}, {prev, -1.0}}));
          ul.dg_ramp_rows.push_back(m.add_row("dgdn" + tag, Sense::kLessEqual, dg.ramp_down, {{prev, 1.0}, {cur, -1.0}}));
        }
      }
    }
  }

  // flexibility rows; the first hour only when an initial purchase is given
  if (bm.flexibility) {
    for (int t = 0; t < T; ++t) {
      if (t == 0 && !c.config.initial_purchase) continue;
      const ColId df = ul.flex[t];
      std::vector<Term> step = {{ul.purchase[t], 1.0}};
      double rhs = 0.0;
      if (t == 0) rhs = *c.config.initial_purchase;
      else step.push_back({ul.purchase[t - 1], -1.0});
      std::vector<Term> up = step, down = step;
      up.push_back({df, -1.0});
      down.push_back({df, 1.0});
      ul.purchase_ramp_rows.push_back(m.add_row("peup" + hour(t), Sense::kLessEqual, rhs, std::move(up)));
      ul.purchase_ramp_rows.push_back(m.add_row("pedn" + hour(t), Sense::kGreaterEqual, rhs, std::move(down)));

      std::vector<Term> agg;
      for (const MgBlock& b : bm.mgs) agg.push_back({b.col(LlFamily::kRamp, t), 1.0});
      std::vector<Term> agg_up = agg, agg_down = agg;
      agg_up.push_back({df, -1.0});
      agg_down.push_back({df, 1.0});
      ul.mg_ramp_rows.push_back(m.add_row("mgrup" + hour(t), Sense::kLessEqual, 0.0, std::move(agg_up)));
      ul.mg_ramp_rows.push_back(m.add_row("mgrdn" + hour(t), Sense::kGreaterEqual, 0.0, std::move(agg_down)));
    }
  }

  // LEM revenue
  for (const MgBlock& b : bm.mgs) {
    for (const Term& term : b.duality.terms) m.add_objective(term.col, term.coef);
    m.add_objective_offset(b.duality.constant);
  }

  // power flow
  ul.flow = flow::add_flow_columns(m, net, T, S);
  bm.flow_counts = flow::emit_flow_block(m, ul.flow, net, c.config.pwl_segments, [&](int bus, int t, int s) {
    flow::BusInjections inj;
    if (bus == 1) inj.terms.push_back({ul.purchase[t], 1.0});
    if (ColId il = ul.il(bus, t, s)) inj.terms.push_back({il, 1.0});
    for (int g = 0; g < G; ++g) {
      if (net.dgs[g].bus == bus) inj.terms.push_back({ul.dg(g, t, s), 1.0});
    }
    for (const MgBlock& b : bm.mgs) {
      if (b.bus == bus) inj.terms.push_back({b.col(LlFamily::kExchange, t), -1.0});
    }
    double pv = 0.0;
    for (size_t k = 0; k < net.pvs.size(); ++k) {
      if (net.pvs[k].bus == bus) pv += bm.pv_output[(s * T + t) * net.pvs.size() + k];
    }
    inj.constant = pv - bm.load(bus, t, s);
    return inj;
  });
}

BilevelModel assemble_milp(const model::Case& c, const scenario::ScenarioSet& scenarios) {
  const int T = c.config.horizon;
  if (T < 1) throw milp::ModelError("horizon must be at least 1");
  if (scenarios.size() < 1) throw milp::ModelError("scenario set is empty");
  if (scenarios.horizon() != T) {
    throw milp::ModelError("scenario horizon " + std::to_string(scenarios.horizon()) +
                           " differs from model horizon " + std::to_string(T));
  }
  for (const scenario::Scenario& s : scenarios.scenarios) {
    if (static_cast<int>(s.pv_multiplier.size()) != T) {
      throw milp::ModelError("scenario " + std::to_string(s.id) + " pv series length mismatch");
    }
  }
  require_length(c.market.wem_price, T, "wem_price");
  require_length(c.market.disco_il_bid, T, "disco_il_bid");
  for (const model::Bus& b : c.network.buses) require_length(b.base_load, T, "bus " + std::to_string(b.id) + " load");
  for (const model::PvUnit& p : c.network.pvs) require_length(p.forecast, T, p.name + " forecast");

  BilevelModel bm;
  bm.scenarios = scenarios;
  bm.milp.set_objective_sense(milp::ObjectiveSense::kMaximize);
  add_first_stage(bm, c);
  build_lower_levels(bm, c);
  build_upper_level(bm, c);
  return bm;
}

std::vector<double> solved_prices(const BilevelModel& bm, std::span<const double> x) {
  std::vector<double> p;
  for (ColId c : bm.ul.price) p.push_back(x[c.value]);
  return p;
}

SolutionAudit audit_solution(const BilevelModel& bm, std::span<const double> x) {
  SolutionAudit a;
  const std::vector<double> rho = solved_prices(bm, x);
  for (const MgBlock& b : bm.mgs) {
    std::vector<double> ll_x;
    for (ColId c : b.primal.primal) ll_x.push_back(x[c.value]);

    double revenue = 0.0;
    for (int t = 0; t < b.lp.horizon; ++t) revenue += rho[t] * x[b.col(LlFamily::kExchange, t).value];
    a.strong_duality_residual = std::max(a.strong_duality_residual, std::abs(b.duality.evaluate(x) - revenue));

    for (int t = 0; t < b.lp.horizon; ++t) {
      double prev = 0.0;
      if (t > 0) {
        prev = x[b.col(LlFamily::kExchange, t - 1).value];
      } else {
        // the first-hour ramp row carries P^MG_0 on the right-hand side
        for (const LlRow& r : b.lp.rows) {
          if (r.kind == LlRowKind::kExchangeRamp && r.t == 0) prev = r.rhs;
        }
      }
      const double expected = x[b.col(LlFamily::kExchange, t).value] - prev;
      a.ramp_residual = std::max(a.ramp_residual, std::abs(x[b.col(LlFamily::kRamp, t).value] - expected));
    }

    for (RowId r : b.duals.stationarity) {
      const milp::Row& row = bm.milp.row(r);
      a.stationarity_residual = std::max(a.stationarity_residual,
                                         std::abs(bm.milp.row_activity(r.value, x) - row.rhs));
    }
    for (const ComplementarityPair& p : b.kkt.pairs) {
      const LlRow& row = b.lp.rows[p.row];
      double ax = 0.0;
      for (const LlTerm& t : row.terms) ax += t.coef * ll_x[t.index];
      const double slack = std::max(0.0, row.sense == Sense::kLessEqual ? row.rhs - ax : ax - row.rhs);
      a.complementarity_residual = std::max(a.complementarity_residual, slack * std::abs(x[b.duals.dual[p.row].value]));
    }

    const double at_x = b.lp.objective(ll_x, rho);
    a.ll_objective.push_back(at_x);
    milp::Solution direct = milp::solve_lp(to_direct_lp(b.lp, rho, true));
    if (!direct.optimal()) {
      a.warnings.push_back(b.lp.name + ": direct re-solve at the solved prices ended " +
                           std::string(milp::to_string(direct.status)));
      a.ll_optimum.push_back(std::nan(""));
      a.ll_optimality_gap = kInf;
    } else {
      a.ll_optimum.push_back(direct.objective);
      a.ll_optimality_gap = std::max(a.ll_optimality_gap, std::abs(at_x - direct.objective));
    }
    for (std::string& w : big_m_warnings(bm.milp, b.lp, b.kkt, b.primal, b.duals, b.encoding, x)) {
      a.warnings.push_back(std::move(w));
    }
  }
  return a;
}

void write_kkt_audit(const BilevelModel& bm, std::ostream& out) {
  for (const MgBlock& b : bm.mgs) write_kkt_audit(b.lp, b.kkt, b.encoding.big_m, out);
}

}  // namespace flexsched::bilevel
