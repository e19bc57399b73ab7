#include "flexsched/analysis/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "flexsched/errors.hpp"
#include "flexsched/milp/lp_format.hpp"

namespace flexsched::analysis {

using bilevel::LlFamily;
using milp::ColId;

namespace {

double value(std::span<const double> x, ColId c) { return c ? x[c.value] : 0.0; }

double at(const std::vector<double>& v, int t) { return t < static_cast<int>(v.size()) ? v[t] : 0.0; }

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
}

void note(const RunOptions& o, const std::string& msg) {
  if (o.log) o.log(msg);
}

std::string num(double v) { return milp::format_number(v); }

milp::MilpOptions effective_options(const model::CaseConfig& cfg, milp::MilpOptions o) {
  if (o.relative_gap == 0.0) o.relative_gap = cfg.relative_gap;
  o.time_limit_seconds = std::min(o.time_limit_seconds, cfg.time_limit_seconds);
  o.node_limit = std::min<int64_t>(o.node_limit, cfg.node_limit);
  return o;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

}  // namespace

double CaseReport::max_bus_residual() const {
  double m = 0.0;
  for (const BusBalance& b : bus_balance) m = std::max(m, std::abs(b.residual));
  return m;
}

double CaseReport::max_mg_residual() const {
  double m = 0.0;
  for (const MgReport& g : mgs) {
    for (double r : g.residual) m = std::max(m, std::abs(r));
  }
  return m;
}

CaseReport build_report(const model::Case& c, const bilevel::BilevelModel& bm,
                        const milp::Solution& solution, const RunOptions& options) {
  CaseReport r;
  r.case_name = c.name;
  r.horizon = bm.ul.horizon;
  r.flexibility = bm.flexibility;
  r.status = solution.status;
  r.has_solution = solution.has_values;
  r.model_stats = milp::stats(bm.milp);
  r.solve_stats = solution.stats;
  r.warnings = solution.warnings;
  r.wem_price.assign(c.market.wem_price.begin(), c.market.wem_price.begin() + r.horizon);
  if (!solution.has_values) return r;

  const std::span<const double> x = solution.values;
  const int T = r.horizon;
  const int S = bm.ul.num_scenarios;
  const model::NetworkModel& net = c.network;
  const int N = net.num_buses();
  r.objective = solution.objective;
  r.lem_price = bilevel::solved_prices(bm, x);

  // first stage
  RampProfile& ramp = r.ramp;
  for (int t = 0; t < T; ++t) {
    const double pe = value(x, bm.ul.purchase[t]);
    ramp.purchase.push_back(pe);
    r.total_purchase += pe;
    r.profit.wem_cost += c.market.wem_price[t] * pe;
    if (bm.flexibility) {
      const double df = value(x, bm.ul.flex[t]);
      ramp.flex.push_back(df);
      r.profit.flex_penalty += at(c.market.penalty_price, t) * df;
    }
  }
  bool first = true;
  for (int t = 0; t < T; ++t) {
    double step = 0.0;
    const bool defined = t > 0 || c.config.initial_purchase.has_value();
    if (t > 0) step = ramp.purchase[t] - ramp.purchase[t - 1];
    else if (defined) step = ramp.purchase[0] - *c.config.initial_purchase;
    ramp.ramp.push_back(step);
    if (!defined) continue;
    ramp.max_up = first ? step : std::max(ramp.max_up, step);
    ramp.max_down = first ? step : std::min(ramp.max_down, step);
    first = false;
  }

  // microgrids
  r.mg_ramp_sum.assign(T, 0.0);
  for (size_t j = 0; j < bm.mgs.size(); ++j) {
    const bilevel::MgBlock& b = bm.mgs[j];
    const model::Microgrid& mg = c.microgrids[j];
    MgReport g;
    g.id = b.mg_id;
    g.bus = b.bus;
    std::vector<double> ll_x;
    for (ColId col : b.primal.primal) ll_x.push_back(value(x, col));
    g.cost = b.lp.objective(ll_x, r.lem_price);
    for (int t = 0; t < T; ++t) {
      g.demand.push_back(at(mg.demand, t));
      g.pv.push_back(at(mg.pv, t));
      g.exchange.push_back(value(x, b.col(LlFamily::kExchange, t)));
      g.dg.push_back(value(x, b.col(LlFamily::kDg, t)));
      g.il.push_back(value(x, b.col(LlFamily::kIl, t)));
      g.charge.push_back(value(x, b.col(LlFamily::kCharge, t)));
      g.discharge.push_back(value(x, b.col(LlFamily::kDischarge, t)));
      g.energy.push_back(value(x, b.col(LlFamily::kEnergy, t)));
      g.ramp.push_back(value(x, b.col(LlFamily::kRamp, t)));
      g.residual.push_back(g.exchange[t] + g.pv[t] + g.dg[t] + g.il[t] + g.discharge[t] - g.charge[t] - g.demand[t]);
      r.profit.lem_revenue += r.lem_price[t] * g.exchange[t];
      r.mg_ramp_sum[t] += g.ramp[t];
    }
    r.mgs.push_back(std::move(g));
  }

  // scenarios
  const double first_stage = r.profit.lem_revenue - r.profit.wem_cost - r.profit.flex_penalty;
  for (int s = 0; s < S; ++s) {
    const scenario::Scenario& sc = bm.scenarios.scenarios[s];
    ScenarioReport sr;
    sr.id = sc.id;
    sr.probability = sc.probability;
    double retail = 0.0, il_cost = 0.0, dg_cost = 0.0;
    for (int t = 0; t < T; ++t) {
      double dg = 0.0, il = 0.0, load = 0.0, pv = 0.0, loss = 0.0;
      for (int g = 0; g < bm.ul.num_dgs; ++g) {
        const double p = value(x, bm.ul.dg(g, t, s));
        dg += p;
        dg_cost += net.dgs[g].bid * p;
      }
      for (int bus = 1; bus <= N; ++bus) {
        const double p = value(x, bm.ul.il(bus, t, s));
        il += p;
        il_cost += c.market.disco_il_bid[t] * p;
        load += bm.load(bus, t, s);
      }
      for (size_t k = 0; k < net.pvs.size(); ++k) pv += bm.pv_output[(s * T + t) * net.pvs.size() + k];
      for (size_t l = 0; l < net.lines.size(); ++l) loss += value(x, bm.ul.flow.p_loss(static_cast<int>(l), t, s));
      retail += at(c.market.retail_price, t) * load;
      sr.dg.push_back(dg);
      sr.il.push_back(il);
      sr.load.push_back(load);
      sr.pv.push_back(pv);
      sr.loss.push_back(loss);
      r.expected_dg += sc.probability * dg;
      r.expected_il += sc.probability * il;
    }
    sr.profit = first_stage + retail - il_cost - dg_cost;
    r.profit.retail_revenue += sc.probability * retail;
    r.profit.il_cost += sc.probability * il_cost;
    r.profit.dg_cost += sc.probability * dg_cost;
    r.scenarios.push_back(std::move(sr));
  }

  // per-bus balance of the viewed scenario
  const int view = options.view_scenario.value_or(bm.scenarios.modal_index());
  if (view < 0 || view >= S) throw InputError("scenario index " + std::to_string(view + 1) + " out of range");
  r.view_scenario = view;
  for (int t = 0; t < T; ++t) {
    for (int bus = 1; bus <= N; ++bus) {
      BusBalance bb;
      bb.bus = bus;
      bb.t = t;
      if (bus == 1) bb.purchase = ramp.purchase[t];
      for (int g = 0; g < bm.ul.num_dgs; ++g) {
        if (net.dgs[g].bus == bus) bb.dg += value(x, bm.ul.dg(g, t, view));
      }
      for (size_t k = 0; k < net.pvs.size(); ++k) {
        if (net.pvs[k].bus == bus) bb.pv += bm.pv_output[(view * T + t) * net.pvs.size() + k];
      }
      bb.il = value(x, bm.ul.il(bus, t, view));
      bb.load = bm.load(bus, t, view);
      for (const MgReport& g : r.mgs) {
        if (g.bus == bus) bb.mg_exchange += g.exchange[t];
      }
      for (size_t l = 0; l < net.lines.size(); ++l) {
        const model::Line& line = net.lines[l];
        if (line.from != bus && line.to != bus) continue;
        const int li = static_cast<int>(l);
        const double sigma = line.from == bus ? 1.0 : -1.0;
        bb.line_export += 0.5 * sigma * (value(x, bm.ul.flow.p_from(li, t, view)) - value(x, bm.ul.flow.p_to(li, t, view))) +
                          0.5 * value(x, bm.ul.flow.p_loss(li, t, view));
      }
      bb.residual = bb.purchase + bb.dg + bb.pv + bb.il - bb.load - bb.mg_exchange - bb.line_export;
      r.bus_balance.push_back(bb);
    }
  }

  r.audit = bilevel::audit_solution(bm, x);
  for (const std::string& w : r.audit.warnings) r.warnings.push_back(w);

  const double tol = options.check_tolerance;
  const double scale = std::max(1.0, std::abs(r.objective));
  check(std::abs(r.profit.total() - r.objective) <= tol * scale,
        "recomputed profit " + num(r.profit.total()) + " differs from the solver objective " + num(r.objective));
  for (size_t j = 0; j < r.mgs.size(); ++j) {
    const double opt = r.audit.ll_optimum[j];
    check(std::isfinite(opt) && std::abs(r.mgs[j].cost - opt) <= tol * std::max(1.0, std::abs(opt)),
          "mg" + std::to_string(r.mgs[j].id) + " cost " + num(r.mgs[j].cost) +
              " is not the lower-level optimum " + num(opt));
  }
  check(r.max_mg_residual() <= 1e-6, "microgrid balance residual " + num(r.max_mg_residual()));
  check(r.max_bus_residual() <= 1e-6, "bus balance residual " + num(r.max_bus_residual()));
  if (bm.flexibility) {
    for (int t = 1; t < T; ++t) {
      const double cap = ramp.flex[t] + 1e-6;
      check(std::abs(ramp.ramp[t]) <= cap, "purchase ramp exceeds the flexibility cap at hour " + std::to_string(t + 1));
      check(std::abs(r.mg_ramp_sum[t]) <= cap, "microgrid ramp exceeds the flexibility cap at hour " + std::to_string(t + 1));
    }
  }
  return r;
}

CaseReport run_case(const model::Case& c, const RunOptions& options) {
  scenario::ScenarioSet sc;
  try {
    sc = scenario::make_scenarios(c);
    scenario::check_invariants(sc);
  } catch (const InputError&) {
    throw;
  } catch (const InvariantError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("scenarios", e.what());
  }
  note(options, "scenarios: " + std::to_string(sc.size()));

  bilevel::BilevelModel bm;
  try {
    bm = bilevel::assemble_milp(c, sc);
    bm.milp.validate();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("assembly", e.what());
  }
  milp::ModelStats st = milp::stats(bm.milp);
  note(options, "model: " + std::to_string(st.rows) + " rows, " + std::to_string(st.cols) + " columns, " +
                    std::to_string(st.binaries) + " binaries");

  milp::Solution sol;
  std::string solver = "embedded";
  try {
    if (c.config.solver_mode == model::SolverMode::kEmbedded) {
      sol = milp::solve_milp(bm.milp, effective_options(c.config, options.milp));
    } else {
      solver = "external";
      milp::export_model(bm.milp, options.export_path);
      note(options, "model written to " + options.export_path.string());
      if (!options.external_command.empty()) {
        std::string cmd = options.external_command;
        replace_all(cmd, "{model}", options.export_path.string());
        replace_all(cmd, "{solution}", options.solution_path.string());
        note(options, "running: " + cmd);
        if (std::system(cmd.c_str()) != 0) throw std::runtime_error("external command failed: " + cmd);
      }
      if (std::filesystem::exists(options.solution_path)) {
        sol = milp::import_solution(bm.milp, options.solution_path);
      } else {
        sol.status = milp::SolveStatus::kLimit;
        sol.warnings.push_back("no solution file at " + options.solution_path.string());
      }
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("solve", e.what());
  }
  note(options, "solve: " + std::string(milp::to_string(sol.status)) + " after " +
                    std::to_string(sol.stats.nodes) + " nodes");

  try {
    CaseReport r = build_report(c, bm, sol, options);
    r.solver = solver;
    if (c.name == kBundledCaseName) attach_references(r);
    return r;
  } catch (const InputError&) {
    throw;
  } catch (const InvariantError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("report", e.what());
  }
}

void attach_references(CaseReport& r) {
  if (!r.has_solution) return;
  auto add = [&](const std::string& m, double ref, double got) { r.references.push_back({m, ref, got}); };
  const bool f = r.flexibility;
  add("max_ramp_up_mw_h", f ? 4.55 : 8.05, r.ramp.max_up);
  add("max_ramp_down_mw_h", f ? -1.19 : -5.80, r.ramp.max_down);
  add("total_purchase_mw", f ? 183.73 : 194.88, r.total_purchase);
  add("disco_il_mw", f ? 11.81 : 8.07, r.expected_il);
  add("disco_dg_mw", f ? 49.21 : 44.99, r.expected_dg);
  add("profit_usd", f ? 6025.567 : 7849.32, r.profit.total());
  if (!f && !r.lem_price.empty()) add("lem_price_hour1", 90.0, r.lem_price[0]);
}

Comparison compare_cases(const CaseReport& a, const CaseReport& b) {
  if (a.horizon != b.horizon) {
    throw InputError("cannot compare a " + std::to_string(a.horizon) + "-hour run with a " +
                     std::to_string(b.horizon) + "-hour run");
  }
  if (a.mgs.size() != b.mgs.size()) throw InputError("the two runs have different microgrids");
  Comparison c;
  auto row = [&](const std::string& m, double x, double y) { c.rows.push_back({m, x, y}); };
  row("max_ramp_up_mw_h", a.ramp.max_up, b.ramp.max_up);
  row("max_ramp_down_mw_h", a.ramp.max_down, b.ramp.max_down);
  row("total_purchase_mw", a.total_purchase, b.total_purchase);
  row("profit_usd", a.profit.total(), b.profit.total());
  row("lem_revenue_usd", a.profit.lem_revenue, b.profit.lem_revenue);
  row("wem_cost_usd", a.profit.wem_cost, b.profit.wem_cost);
  row("flex_penalty_usd", a.profit.flex_penalty, b.profit.flex_penalty);
  row("disco_il_mw", a.expected_il, b.expected_il);
  row("disco_dg_mw", a.expected_dg, b.expected_dg);
  double ca = 0.0, cb = 0.0;
  for (size_t j = 0; j < a.mgs.size(); ++j) {
    row("mg" + std::to_string(a.mgs[j].id) + "_cost_usd", a.mgs[j].cost, b.mgs[j].cost);
    ca += a.mgs[j].cost;
    cb += b.mgs[j].cost;
  }
  row("mg_total_cost_usd", ca, cb);
  c.lost_revenue = a.profit.total() - b.profit.total();
  c.price_without = a.lem_price;
  c.price_with = b.lem_price;
  return c;
}

void write_summary(const CaseReport& r, std::ostream& out) {
  out << "case " << r.case_name << ", " << r.horizon << " h, flexibility " << (r.flexibility ? "on" : "off") << "\n";
  out << "status " << milp::to_string(r.status) << " (" << r.solver << "), nodes " << r.solve_stats.nodes
      << ", " << r.solve_stats.wall_seconds << " s\n";
  out << "model " << r.model_stats.rows << " rows, " << r.model_stats.cols << " columns, "
      << r.model_stats.binaries << " binaries\n";
  if (!r.has_solution) {
    for (const std::string& w : r.warnings) out << "warning: " << w << "\n";
    return;
  }
  out << "profit " << r.profit.total() << " (objective " << r.objective << ")\n";
  out << "  lem revenue " << r.profit.lem_revenue << ", retail revenue " << r.profit.retail_revenue << "\n";
  out << "  wem cost " << r.profit.wem_cost << ", flex penalty " << r.profit.flex_penalty << ", il cost "
      << r.profit.il_cost << ", dg cost " << r.profit.dg_cost << "\n";
  out << "purchase total " << r.total_purchase << " MW, ramp max up " << r.ramp.max_up << ", max down "
      << r.ramp.max_down << " MW/h\n";
  out << "disco il " << r.expected_il << " MW, dg " << r.expected_dg << " MW (expected)\n";
  for (const MgReport& g : r.mgs) out << "mg" << g.id << " cost " << g.cost << "\n";
  out << "lem price";
  for (double p : r.lem_price) out << " " << p;
  out << "\n";
  out << "audit: strong duality " << r.audit.strong_duality_residual << ", ll gap " << r.audit.ll_optimality_gap
      << ", balance " << std::max(r.max_bus_residual(), r.max_mg_residual()) << "\n";
  if (!r.references.empty()) {
    out << "reference values (not asserted):\n";
    for (const ReferenceValue& v : r.references) {
      out << "  " << v.metric << " reference " << v.reference << " computed " << v.computed << "\n";
    }
  }
  for (const std::string& w : r.warnings) out << "warning: " << w << "\n";
}

void write_comparison(const Comparison& c, std::ostream& out) {
  out << "metric,without_flex,with_flex,delta\n";
  for (const ComparisonRow& r : c.rows) {
    out << r.metric << "," << num(r.without_flex) << "," << num(r.with_flex) << "," << num(r.delta()) << "\n";
  }
  out << "lost_revenue_usd," << num(c.lost_revenue) << ",,\n";
}

void write_bus_balance(const CaseReport& r, std::ostream& out) {
  out << "hour,bus,purchase_mw,dg_mw,pv_mw,il_mw,load_mw,mg_exchange_mw,line_export_mw,residual_mw\n";
  for (const BusBalance& b : r.bus_balance) {
    out << b.t + 1 << "," << b.bus << "," << num(b.purchase) << "," << num(b.dg) << "," << num(b.pv) << ","
        << num(b.il) << "," << num(b.load) << "," << num(b.mg_exchange) << "," << num(b.line_export) << ","
        << num(b.residual) << "\n";
  }
}

void write_report_json(const CaseReport& r, std::ostream& out) {
  using nlohmann::json;
  json j;
  j["case"] = r.case_name;
  j["horizon"] = r.horizon;
  j["flexibility"] = r.flexibility;
  j["status"] = std::string(milp::to_string(r.status));
  j["solver"] = r.solver;
  j["model"] = {{"rows", r.model_stats.rows}, {"cols", r.model_stats.cols},
                {"binaries", r.model_stats.binaries}, {"nonzeros", r.model_stats.nonzeros}};
  j["warnings"] = r.warnings;
  if (r.has_solution) {
    j["objective"] = r.objective;
    j["profit"] = {{"total", r.profit.total()},          {"lem_revenue", r.profit.lem_revenue},
                   {"retail_revenue", r.profit.retail_revenue}, {"wem_cost", r.profit.wem_cost},
                   {"flex_penalty", r.profit.flex_penalty}, {"il_cost", r.profit.il_cost},
                   {"dg_cost", r.profit.dg_cost}};
    j["purchase"] = r.ramp.purchase;
    j["ramp"] = {{"series", r.ramp.ramp}, {"max_up", r.ramp.max_up}, {"max_down", r.ramp.max_down},
                 {"flex", r.ramp.flex}};
    j["total_purchase"] = r.total_purchase;
    j["expected_il"] = r.expected_il;
    j["expected_dg"] = r.expected_dg;
    j["lem_price"] = r.lem_price;
    json mgs = json::array();
    for (const MgReport& g : r.mgs) {
      mgs.push_back({{"id", g.id}, {"bus", g.bus}, {"cost", g.cost}, {"exchange", g.exchange},
                     {"dg", g.dg}, {"il", g.il}, {"charge", g.charge}, {"discharge", g.discharge},
                     {"energy", g.energy}, {"ramp", g.ramp}});
    }
    j["microgrids"] = mgs;
    json sc = json::array();
    for (const ScenarioReport& s : r.scenarios) {
      sc.push_back({{"id", s.id}, {"probability", s.probability}, {"profit", s.profit}, {"dg", s.dg},
                    {"il", s.il}, {"load", s.load}, {"loss", s.loss}});
    }
    j["scenarios"] = sc;
    j["view_scenario"] = r.view_scenario + 1;
    j["audit"] = {{"strong_duality", r.audit.strong_duality_residual},
                  {"ll_gap", r.audit.ll_optimality_gap},
                  {"stationarity", r.audit.stationarity_residual},
                  {"complementarity", r.audit.complementarity_residual}};
    json refs = json::array();
    for (const ReferenceValue& v : r.references) {
      refs.push_back({{"metric", v.metric}, {"reference", v.reference}, {"computed", v.computed}});
    }
    j["references"] = refs;
  }
  out << j.dump(2) << "\n";
}

std::vector<std::filesystem::path> emit_plot_data(const CaseReport& r, const std::filesystem::path& dir) {
  if (!r.has_solution) throw InputError("the report has no solution to plot");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw milp::IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto open = [&](const char* name) {
    std::filesystem::path p = dir / name;
    std::ofstream f(p);
    if (!f) throw milp::IoError("cannot write " + p.string());
    written.push_back(p);
    return f;
  };
  const int T = r.horizon;
  auto flex = [&](int t) { return r.ramp.flex.empty() ? std::string() : num(r.ramp.flex[t]); };
  {
    std::ofstream f = open("purchase.csv");
    f << "hour,purchase_mw,wem_price,lem_price\n";
    for (int t = 0; t < T; ++t) {
      f << t + 1 << "," << num(r.ramp.purchase[t]) << "," << num(r.wem_price[t]) << "," << num(r.lem_price[t]) << "\n";
    }
  }
  {
    std::ofstream f = open("ramp.csv");
    f << "hour,ramp_mw_h,flex_cap_mw_h\n";
    for (int t = 0; t < T; ++t) f << t + 1 << "," << num(r.ramp.ramp[t]) << "," << flex(t) << "\n";
  }
  {
    std::ofstream f = open("mg_ramp.csv");
    f << "hour,mg_ramp_sum_mw_h,flex_cap_mw_h";
    for (const MgReport& g : r.mgs) f << ",mg" << g.id << "_ramp_mw_h";
    f << "\n";
    for (int t = 0; t < T; ++t) {
      f << t + 1 << "," << num(r.mg_ramp_sum[t]) << "," << flex(t);
      for (const MgReport& g : r.mgs) f << "," << num(g.ramp[t]);
      f << "\n";
    }
  }
  {
    std::ofstream f = open("mg_balance.csv");
    f << "hour";
    for (const MgReport& g : r.mgs) {
      for (const char* k : {"demand", "pv", "dg", "il", "discharge", "charge", "exchange", "residual"}) {
        f << ",mg" << g.id << "_" << k;
      }
    }
    f << "\n";
    for (int t = 0; t < T; ++t) {
      f << t + 1;
      for (const MgReport& g : r.mgs) {
        for (double v : {g.demand[t], g.pv[t], g.dg[t], g.il[t], g.discharge[t], g.charge[t], g.exchange[t], g.residual[t]}) {
          f << "," << num(v);
        }
      }
      f << "\n";
    }
  }
  {
    std::ofstream f = open("lem_price.csv");
    f << "hour,lem_price\n";
    for (int t = 0; t < T; ++t) f << t + 1 << "," << num(r.lem_price[t]) << "\n";
  }
  return written;
}

}  // namespace flexsched::analysis
