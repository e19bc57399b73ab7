#include "flexsched/flow/flow_block.hpp"

#include <string>

#include "flexsched/errors.hpp"
#include "flexsched/flow/pwl.hpp"

namespace flexsched::flow {

using milp::ColId;
using milp::kInf;
using milp::RowId;
using milp::Sense;
using milp::Term;

namespace {

std::string suffix(const char* tag, int index, int t, int s) {
  return std::string("(") + tag + std::to_string(index) + ",t" + std::to_string(t + 1) + ",s" +
         std::to_string(s + 1) + ")";
}

void check_line(const model::NetworkModel& network, int line) {
  if (line < 0 || line >= static_cast<int>(network.lines.size())) {
    throw milp::ModelError("line index " + std::to_string(line) + " out of range");
  }
  if (!(network.lines[line].z > 0.0)) {
    throw milp::ModelError("line " + std::to_string(network.lines[line].from) + "-" +
                           std::to_string(network.lines[line].to) + ": zero impedance");
  }
}

}  // namespace

FlowVarSet add_flow_columns(milp::MilpModel& model, const model::NetworkModel& network,
                            int horizon, int num_scenarios) {
  FlowVarSet v;
  v.num_lines = static_cast<int>(network.lines.size());
  v.num_buses = network.num_buses();
  v.horizon = horizon;
  v.num_scenarios = num_scenarios;
  for (int s = 0; s < num_scenarios; ++s) {
    for (int t = 0; t < horizon; ++t) {
      for (int l = 0; l < v.num_lines; ++l) {
        v.pfm.push_back(model.add_column("pfm" + suffix("l", l + 1, t, s), -kInf, kInf));
        v.pto.push_back(model.add_column("pto" + suffix("l", l + 1, t, s), -kInf, kInf));
        v.loss.push_back(model.add_column("loss" + suffix("l", l + 1, t, s), -kInf, kInf));
        v.current.push_back(model.add_column("i" + suffix("l", l + 1, t, s), -kInf, kInf));
        v.current_sq.push_back(model.add_column("isq" + suffix("l", l + 1, t, s), 0.0, kInf));
      }
      for (int b = 1; b <= v.num_buses; ++b) {
        v.voltage.push_back(model.add_column("v" + suffix("b", b, t, s), 0.0, kInf));
        v.voltage_sq.push_back(model.add_column("vsq" + suffix("b", b, t, s), 0.0, kInf));
      }
    }
  }
  return v;
}

RowId emit_bus_balance(milp::MilpModel& model, const FlowVarSet& vars,
                       const model::NetworkModel& network, int bus, int t, int s,
                       const BusInjections& injections) {
  std::vector<Term> terms = injections.terms;
  for (int l = 0; l < vars.num_lines; ++l) {
    const model::Line& line = network.lines[l];
    double sigma = 0.0;
    if (line.from == bus) sigma = 1.0;
    else if (line.to == bus) sigma = -1.0;
    else continue;
    terms.push_back({vars.p_from(l, t, s), -0.5 * sigma});
    terms.push_back({vars.p_to(l, t, s), 0.5 * sigma});
    terms.push_back({vars.p_loss(l, t, s), -0.5});
  }
  return model.add_row("bal" + suffix("b", bus, t, s), Sense::kEqual, -injections.constant,
                       std::move(terms));
}

LineRows emit_line_rows(milp::MilpModel& model, const FlowVarSet& vars,
                        const model::NetworkModel& network, int line, int t, int s,
                        int segments) {
  check_line(network, line);
  const model::Line& ln = network.lines[line];
  const std::string tag = suffix("l", line + 1, t, s);
  const ColId pfm = vars.p_from(line, t, s), pto = vars.p_to(line, t, s);
  const ColId loss = vars.p_loss(line, t, s), cur = vars.i(line, t, s), cur_sq = vars.i_sq(line, t, s);
  const ColId vi = vars.v(ln.from, t, s), vh = vars.v(ln.to, t, s);
  const ColId vi_sq = vars.v_sq(ln.from, t, s), vh_sq = vars.v_sq(ln.to, t, s);

  LineRows rows;
  rows.loss_def = model.add_row("lossdef" + tag, Sense::kEqual, 0.0,
                                {{loss, 1.0}, {pfm, -1.0}, {pto, -1.0}});
  rows.loss_eq = model.add_row("ploss" + tag, Sense::kEqual, 0.0,
                           {{pfm, 1.0}, {pto, 1.0}, {cur_sq, -ln.r}});
  if (ln.r > 0.0) {
    const double k = ln.r / (ln.z * ln.z);
    rows.drop = model.add_row("pflow" + tag, Sense::kEqual, 0.0,
                             {{pfm, 1.0}, {pto, -1.0}, {vi_sq, -k}, {vh_sq, k}});
  } else {
    rows.drop = model.add_row("pflow" + tag, Sense::kEqual, 0.0, {{vi_sq, 1.0}, {vh_sq, -1.0}});
  }
  rows.ohm = model.add_row("curr" + tag, Sense::kEqual, 0.0,
                           {{cur, 1.0}, {vi, -1.0 / ln.z}, {vh, 1.0 / ln.z}});

  model.set_bounds(cur, -ln.i_max, ln.i_max);
  model.set_bounds(cur_sq, 0.0, ln.i_max * ln.i_max);
  if (ln.i_max > 0.0) {
    PwlApprox pwl(-ln.i_max, ln.i_max, segments);
    int k = 0;
    for (const PwlApprox::Line& tan : pwl.tangents()) {
      ++k;
      // the tangent at zero is the column's own lower bound
      if (tan.slope == 0.0 && tan.intercept == 0.0) continue;
      rows.pwl.push_back(model.add_row("isqcut" + std::to_string(k) + tag, Sense::kGreaterEqual,
                                       tan.intercept, {{cur_sq, 1.0}, {cur, -tan.slope}}));
    }
  }
  return rows;
}

VoltageRows emit_voltage_bounds(milp::MilpModel& model, const FlowVarSet& vars,
                                const model::NetworkModel& network, int bus, int t, int s,
                                int segments) {
  const model::Bus& b = network.bus(bus);
  if (b.v_min > b.v_max) {
    throw ValidationError("bus " + std::to_string(bus),
                          "voltage window inverted (" + std::to_string(b.v_min) + " > " +
                              std::to_string(b.v_max) + ")");
  }
  if (b.v_min < 0.0) throw ValidationError("bus " + std::to_string(bus), "negative voltage limit");
  const ColId v = vars.v(bus, t, s), v_sq = vars.v_sq(bus, t, s);
  model.set_bounds(v, b.v_min, b.v_max);
  model.set_bounds(v_sq, b.v_min * b.v_min, b.v_max * b.v_max);
  VoltageRows rows;
  if (b.v_min == b.v_max) return rows;

  const std::string tag = suffix("b", bus, t, s);
  PwlApprox pwl(b.v_min, b.v_max, segments);
  int k = 0;
  for (const PwlApprox::Line& tan : pwl.tangents()) {
    ++k;
    rows.pwl.push_back(model.add_row("vsqcut" + std::to_string(k) + tag, Sense::kGreaterEqual,
                                     tan.intercept, {{v_sq, 1.0}, {v, -tan.slope}}));
  }
  const PwlApprox::Line sec = pwl.secant();
  rows.pwl.push_back(model.add_row("vsqsec" + tag, Sense::kLessEqual, sec.intercept,
                                   {{v_sq, 1.0}, {v, -sec.slope}}));
  return rows;
}

FlowBlockCounts emit_flow_block(
    milp::MilpModel& model, const FlowVarSet& vars, const model::NetworkModel& network,
    int segments, const std::function<BusInjections(int bus, int t, int s)>& injections) {
  FlowBlockCounts counts;
  for (int s = 0; s < vars.num_scenarios; ++s) {
    for (int t = 0; t < vars.horizon; ++t) {
      for (int b = 1; b <= vars.num_buses; ++b) {
        emit_bus_balance(model, vars, network, b, t, s, injections(b, t, s));
        ++counts.balance;
      }
      for (int l = 0; l < vars.num_lines; ++l) {
        LineRows r = emit_line_rows(model, vars, network, l, t, s, segments);
        ++counts.loss_def;
        ++counts.loss;
        ++counts.drop;
        ++counts.ohm;
        ++counts.current_limit;
        counts.pwl += static_cast<int>(r.pwl.size());
      }
      for (int b = 1; b <= vars.num_buses; ++b) {
        VoltageRows r = emit_voltage_bounds(model, vars, network, b, t, s, segments);
        ++counts.voltage_limit;
        counts.pwl += static_cast<int>(r.pwl.size());
      }
    }
  }
  return counts;
}

}  // namespace flexsched::flow
