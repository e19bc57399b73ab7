#pragma once

#include <functional>
#include <vector>

#include "flexsched/milp/model.hpp"
#include "flexsched/model/case.hpp"

namespace flexsched::flow {

// Column ids of the flow variables for every (line | bus, t, s). Storage is
// s-major, then t, then line/bus, matching the column creation order.
struct FlowVarSet {
  int num_lines = 0, num_buses = 0, horizon = 0, num_scenarios = 0;
  std::vector<milp::ColId> pfm, pto, loss, current, current_sq;  // per line
  std::vector<milp::ColId> voltage, voltage_sq;                   // per bus

  int line_index(int line, int t, int s) const { return (s * horizon + t) * num_lines + line; }
  int bus_index(int bus, int t, int s) const { return (s * horizon + t) * num_buses + (bus - 1); }

  milp::ColId p_from(int l, int t, int s) const { return pfm[line_index(l, t, s)]; }
  milp::ColId p_to(int l, int t, int s) const { return pto[line_index(l, t, s)]; }
  milp::ColId p_loss(int l, int t, int s) const { return loss[line_index(l, t, s)]; }
  milp::ColId i(int l, int t, int s) const { return current[line_index(l, t, s)]; }
  milp::ColId i_sq(int l, int t, int s) const { return current_sq[line_index(l, t, s)]; }
  milp::ColId v(int bus, int t, int s) const { return voltage[bus_index(bus, t, s)]; }
  milp::ColId v_sq(int bus, int t, int s) const { return voltage_sq[bus_index(bus, t, s)]; }
};

// Adds every flow column unbounded (voltages and squares non-negative);
// emit_line_rows and emit_voltage_bounds install the current and voltage limits.
// Here t and s are 0-based; names use 1-based indices.
FlowVarSet add_flow_columns(milp::MilpModel& model, const model::NetworkModel& network,
                            int horizon, int num_scenarios);

// Net injection at a bus excluding line flows: terms on decision columns
// (WEM purchase, IL, DG with +1; microgrid exchange with -1) plus a constant
// (PV forecast minus load).
struct BusInjections {
  std::vector<milp::Term> terms;
  double constant = 0.0;
};

// Power balance at one bus. Each line incident to the bus contributes 0.5 * (sigma * (Pfm - Pto)
// + loss) with sigma = +1 at the sending (from) end and -1 at the receiving
// end, so the right-hand side is Pfm at the from-bus and Pto at the to-bus.
milp::RowId emit_bus_balance(milp::MilpModel& model, const FlowVarSet& vars,
                             const model::NetworkModel& network, int bus, int t, int s,
                             const BusInjections& injections);

struct LineRows {
  milp::RowId loss_def;  // loss = Pfm + Pto
  milp::RowId loss_eq;   // Pfm + Pto = R I^2
  milp::RowId drop;      // Pfm - Pto = R (Vi^2 - Vh^2) / Z^2
  milp::RowId ohm;       // I = (Vi - Vh) / Z
  std::vector<milp::RowId> pwl;  // tangent cuts under I^2
};

// Loss, voltage-drop and current rows plus the I^2 envelope. The current limit
// is the bound -Imax <= I <= Imax
// on the current column and I^2 <= Imax^2 is the secant over that interval.
// A line with R = 0 carries Vi^2 = Vh^2 in place of the drop row: its R -> 0
// limit after multiplying by Z^2 / R, which leaves the flow free and lossless.
LineRows emit_line_rows(milp::MilpModel& model, const FlowVarSet& vars,
                        const model::NetworkModel& network, int line, int t, int s, int segments);

struct VoltageRows {
  std::vector<milp::RowId> pwl;  // tangent cuts under V^2 and the secant above
};

// Voltage limits as bounds on V, the matching window on V^2 and its envelope. A
// fixed voltage (v_min = v_max) fixes V^2 exactly and emits no rows.
VoltageRows emit_voltage_bounds(milp::MilpModel& model, const FlowVarSet& vars,
                                const model::NetworkModel& network, int bus, int t, int s,
                                int segments);

struct FlowBlockCounts {
  int balance = 0, loss = 0, drop = 0, ohm = 0, current_limit = 0, voltage_limit = 0, loss_def = 0, pwl = 0;
};

// Emits the whole flow block over all (t, s) with balance injections
// supplied by the caller.
FlowBlockCounts emit_flow_block(
    milp::MilpModel& model, const FlowVarSet& vars, const model::NetworkModel& network,
    int segments, const std::function<BusInjections(int bus, int t, int s)>& injections);

}  // namespace flexsched::flow
