#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "flexsched/errors.hpp"
#include "flexsched/flow/flow_block.hpp"
#include "flexsched/flow/pwl.hpp"
#include "flexsched/milp/lp_solver.hpp"
#include "flexsched/model/io.hpp"

using namespace flexsched;
using namespace flexsched::flow;
using milp::ColId;
using milp::kInf;
using milp::MilpModel;

namespace {

model::Bus make_bus(int id, double load, double vmin, double vmax) {
  model::Bus b;
  b.id = id;
  b.base_load = {load};
  b.v_min = vmin;
  b.v_max = vmax;
  return b;
}

// Substation at bus 1 buys P^E at unit cost; every other bus draws its load.
struct Harness {
  model::NetworkModel net;
  MilpModel model;
  FlowVarSet vars;
  ColId pe;
  std::vector<ColId> extra;  // optional free injection per bus (index bus - 1)

  void build(int segments, bool free_injections = false) {
    vars = add_flow_columns(model, net, 1, 1);
    pe = model.add_column("pe", -kInf, kInf, 1.0);
    for (int b = 1; b <= net.num_buses(); ++b) {
      extra.push_back(free_injections ? model.add_column("g" + std::to_string(b), -kInf, kInf)
                                      : ColId{});
    }
    emit_flow_block(model, vars, net, segments, [&](int bus, int t, int) {
      BusInjections inj;
      if (bus == 1) inj.terms.push_back({pe, 1.0});
      if (extra[bus - 1]) inj.terms.push_back({extra[bus - 1], 1.0});
      inj.constant = -net.bus(bus).base_load[t];
      return inj;
    });
  }
};

model::NetworkModel random_tree(std::mt19937_64& rng, int buses, bool lossless) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  model::NetworkModel net;
  net.buses.push_back(make_bus(1, 0.0, 12.66, 12.66));
  for (int b = 2; b <= buses; ++b) {
    net.buses.push_back(make_bus(b, 0.05 + 0.3 * unit(rng), 11.0, 13.5));
    model::Line l;
    l.from = 1 + static_cast<int>(unit(rng) * (b - 1));
    l.to = b;
    double x = 0.05 + 0.2 * unit(rng);
    l.r = lossless ? 0.0 : 0.02 + 0.1 * unit(rng);
    l.z = std::hypot(l.r, x);
    l.i_max = 1.0;
    net.lines.push_back(l);
  }
  return net;
}

}  // namespace

TEST_CASE("chord interpolant is exact at breakpoints and bounded between them") {
  PwlApprox pwl(0.0, 2.0, 4);
  // 1.5 is a breakpoint; 1.25 is the midpoint of the chord (1,1)-(1.5,2.25)
  CHECK(pwl.value(1.5) == doctest::Approx(2.25));
  CHECK(pwl.value(1.25) == doctest::Approx(1.625));
  CHECK(pwl.value(1.25) - 1.25 * 1.25 == doctest::Approx(pwl.error_bound()));
  for (size_t k = 1; k < pwl.slopes().size(); ++k) CHECK(pwl.slopes()[k] > pwl.slopes()[k - 1]);
}

TEST_CASE("PWL error over 1000 samples stays inside (b-a)^2/(4K^2)") {
  for (auto [a, b] : {std::pair{0.0, 2.0}, std::pair{-1.5, 1.5}, std::pair{11.39, 13.29}}) {
    for (int k : {2, 4, 6, 8}) {
      PwlApprox pwl(a, b, k);
      double worst = 0.0;
      for (int i = 0; i < 1000; ++i) {
        double x = a + (b - a) * i / 999.0;
        worst = std::max(worst, std::abs(pwl.value(x) - x * x));
        for (const auto& tan : pwl.tangents()) CHECK(tan(x) <= x * x + 1e-9);
        CHECK(pwl.secant()(x) >= x * x - 1e-9);
      }
      CAPTURE(k);
      CHECK(worst <= (b - a) * (b - a) / (4.0 * k * k) + 1e-12);
    }
  }
}

TEST_CASE("isolated bus with nothing attached gives an empty balance row") {
  model::NetworkModel net;
  net.buses.push_back(make_bus(1, 0.0, 12.66, 12.66));
  MilpModel m;
  FlowVarSet vars = add_flow_columns(m, net, 1, 1);
  milp::RowId r = emit_bus_balance(m, vars, net, 1, 0, 0, {});
  CHECK(m.row(r).terms.empty());
  CHECK(m.row(r).rhs == 0.0);
  CHECK(m.row(r).sense == milp::Sense::kEqual);
}

TEST_CASE("substation balance row splits the line terms in halves") {
  model::NetworkModel net;
  net.buses = {make_bus(1, 0, 12.66, 12.66), make_bus(2, 0, 12, 13)};
  net.lines.push_back({1, 2, 0.1, 0.2, 1.0});
  MilpModel m;
  FlowVarSet vars = add_flow_columns(m, net, 1, 1);
  ColId pe = m.add_column("pe", 0, kInf);
  const auto& row = m.row(emit_bus_balance(m, vars, net, 1, 0, 0, {{{pe, 1.0}}, 0.0}));
  auto coef = [&](ColId c) {
    for (const auto& t : row.terms) if (t.col == c) return t.coef;
    return 0.0;
  };
  CHECK(coef(pe) == 1.0);
  CHECK(coef(vars.p_from(0, 0, 0)) == -0.5);
  CHECK(coef(vars.p_to(0, 0, 0)) == 0.5);
  CHECK(coef(vars.p_loss(0, 0, 0)) == -0.5);
  // with loss = Pfm + Pto the row reads P^E = Pfm
}

TEST_CASE("two-bus lossless feeder buys exactly the load") {
  Harness h;
  h.net.buses = {make_bus(1, 0.0, 12.66, 12.66), make_bus(2, 1.0, 11.4, 13.3)};
  h.net.lines.push_back({1, 2, 0.0, 0.1, 1.0});
  h.build(4);
  milp::Solution sol = milp::solve_lp(h.model);
  REQUIRE(sol.optimal());
  CHECK(sol.values[h.pe.value] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.values[h.vars.p_from(0, 0, 0).value] == doctest::Approx(1.0));
  CHECK(sol.values[h.vars.p_to(0, 0, 0).value] == doctest::Approx(-1.0));
}

TEST_CASE("lossless trees balance generation and load exactly") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    Harness h;
    h.net = random_tree(rng, 3 + trial % 8, true);
    h.build(6);
    milp::Solution sol = milp::solve_lp(h.model);
    CAPTURE(trial);
    REQUIRE(sol.optimal());
    double load = 0.0;
    for (const auto& b : h.net.buses) load += b.base_load[0];
    CHECK(std::abs(sol.values[h.pe.value] - load) <= 1e-6);
    for (size_t l = 0; l < h.net.lines.size(); ++l) {
      CHECK(std::abs(sol.values[h.vars.p_from(l, 0, 0).value] +
                     sol.values[h.vars.p_to(l, 0, 0).value]) <= 1e-6);
    }
  }
}

TEST_CASE("lossy trees never show negative losses") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    Harness h;
    h.net = random_tree(rng, 3 + trial % 8, false);
    h.build(6);
    milp::Solution sol = milp::solve_lp(h.model);
    CAPTURE(trial);
    REQUIRE(sol.optimal());
    double load = 0.0, loss = 0.0;
    for (const auto& b : h.net.buses) load += b.base_load[0];
    for (size_t l = 0; l < h.net.lines.size(); ++l) {
      double pl = sol.values[h.vars.p_from(l, 0, 0).value] + sol.values[h.vars.p_to(l, 0, 0).value];
      CHECK(pl >= -1e-9);
      loss += pl;
    }
    CHECK(sol.values[h.pe.value] == doctest::Approx(load + loss).epsilon(1e-9));
  }
}

TEST_CASE("equal end voltages carry no current and no loss") {
  Harness h;
  h.net.buses = {make_bus(1, 0.0, 12.66, 12.66), make_bus(2, 0.0, 12.66, 12.66)};
  h.net.lines.push_back({1, 2, 0.1, 0.3, 0.5});
  h.build(6);
  milp::Solution sol = milp::solve_lp(h.model);
  REQUIRE(sol.optimal());
  CHECK(sol.values[h.vars.i(0, 0, 0).value] == doctest::Approx(0.0));
  CHECK(sol.values[h.vars.p_loss(0, 0, 0).value] == doctest::Approx(0.0));
}

TEST_CASE("with R = Z the flow difference is the squared-voltage drop over Z") {
  Harness h;
  const double vi = 12.66, vh = 12.60, z = 0.4;
  h.net.buses = {make_bus(1, 0.0, vi, vi), make_bus(2, 0.0, vh, vh)};
  h.net.lines.push_back({1, 2, z, z, 5.0});
  h.build(6, true);
  h.model.set_objective(h.pe, 0.0);
  milp::Solution sol = milp::solve_lp(h.model);
  REQUIRE(sol.optimal());
  const double delta = (vi * vi - vh * vh) / 2.0;
  double diff = sol.values[h.vars.p_from(0, 0, 0).value] - sol.values[h.vars.p_to(0, 0, 0).value];
  CHECK(diff == doctest::Approx(2.0 * delta / z));
  CHECK(sol.values[h.vars.i(0, 0, 0).value] == doctest::Approx((vi - vh) / z));
}

TEST_CASE("zero impedance is rejected") {
  model::NetworkModel net;
  net.buses = {make_bus(1, 0, 12.66, 12.66), make_bus(2, 0, 12, 13)};
  net.lines.push_back({1, 2, 0.0, 0.0, 1.0});
  MilpModel m;
  FlowVarSet vars = add_flow_columns(m, net, 1, 1);
  CHECK_THROWS_AS(emit_line_rows(m, vars, net, 0, 0, 0, 4), milp::ModelError);
}

TEST_CASE("voltage window: fixed, normal and inverted") {
  model::NetworkModel net;
  net.buses = {make_bus(1, 0, 1.0, 1.0), make_bus(2, 0, 0.95 * 12.66, 1.05 * 12.66),
               make_bus(3, 0, 13.0, 12.0)};
  MilpModel m;
  FlowVarSet vars = add_flow_columns(m, net, 1, 1);
  VoltageRows fixed = emit_voltage_bounds(m, vars, net, 1, 0, 0, 6);
  CHECK(fixed.pwl.empty());
  CHECK(m.col(vars.v(1, 0, 0)).lower == 1.0);
  CHECK(m.col(vars.v(1, 0, 0)).upper == 1.0);
  CHECK(m.col(vars.v_sq(1, 0, 0)).lower == 1.0);

  VoltageRows normal = emit_voltage_bounds(m, vars, net, 2, 0, 0, 6);
  CHECK(m.col(vars.v(2, 0, 0)).lower == doctest::Approx(0.95 * 12.66));
  CHECK(m.col(vars.v(2, 0, 0)).upper == doctest::Approx(1.05 * 12.66));
  CHECK(normal.pwl.size() == 8);  // 7 tangents and the secant

  CHECK_THROWS_AS(emit_voltage_bounds(m, vars, net, 3, 0, 0, 6), ValidationError);
}

TEST_CASE("33-bus block has one instance per line and bus for each (t, s)") {
  model::Case c = model::load_case(std::filesystem::path(FLEXSCHED_DATA_DIR) / "ieee33",
                                   {{"horizon", "2"}});
  const auto& net = c.network;
  const int T = 2, S = 3;
  MilpModel m;
  FlowVarSet vars = add_flow_columns(m, net, T, S);
  CHECK(m.num_cols() == T * S * (5 * 32 + 2 * 33));
  FlowBlockCounts n = emit_flow_block(m, vars, net, 6, [](int, int, int) { return BusInjections{}; });
  CHECK(n.balance == 33 * T * S);
  CHECK(n.loss == 32 * T * S);
  CHECK(n.drop == 32 * T * S);
  CHECK(n.ohm == 32 * T * S);
  CHECK(n.current_limit == 32 * T * S);
  CHECK(n.voltage_limit == 33 * T * S);
  // bijection between symbol instances and columns
  std::vector<int> seen(m.num_cols(), 0);
  for (auto* family : {&vars.pfm, &vars.pto, &vars.loss, &vars.current, &vars.current_sq,
                       &vars.voltage, &vars.voltage_sq}) {
    for (ColId c : *family) ++seen[c.value];
  }
  for (int k : seen) CHECK(k == 1);
}
