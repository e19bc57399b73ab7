#include "flexsched/analysis/random_case.hpp"

#include <cmath>
#include <random>
#include <string>

#include "flexsched/model/io.hpp"

namespace flexsched::analysis {

model::Case random_case(uint64_t seed, const RandomCaseShape& shape) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  // two decimals keep exported numbers short
  auto round2 = [](double v) { return std::round(v * 100.0) / 100.0; };

  const int N = std::max(1, shape.buses);
  const int T = std::max(1, shape.horizon);
  model::Case c;
  c.name = "random-" + std::to_string(seed);
  c.config.horizon = T;
  c.config.pwl_segments = 4;
  c.config.scenarios.source = model::ScenarioSource::kGenerated;
  c.config.scenarios.load_intervals = 1;
  c.config.scenarios.pv_intervals = 1;

  model::NetworkModel& net = c.network;
  const double vb = net.v_base;
  for (int b = 1; b <= N; ++b) {
    model::Bus bus;
    bus.id = b;
    const double peak = b == 1 ? 0.0 : round2(uniform(0.05, 0.4));
    for (int t = 0; t < T; ++t) bus.base_load.push_back(round2(peak * uniform(0.6, 1.2)));
    bus.v_min = b == 1 ? vb : 0.9 * vb;
    bus.v_max = b == 1 ? vb : 1.1 * vb;
    net.buses.push_back(bus);
  }
  for (int b = 2; b <= N; ++b) {
    model::Line l;
    l.from = pick(1, b - 1);
    l.to = b;
    l.r = round2(uniform(0.05, 0.3));
    const double x = round2(uniform(0.05, 0.3));
    l.z = std::hypot(l.r, x);
    l.i_max = 0.5;
    net.lines.push_back(l);
  }
  for (int g = 0; g < shape.disco_dgs && N > 1; ++g) {
    model::DgUnit d;
    d.name = "dg" + std::to_string(g + 1);
    d.bus = pick(2, N);
    d.p_max = round2(uniform(0.2, 0.6));
    d.ramp_up = d.ramp_down = round2(uniform(0.1, 0.4));
    d.bid = round2(uniform(30.0, 60.0));
    net.dgs.push_back(d);
  }
  for (int k = 0; k < shape.pvs && N > 1; ++k) {
    model::PvUnit p;
    p.name = "pv" + std::to_string(k + 1);
    p.bus = pick(2, N);
    const double cap = round2(uniform(0.05, 0.3));
    for (int t = 0; t < T; ++t) p.forecast.push_back(round2(cap * uniform(0.0, 1.0)));
    net.pvs.push_back(p);
  }

  for (int j = 1; j <= shape.microgrids && N > 1; ++j) {
    model::Microgrid mg;
    mg.id = j;
    mg.bus = pick(2, N);
    const double peak = round2(uniform(0.2, 0.8));
    for (int t = 0; t < T; ++t) {
      mg.demand.push_back(round2(peak * uniform(0.6, 1.2)));
      mg.pv.push_back(round2(peak * uniform(0.0, 0.3)));
      mg.il_bid.push_back(round2(uniform(40.0, 80.0)));
    }
    mg.dg = {"mg" + std::to_string(j) + "dg", j, mg.bus, 0.0, round2(uniform(0.1, 0.5)),
             round2(uniform(0.1, 0.3)), round2(uniform(0.1, 0.3)), 0.0, round2(uniform(25.0, 70.0))};
    const double e_max = round2(uniform(0.2, 1.0));
    mg.storage = {0.0, e_max, round2(0.5 * e_max), round2(0.5 * e_max), 0.95, 0.95};
    mg.il_cap_fraction = 0.1;
    mg.exchange_max = 1.5;
    c.microgrids.push_back(mg);
  }

  model::MarketData& mk = c.market;
  for (int t = 0; t < T; ++t) {
    const double w = round2(uniform(20.0, 70.0));
    mk.wem_price.push_back(w);
    mk.penalty_price.push_back(round2(1.4 * w));
    mk.retail_price.push_back(round2(1.2 * w));
    mk.disco_il_bid.push_back(round2(uniform(50.0, 90.0)));
  }
  mk.lem_price_cap = 90.0;
  mk.wem_purchase_cap = 20.0;
  mk.disco_il_cap = 0.1;

  model::resolve_memberships(net, c.microgrids);
  model::validate_case(c);
  return c;
}

}  // namespace flexsched::analysis
