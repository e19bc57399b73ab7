#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "flexsched/model/io.hpp"

using namespace flexsched;
using namespace flexsched::model;
namespace fs = std::filesystem;

namespace {

const fs::path kBundled = fs::path(FLEXSCHED_DATA_DIR) / "ieee33";

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

// Smallest valid case: one bus, no lines, no DERs, two hours.
fs::path single_bus_case(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("flexsched_case_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  write(dir / "buses.csv", "bus,peak_load_mw,v_min_pu,v_max_pu\n1,0,1,1\n");
  write(dir / "lines.csv", "# none\nfrom,to,r_ohm,x_ohm,i_max_a\n");
  write(dir / "profiles.csv", "series,h1,h2\nload_shape,1,1\n");
  write(dir / "market.csv", "series,h1,h2\nwem_price,30,40\ndisco_il_bid,60,60\n");
  write(dir / "market.cfg", "wem_purchase_cap = 5\ndisco_il_cap = 1\n");
  write(dir / "case.cfg", "horizon = 2\n");
  return dir;
}

}  // namespace

TEST_CASE("bundled 33-bus case loads with the expected sets") {
  Case c = load_case(kBundled);
  CHECK(c.network.num_buses() == 33);
  CHECK(c.network.lines.size() == 32);
  CHECK(c.microgrids.size() == 3);
  CHECK(c.network.dgs.size() == 4);
  CHECK(c.network.pvs.size() == 5);
  CHECK(c.config.horizon == 24);
  CHECK_NOTHROW(validate_radial(c.network));
  int mg_buses = 0;
  for (const Bus& b : c.network.buses) mg_buses += b.has_mg;
  CHECK(mg_buses == 3);
  // derived prices apply because market.csv lists only the base series
  for (int t = 0; t < 24; ++t) {
    CHECK(c.market.penalty_price[t] == doctest::Approx(1.4 * c.market.wem_price[t]));
    CHECK(c.market.retail_price[t] == doctest::Approx(1.2 * c.market.wem_price[t]));
    CHECK(c.microgrids[0].il_bid[t] == doctest::Approx(0.8 * c.market.disco_il_bid[t]));
  }
  CHECK(c.market.lem_price_cap == 90.0);
  // voltage window 0.95..1.05 pu of 12.66 kV; substation fixed
  CHECK(c.network.bus(1).v_min == doctest::Approx(12.66));
  CHECK(c.network.bus(1).v_max == doctest::Approx(12.66));
  CHECK(c.network.bus(18).v_min == doctest::Approx(0.95 * 12.66));
  CHECK(c.network.bus(18).v_max == doctest::Approx(1.05 * 12.66));
  // currents stored in kA
  CHECK(c.network.lines[0].i_max == doctest::Approx(1.5));
  CHECK(c.network.lines[0].z >= c.network.lines[0].r);
}

TEST_CASE("horizon window slices every profile") {
  Case c = load_case(kBundled, {{"horizon", "8"}, {"horizon_start", "14"}});
  CHECK(c.config.horizon == 8);
  CHECK(c.market.wem_price.size() == 8);
  Case full = load_case(kBundled);
  CHECK(c.market.wem_price[0] == full.market.wem_price[13]);
  CHECK(c.network.bus(24).base_load[7] == full.network.bus(24).base_load[20]);
  CHECK(c.microgrids[2].demand.size() == 8);
  CHECK_THROWS_AS(load_case(kBundled, {{"horizon", "8"}, {"horizon_start", "20"}}), ValidationError);
}

TEST_CASE("loading is deterministic") {
  Case a = load_case(kBundled), b = load_case(kBundled);
  CHECK(a.network.bus(7).base_load == b.network.bus(7).base_load);
  CHECK(a.microgrids[1].demand == b.microgrids[1].demand);
}

TEST_CASE("single bus case without DERs is valid") {
  Case c = load_case(single_bus_case("single"));
  CHECK(c.network.num_buses() == 1);
  CHECK(c.network.lines.empty());
  CHECK(c.microgrids.empty());
  CHECK(c.network.dgs.empty());
  CHECK(c.network.pvs.empty());
}

TEST_CASE("microgrid on a missing bus is a reference error") {
  fs::path dir = single_bus_case("dangling");
  write(dir / "microgrids.csv", "id,bus,exchange_max_mw,il_cap_fraction\n1,99,1,0.1\n");
  write(dir / "dgs.csv",
        "name,owner,bus,p_min_mw,p_max_mw,ramp_up_mw_h,ramp_down_mw_h,p_initial_mw,bid_usd_mwh\n"
        "g,1,99,0,1,1,1,0,30\n");
  write(dir / "storage.csv", "mg,e_min_mwh,e_max_mwh,e_initial_mwh,p_rate_max_mw,eta_ch,eta_dch\n1,0,1,0,1,1,1\n");
  write(dir / "profiles.csv", "series,h1,h2\nload_shape,1,1\nmg1_demand,1,1\n");
  try {
    load_case(dir);
    FAIL("expected a reference error");
  } catch (const ReferenceError& e) {
    CHECK(e.entity() == "microgrid 1");
    CHECK(std::string(e.what()).find("99") != std::string::npos);
  }
}

TEST_CASE("malformed number reports file and line") {
  fs::path dir = single_bus_case("malformed");
  write(dir / "buses.csv", "# header follows\nbus,peak_load_mw,v_min_pu,v_max_pu\n1,abc,1,1\n");
  try {
    load_case(dir);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.file().find("buses.csv") != std::string::npos);
  }
}

TEST_CASE("invariant violations name the entity") {
  fs::path dir = single_bus_case("invalid");
  write(dir / "buses.csv", "bus,peak_load_mw,v_min_pu,v_max_pu\n1,0,1,1\n2,0.1,0.95,1.05\n");
  write(dir / "lines.csv", "from,to,r_ohm,x_ohm,i_max_a\n1,2,0.1,0.1,0\n");
  try {
    load_case(dir);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.entity() == "line 1-2");
  }
  CHECK_THROWS_AS(load_case(single_bus_case("badkey"), {{"pwl_segmentz", "3"}}), InputError);
  CHECK_THROWS_AS(load_case(single_bus_case("badseg"), {{"pwl_segments", "0"}}), ValidationError);
}

TEST_CASE("radial check") {
  NetworkModel n;
  for (int i = 1; i <= 3; ++i) n.buses.push_back(Bus{i, {0.0}, 1.0, 1.0});
  SUBCASE("tree") {
    n.lines = {{1, 2, 0.1, 0.2, 1.0}, {1, 3, 0.1, 0.2, 1.0}};
    CHECK_NOTHROW(validate_radial(n));
  }
  SUBCASE("loop") {
    n.lines = {{1, 2, 0.1, 0.2, 1.0}, {2, 3, 0.1, 0.2, 1.0}, {3, 1, 0.1, 0.2, 1.0}};
    try {
      validate_radial(n);
      FAIL("expected a cycle");
    } catch (const TopologyError& e) {
      CHECK(e.kind() == TopologyError::Kind::kCycle);
    }
  }
  SUBCASE("disconnected") {
    n.lines = {{1, 2, 0.1, 0.2, 1.0}};
    try {
      validate_radial(n);
      FAIL("expected a disconnected bus");
    } catch (const TopologyError& e) {
      CHECK(e.kind() == TopologyError::Kind::kDisconnected);
      CHECK(e.entity() == "bus 3");
    }
  }
}
