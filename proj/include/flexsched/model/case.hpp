#pragma once

#include <optional>
#include <string>
#include <vector>

namespace flexsched::model {

// Units: MW, MWh, ohm, kV, kA, $/MWh, one-hour steps. Current limits are
// stored in A in the dataset files and converted to kA on load so that
// kA^2 * ohm = MW and kV^2 / ohm = MW hold inside the flow equations.

struct Bus {
  int id = 0;
  std::vector<double> base_load;  // forecast P^D per hour, MW
  double v_min = 0.0;             // kV
  double v_max = 0.0;             // kV
  bool has_mg = false;
  bool has_dg = false;
  bool has_pv = false;
};

struct Line {
  int from = 0;
  int to = 0;
  double r = 0.0;      // ohm
  double z = 0.0;      // ohm, impedance magnitude
  double i_max = 0.0;  // kA
};

inline constexpr int kDiscoOwner = -1;

struct DgUnit {
  std::string name;
  int owner = kDiscoOwner;  // microgrid id, or kDiscoOwner
  int bus = 0;
  double p_min = 0.0;
  double p_max = 0.0;
  double ramp_up = 0.0;
  double ramp_down = 0.0;
  double p_initial = 0.0;
  double bid = 0.0;
};

struct PvUnit {
  std::string name;
  int bus = 0;
  std::vector<double> forecast;  // MW per hour
};

struct StorageUnit {
  double e_min = 0.0;
  double e_max = 0.0;
  double e_initial = 0.0;
  double p_rate_max = 0.0;
  double eta_ch = 1.0;
  double eta_dch = 1.0;
};

struct Microgrid {
  int id = 0;
  int bus = 0;
  std::vector<double> demand;  // MW per hour
  std::vector<double> pv;      // MW per hour
  DgUnit dg;
  StorageUnit storage;
  double il_cap_fraction = 0.1;
  std::vector<double> il_bid;  // $/MWh per hour
  double exchange_max = 0.0;
  double initial_exchange = 0.0;  // P^MG at t = 0
};

struct NetworkModel {
  std::vector<Bus> buses;  // buses[k].id == k + 1
  std::vector<Line> lines;
  std::vector<DgUnit> dgs;  // Disco-owned units
  std::vector<PvUnit> pvs;  // Disco-side PV
  double v_base = 12.66;    // kV

  int num_buses() const { return static_cast<int>(buses.size()); }
  const Bus& bus(int id) const { return buses.at(id - 1); }
};

struct MarketData {
  std::vector<double> wem_price;
  std::vector<double> penalty_price;
  std::vector<double> retail_price;
  std::vector<double> disco_il_bid;
  double lem_price_cap = 90.0;
  double wem_purchase_cap = 0.0;
  double disco_il_cap = 0.0;          // MW per bus and hour
  double disco_il_fraction = 0.3;     // of the bus load
};

enum class SolverMode { kEmbedded, kExport };

enum class ScenarioSource { kOverride, kGenerated };

enum class PvDistribution { kBeta, kTruncatedNormal };

struct ScenarioSettings {
  ScenarioSource source = ScenarioSource::kOverride;
  std::string override_file = "scenarios.csv";
  bool normalize = false;
  int load_intervals = 3;
  int pv_intervals = 3;
  double load_sigma = 0.1;  // relative standard deviation of the load multiplier
  PvDistribution pv_distribution = PvDistribution::kBeta;
  double pv_beta_a = 6.0;
  double pv_beta_b = 2.0;
  double pv_sigma = 0.25;   // truncated-normal alternative
};

struct CaseConfig {
  int horizon = 24;
  int horizon_start = 1;  // first dataset hour of the modelled window
  bool flexibility_enabled = true;
  std::optional<double> big_m_primal;  // unset: per-row bound-derived values
  std::optional<double> big_m_dual;    // unset: 10 x largest LL cost coefficient
  int pwl_segments = 6;
  SolverMode solver_mode = SolverMode::kEmbedded;
  std::optional<double> initial_purchase;  // P^E at t = 0; unset skips the t = 1 ramp row
  double relative_gap = 0.0;
  double time_limit_seconds = 1e30;
  long long node_limit = 2'000'000;
  ScenarioSettings scenarios;
};

struct Case {
  std::string name;
  NetworkModel network;
  std::vector<Microgrid> microgrids;
  MarketData market;
  CaseConfig config;
  std::string directory;  // where the files came from, if loaded
};

}  // namespace flexsched::model
