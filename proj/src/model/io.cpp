#include "flexsched/model/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "table.hpp"

namespace flexsched::model {

using detail::Table;
using detail::TableRow;
using detail::parse_number;
using detail::trim;

CasePaths CasePaths::in_directory(const std::filesystem::path& dir) {
  CasePaths p;
  p.buses = dir / "buses.csv";
  p.lines = dir / "lines.csv";
  p.dgs = dir / "dgs.csv";
  p.pvs = dir / "pvs.csv";
  p.microgrids = dir / "microgrids.csv";
  p.storage = dir / "storage.csv";
  p.profiles = dir / "profiles.csv";
  p.market_series = dir / "market.csv";
  p.market_cfg = dir / "market.cfg";
  p.case_cfg = dir / "case.cfg";
  return p;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  KeyValues kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(path.string(), line_no, "expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ParseError(path.string(), line_no, "empty key");
    if (!kv.emplace(key, value).second) {
      throw ParseError(path.string(), line_no, "duplicate key '" + key + "'");
    }
  }
  return kv;
}

namespace {

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InputError("config '" + key + "': expected a boolean, got '" + v + "'");
}

double parse_value(const std::string& key, const std::string& v) {
  try {
    return parse_number(v, "config '" + key + "'", 0);
  } catch (const ParseError&) {
    throw InputError("config '" + key + "': expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  double d = parse_value(key, v);
  if (d != std::floor(d)) throw InputError("config '" + key + "': expected an integer, got '" + v + "'");
  return static_cast<int>(d);
}

std::optional<double> parse_optional(const std::string& key, const std::string& v) {
  if (v == "auto" || v == "none" || v.empty()) return std::nullopt;
  return parse_value(key, v);
}

using SeriesMap = std::map<std::string, std::vector<double>>;

SeriesMap read_series(const std::filesystem::path& path) {
  Table t = Table::read(path);
  if (t.header().empty() || t.header()[0] != "series") {
    throw ParseError(t.file(), 1, "first column must be 'series'");
  }
  const size_t hours = t.header().size() - 1;
  for (size_t h = 0; h < hours; ++h) {
    if (t.header()[h + 1] != "h" + std::to_string(h + 1)) {
      throw ParseError(t.file(), 1, "hour columns must be named h1..hN in order");
    }
  }
  SeriesMap out;
  for (const TableRow& row : t.rows()) {
    std::vector<double> values;
    for (size_t h = 0; h < hours; ++h) values.push_back(t.number(row, static_cast<int>(h + 1)));
    if (!out.emplace(row.fields[0], std::move(values)).second) {
      throw ParseError(t.file(), row.line, "duplicate series '" + row.fields[0] + "'");
    }
  }
  return out;
}

struct Window {
  int start = 1;
  int length = 24;
};

std::vector<double> slice(const SeriesMap& m, const std::string& name, const Window& w,
                          const std::filesystem::path& file) {
  auto it = m.find(name);
  if (it == m.end()) throw ParseError(file.string(), 0, "missing series '" + name + "'");
  const auto& v = it->second;
  if (w.start < 1 || w.start - 1 + w.length > static_cast<int>(v.size())) {
    throw ValidationError("series " + name, "horizon window [" + std::to_string(w.start) + ", " +
                                                std::to_string(w.start + w.length - 1) +
                                                "] exceeds the " + std::to_string(v.size()) +
                                                " hours in " + file.filename().string());
  }
  return {v.begin() + (w.start - 1), v.begin() + (w.start - 1 + w.length)};
}

std::vector<double> scaled(std::vector<double> v, double factor) {
  for (double& x : v) x *= factor;
  return v;
}

int parse_owner(const Table& t, const TableRow& row, int col) {
  const std::string& s = row.fields[col];
  if (s == "disco") return kDiscoOwner;
  std::string digits = s.rfind("mg", 0) == 0 ? s.substr(2) : s;
  double v = parse_number(digits, t.file(), row.line);
  if (v < 1 || v != std::floor(v)) throw ParseError(t.file(), row.line, "bad owner '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace

void apply_config_value(CaseConfig& c, const std::string& key, const std::string& v) {
  ScenarioSettings& sc = c.scenarios;
  if (key == "horizon") c.horizon = parse_int(key, v);
  else if (key == "horizon_start") c.horizon_start = parse_int(key, v);
  else if (key == "flexibility") c.flexibility_enabled = parse_bool(key, v);
  else if (key == "big_m_primal") c.big_m_primal = parse_optional(key, v);
  else if (key == "big_m_dual") c.big_m_dual = parse_optional(key, v);
  else if (key == "pwl_segments") c.pwl_segments = parse_int(key, v);
  else if (key == "solver_mode") {
    if (v == "embedded") c.solver_mode = SolverMode::kEmbedded;
    else if (v == "export") c.solver_mode = SolverMode::kExport;
    else throw InputError("config 'solver_mode': expected embedded or export, got '" + v + "'");
  } else if (key == "initial_purchase") c.initial_purchase = parse_optional(key, v);
  else if (key == "relative_gap") c.relative_gap = parse_value(key, v);
  else if (key == "time_limit") c.time_limit_seconds = parse_value(key, v);
  else if (key == "node_limit") c.node_limit = parse_int(key, v);
  else if (key == "scenario_source") {
    if (v == "override") sc.source = ScenarioSource::kOverride;
    else if (v == "generated") sc.source = ScenarioSource::kGenerated;
    else throw InputError("config 'scenario_source': expected override or generated, got '" + v + "'");
  } else if (key == "scenario_file") sc.override_file = v;
  else if (key == "scenario_normalize") sc.normalize = parse_bool(key, v);
  else if (key == "load_intervals") sc.load_intervals = parse_int(key, v);
  else if (key == "pv_intervals") sc.pv_intervals = parse_int(key, v);
  else if (key == "load_sigma") sc.load_sigma = parse_value(key, v);
  else if (key == "pv_distribution") {
    if (v == "beta") sc.pv_distribution = PvDistribution::kBeta;
    else if (v == "truncated_normal") sc.pv_distribution = PvDistribution::kTruncatedNormal;
    else throw InputError("config 'pv_distribution': expected beta or truncated_normal, got '" + v + "'");
  } else if (key == "pv_beta_a") sc.pv_beta_a = parse_value(key, v);
  else if (key == "pv_beta_b") sc.pv_beta_b = parse_value(key, v);
  else if (key == "pv_sigma") sc.pv_sigma = parse_value(key, v);
  else throw InputError("unknown config key '" + key + "'");
}

void resolve_memberships(NetworkModel& network, const std::vector<Microgrid>& microgrids) {
  for (Bus& b : network.buses) b.has_mg = b.has_dg = b.has_pv = false;
  auto mark = [&](int id, bool Bus::*flag) {
    if (id >= 1 && id <= network.num_buses()) network.buses[id - 1].*flag = true;
  };
  for (const Microgrid& mg : microgrids) mark(mg.bus, &Bus::has_mg);
  for (const DgUnit& dg : network.dgs) mark(dg.bus, &Bus::has_dg);
  for (const PvUnit& pv : network.pvs) mark(pv.bus, &Bus::has_pv);
}

Case load_case(const std::filesystem::path& dir, const KeyValues& overrides) {
  Case c = load_case(CasePaths::in_directory(dir), overrides);
  c.directory = dir.string();
  return c;
}

Case load_case(const CasePaths& paths, const KeyValues& overrides) {
  Case c;
  c.directory = paths.case_cfg.parent_path().string();

  KeyValues cfg = read_key_values(paths.case_cfg);
  for (const auto& [k, v] : overrides) cfg[k] = v;
  for (const auto& [k, v] : cfg) {
    if (k == "name") c.name = v;
    else if (k == "v_base_kv") c.network.v_base = parse_value(k, v);
    else apply_config_value(c.config, k, v);
  }
  if (c.config.horizon < 1) throw ValidationError("config", "horizon must be >= 1");
  const Window w{c.config.horizon_start, c.config.horizon};
  const int T = w.length;

  SeriesMap profiles = read_series(paths.profiles);
  SeriesMap market_series = read_series(paths.market_series);
  const std::vector<double> load_shape = slice(profiles, "load_shape", w, paths.profiles);

  {
    Table t = Table::read(paths.buses);
    const int c_id = t.column("bus"), c_load = t.column("peak_load_mw");
    const int c_vmin = t.column("v_min_pu"), c_vmax = t.column("v_max_pu");
    for (const TableRow& row : t.rows()) {
      Bus b;
      b.id = t.integer(row, c_id);
      if (b.id != c.network.num_buses() + 1) {
        throw ValidationError("bus " + row.fields[c_id],
                              "bus ids must be unique and numbered 1..N in file order (" + t.file() +
                                  ":" + std::to_string(row.line) + ")");
      }
      const double peak = t.number(row, c_load);
      b.base_load = scaled(load_shape, peak);
      b.v_min = t.number(row, c_vmin) * c.network.v_base;
      b.v_max = t.number(row, c_vmax) * c.network.v_base;
      c.network.buses.push_back(std::move(b));
    }
  }
  {
    Table t = Table::read(paths.lines);
    const int c_from = t.column("from"), c_to = t.column("to"), c_r = t.column("r_ohm");
    const int c_x = t.column("x_ohm"), c_i = t.column("i_max_a");
    for (const TableRow& row : t.rows()) {
      Line l;
      l.from = t.integer(row, c_from);
      l.to = t.integer(row, c_to);
      l.r = t.number(row, c_r);
      const double x = t.number(row, c_x);
      l.z = std::hypot(l.r, x);
      l.i_max = t.number(row, c_i) / 1000.0;
      c.network.lines.push_back(l);
    }
  }

  std::vector<DgUnit> mg_dgs;
  if (std::filesystem::exists(paths.dgs)) {
    Table t = Table::read(paths.dgs);
    const int c_name = t.column("name"), c_owner = t.column("owner"), c_bus = t.column("bus");
    const int c_pmin = t.column("p_min_mw"), c_pmax = t.column("p_max_mw");
    const int c_ru = t.column("ramp_up_mw_h"), c_rd = t.column("ramp_down_mw_h");
    const int c_ini = t.column("p_initial_mw"), c_bid = t.column("bid_usd_mwh");
    for (const TableRow& row : t.rows()) {
      DgUnit d;
      d.name = row.fields[c_name];
      d.owner = parse_owner(t, row, c_owner);
      d.bus = t.integer(row, c_bus);
      d.p_min = t.number(row, c_pmin);
      d.p_max = t.number(row, c_pmax);
      d.ramp_up = t.number(row, c_ru);
      d.ramp_down = t.number(row, c_rd);
      d.p_initial = t.number(row, c_ini);
      d.bid = t.number(row, c_bid);
      (d.owner == kDiscoOwner ? c.network.dgs : mg_dgs).push_back(std::move(d));
    }
  }
  if (std::filesystem::exists(paths.pvs)) {
    Table t = Table::read(paths.pvs);
    const int c_name = t.column("name"), c_bus = t.column("bus"), c_cap = t.column("capacity_mw");
    std::vector<double> shape;
    if (!t.rows().empty()) shape = slice(profiles, "pv_shape", w, paths.profiles);
    for (const TableRow& row : t.rows()) {
      PvUnit p;
      p.name = row.fields[c_name];
      p.bus = t.integer(row, c_bus);
      p.forecast = scaled(shape, t.number(row, c_cap));
      c.network.pvs.push_back(std::move(p));
    }
  }

  KeyValues mcfg = read_key_values(paths.market_cfg);
  double penalty_factor = 1.4, retail_factor = 1.2, mg_il_factor = 0.8;
  for (const auto& [k, v] : mcfg) {
    if (k == "lem_price_cap") c.market.lem_price_cap = parse_value(k, v);
    else if (k == "wem_purchase_cap") c.market.wem_purchase_cap = parse_value(k, v);
    else if (k == "disco_il_cap") c.market.disco_il_cap = parse_value(k, v);
    else if (k == "disco_il_fraction") c.market.disco_il_fraction = parse_value(k, v);
    else if (k == "penalty_factor") penalty_factor = parse_value(k, v);
    else if (k == "retail_factor") retail_factor = parse_value(k, v);
    else if (k == "mg_il_factor") mg_il_factor = parse_value(k, v);
    else throw InputError(paths.market_cfg.string() + ": unknown key '" + k + "'");
  }
  const auto& ms = market_series;
  c.market.wem_price = slice(ms, "wem_price", w, paths.market_series);
  c.market.disco_il_bid = slice(ms, "disco_il_bid", w, paths.market_series);
  c.market.penalty_price = ms.count("penalty_price")
                               ? slice(ms, "penalty_price", w, paths.market_series)
                               : scaled(c.market.wem_price, penalty_factor);
  c.market.retail_price = ms.count("retail_price")
                              ? slice(ms, "retail_price", w, paths.market_series)
                              : scaled(c.market.wem_price, retail_factor);

  if (std::filesystem::exists(paths.microgrids)) {
    Table t = Table::read(paths.microgrids);
    const int c_id = t.column("id"), c_bus = t.column("bus"), c_ex = t.column("exchange_max_mw");
    const int c_il = t.column("il_cap_fraction");
    const int c_init = t.has_column("initial_exchange_mw") ? t.column("initial_exchange_mw") : -1;
    for (const TableRow& row : t.rows()) {
      Microgrid mg;
      mg.id = t.integer(row, c_id);
      mg.bus = t.integer(row, c_bus);
      mg.exchange_max = t.number(row, c_ex);
      mg.il_cap_fraction = t.number(row, c_il);
      if (c_init >= 0) mg.initial_exchange = t.number(row, c_init);
      const std::string prefix = "mg" + std::to_string(mg.id) + "_";
      mg.demand = slice(profiles, prefix + "demand", w, paths.profiles);
      mg.pv = profiles.count(prefix + "pv") ? slice(profiles, prefix + "pv", w, paths.profiles)
                                            : std::vector<double>(T, 0.0);
      mg.il_bid = ms.count(prefix + "il_bid") ? slice(ms, prefix + "il_bid", w, paths.market_series)
                                              : scaled(c.market.disco_il_bid, mg_il_factor);
      for (const Microgrid& other : c.microgrids) {
        if (other.id == mg.id) {
          throw ValidationError("microgrid " + std::to_string(mg.id), "duplicate microgrid id");
        }
      }
      c.microgrids.push_back(std::move(mg));
    }
  }
  std::set<int> with_dg, with_storage;
  for (DgUnit& d : mg_dgs) {
    auto it = std::find_if(c.microgrids.begin(), c.microgrids.end(),
                           [&](const Microgrid& m) { return m.id == d.owner; });
    if (it == c.microgrids.end()) {
      throw ReferenceError("dg " + d.name, "owner microgrid " + std::to_string(d.owner) + " does not exist");
    }
    if (!with_dg.insert(d.owner).second) {
      throw ValidationError("dg " + d.name, "microgrid " + std::to_string(d.owner) + " already has a DG");
    }
    it->dg = std::move(d);
  }
  if (std::filesystem::exists(paths.storage)) {
    Table t = Table::read(paths.storage);
    const int c_mg = t.column("mg"), c_emin = t.column("e_min_mwh"), c_emax = t.column("e_max_mwh");
    const int c_eini = t.column("e_initial_mwh"), c_p = t.column("p_rate_max_mw");
    const int c_ech = t.column("eta_ch"), c_edch = t.column("eta_dch");
    for (const TableRow& row : t.rows()) {
      const int id = t.integer(row, c_mg);
      auto it = std::find_if(c.microgrids.begin(), c.microgrids.end(),
                             [&](const Microgrid& m) { return m.id == id; });
      if (it == c.microgrids.end()) {
        throw ReferenceError("storage of microgrid " + std::to_string(id), "microgrid does not exist");
      }
      if (!with_storage.insert(id).second) {
        throw ValidationError("storage of microgrid " + std::to_string(id), "listed twice");
      }
      StorageUnit& s = it->storage;
      s.e_min = t.number(row, c_emin);
      s.e_max = t.number(row, c_emax);
      s.e_initial = t.number(row, c_eini);
      s.p_rate_max = t.number(row, c_p);
      s.eta_ch = t.number(row, c_ech);
      s.eta_dch = t.number(row, c_edch);
    }
  }
  for (const Microgrid& mg : c.microgrids) {
    const std::string who = "microgrid " + std::to_string(mg.id);
    if (!with_dg.count(mg.id)) throw ValidationError(who, "no DG listed in " + paths.dgs.filename().string());
    if (!with_storage.count(mg.id)) throw ValidationError(who, "no storage listed in " + paths.storage.filename().string());
  }

  resolve_memberships(c.network, c.microgrids);
  validate_case(c);
  return c;
}

namespace {

void require(bool ok, const std::string& entity, const std::string& message) {
  if (!ok) throw ValidationError(entity, message);
}

void require_length(const std::vector<double>& v, int T, const std::string& entity) {
  require(static_cast<int>(v.size()) == T, entity,
          "profile has " + std::to_string(v.size()) + " values, horizon is " + std::to_string(T));
}

void require_nonnegative(const std::vector<double>& v, const std::string& entity) {
  for (size_t t = 0; t < v.size(); ++t) {
    require(v[t] >= 0.0, entity, "negative value at hour " + std::to_string(t + 1));
  }
}

void check_bus_ref(const NetworkModel& n, int bus, const std::string& entity) {
  if (bus < 1 || bus > n.num_buses()) {
    throw ReferenceError(entity, "bus " + std::to_string(bus) + " does not exist");
  }
}

void validate_dg(const DgUnit& d, const std::string& who) {
  require(0.0 <= d.p_min && d.p_min <= d.p_max, who, "need 0 <= p_min <= p_max");
  require(d.ramp_up > 0.0 && d.ramp_down > 0.0, who, "ramp limits must be positive");
  require(d.p_min <= d.p_initial && d.p_initial <= d.p_max, who, "need p_min <= p_initial <= p_max");
  require(d.bid >= 0.0, who, "bid must be non-negative");
}

}  // namespace

void validate_case(const Case& c) {
  const CaseConfig& cfg = c.config;
  const int T = cfg.horizon;
  require(T >= 1, "config", "horizon must be >= 1");
  require(cfg.pwl_segments >= 1, "config", "pwl_segments must be >= 1");
  require(!cfg.big_m_primal || *cfg.big_m_primal > 0.0, "config", "big_m_primal must be positive");
  require(!cfg.big_m_dual || *cfg.big_m_dual > 0.0, "config", "big_m_dual must be positive");
  require(cfg.relative_gap >= 0.0, "config", "relative_gap must be non-negative");

  const NetworkModel& n = c.network;
  require(n.num_buses() >= 1, "network", "at least one bus is required");
  require(n.v_base > 0.0, "network", "v_base_kv must be positive");
  for (int k = 0; k < n.num_buses(); ++k) {
    const Bus& b = n.buses[k];
    const std::string who = "bus " + std::to_string(b.id);
    require(b.id == k + 1, who, "bus ids must be 1..N in order");
    require_length(b.base_load, T, who);
    require_nonnegative(b.base_load, who);
    require(b.v_min > 0.0 && b.v_min <= b.v_max, who, "need 0 < v_min <= v_max");
  }
  for (const Line& l : n.lines) {
    const std::string who = "line " + std::to_string(l.from) + "-" + std::to_string(l.to);
    check_bus_ref(n, l.from, who);
    check_bus_ref(n, l.to, who);
    require(l.from != l.to, who, "line connects a bus to itself");
    require(l.r >= 0.0 && l.z >= l.r && l.z > 0.0, who, "need Z >= R >= 0 and Z > 0");
    require(l.i_max > 0.0, who, "current limit must be positive");
  }
  for (const DgUnit& d : n.dgs) {
    const std::string who = "dg " + d.name;
    check_bus_ref(n, d.bus, who);
    validate_dg(d, who);
  }
  for (const PvUnit& p : n.pvs) {
    const std::string who = "pv " + p.name;
    check_bus_ref(n, p.bus, who);
    require_length(p.forecast, T, who);
    require_nonnegative(p.forecast, who);
  }
  std::set<int> mg_buses, mg_ids;
  for (const Microgrid& mg : c.microgrids) {
    const std::string who = "microgrid " + std::to_string(mg.id);
    check_bus_ref(n, mg.bus, who);
    require(mg_ids.insert(mg.id).second, who, "duplicate microgrid id");
    require(mg_buses.insert(mg.bus).second, who,
            "bus " + std::to_string(mg.bus) + " already hosts another microgrid");
    require(n.bus(mg.bus).has_mg, who, "attached bus is not flagged as a microgrid bus");
    require_length(mg.demand, T, who + " demand");
    require_nonnegative(mg.demand, who + " demand");
    require_length(mg.pv, T, who + " pv");
    require_nonnegative(mg.pv, who + " pv");
    require_length(mg.il_bid, T, who + " il_bid");
    require_nonnegative(mg.il_bid, who + " il_bid");
    require(mg.il_cap_fraction >= 0.0 && mg.il_cap_fraction <= 1.0, who, "il_cap_fraction must lie in [0, 1]");
    require(mg.exchange_max > 0.0, who, "exchange_max must be positive");
    require(std::abs(mg.initial_exchange) <= mg.exchange_max, who, "initial exchange exceeds exchange_max");
    validate_dg(mg.dg, who + " dg");
    const StorageUnit& s = mg.storage;
    require(s.e_min <= s.e_initial && s.e_initial <= s.e_max, who + " storage", "need e_min <= e_initial <= e_max");
    require(s.p_rate_max >= 0.0, who + " storage", "p_rate_max must be nonnegative");
    require(s.eta_ch > 0.0 && s.eta_ch <= 1.0 && s.eta_dch > 0.0 && s.eta_dch <= 1.0, who + " storage",
            "efficiencies must lie in (0, 1]");
  }
  for (const Bus& b : n.buses) {
    if (b.has_mg) require(mg_buses.count(b.id) == 1, "bus " + std::to_string(b.id), "flagged has_mg without a microgrid");
  }

  const MarketData& m = c.market;
  const std::pair<const std::vector<double>*, const char*> series[] = {
      {&m.wem_price, "market wem_price"},
      {&m.penalty_price, "market penalty_price"},
      {&m.retail_price, "market retail_price"},
      {&m.disco_il_bid, "market disco_il_bid"}};
  for (const auto& [v, who] : series) {
    require_length(*v, T, who);
    require_nonnegative(*v, who);
  }
  require(m.lem_price_cap > 0.0, "market", "lem_price_cap must be positive");
  require(m.wem_purchase_cap > 0.0, "market", "wem_purchase_cap must be positive");
  require(m.disco_il_cap > 0.0, "market", "disco_il_cap must be positive");
  require(m.disco_il_fraction >= 0.0 && m.disco_il_fraction <= 1.0, "market", "disco_il_fraction must lie in [0, 1]");

  validate_radial(n);
}

void validate_radial(const NetworkModel& network) {
  const int n = network.num_buses();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const Line& l : network.lines) {
    const std::string who = "line " + std::to_string(l.from) + "-" + std::to_string(l.to);
    if (l.from < 1 || l.from > n || l.to < 1 || l.to > n) {
      throw ReferenceError(who, "endpoint is not a bus of the network");
    }
    int a = find(l.from - 1), b = find(l.to - 1);
    if (a == b) throw TopologyError(TopologyError::Kind::kCycle, who, "closes a cycle");
    parent[a] = b;
  }
  const int root = n > 0 ? find(0) : 0;
  for (int k = 1; k < n; ++k) {
    if (find(k) != root) {
      throw TopologyError(TopologyError::Kind::kDisconnected, "bus " + std::to_string(k + 1),
                          "not connected to bus 1");
    }
  }
  // with no cycle and full connectivity the count follows; kept as an explicit check
  if (static_cast<int>(network.lines.size()) != n - 1) {
    throw TopologyError(TopologyError::Kind::kLineCount, "network",
                        std::to_string(network.lines.size()) + " lines for " + std::to_string(n) + " buses");
  }
}

}  // namespace flexsched::model
