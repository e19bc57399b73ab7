#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "flexsched/errors.hpp"
#include "flexsched/model/case.hpp"

namespace flexsched::model {

// File locations for one case. in_directory() fills in the standard names;
// optional files (dgs, pvs, microgrids, storage, scenarios) may be absent.
struct CasePaths {
  std::filesystem::path buses, lines, dgs, pvs, microgrids, storage;
  std::filesystem::path profiles, market_series, market_cfg, case_cfg;

  static CasePaths in_directory(const std::filesystem::path& dir);
};

using KeyValues = std::map<std::string, std::string>;

// key = value lines, '#' comments. Duplicate keys are a parse error.
KeyValues read_key_values(const std::filesystem::path& path);

// Overrides are applied on top of case.cfg before the horizon is sliced, so
// horizon/horizon_start given here take effect.
Case load_case(const CasePaths& paths, const KeyValues& overrides = {});
Case load_case(const std::filesystem::path& dir, const KeyValues& overrides = {});

// Applies one case.cfg style key. Throws InputError on unknown key or bad value.
void apply_config_value(CaseConfig& config, const std::string& key, const std::string& value);

// Recomputes the has_mg / has_dg / has_pv flags from the attachment lists.
void resolve_memberships(NetworkModel& network, const std::vector<Microgrid>& microgrids);

// Throws ValidationError / ReferenceError naming the first offending entity.
void validate_case(const Case& c);

class TopologyError : public ValidationError {
 public:
  enum class Kind { kCycle, kDisconnected, kLineCount };
  TopologyError(Kind kind, const std::string& entity, const std::string& message)
      : ValidationError(entity, message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// |lines| = |buses| - 1, no cycle, every bus reachable from bus 1.
void validate_radial(const NetworkModel& network);

}  // namespace flexsched::model
