// Command-line driver: run, compare, export-model, import-solution, emit-plots.
//
// Exit codes: 0 ok, 1 input error, 2 solver stopped without a proven
// optimum, 3 internal invariant failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flexsched/analysis/random_case.hpp"
#include "flexsched/analysis/report.hpp"
#include "flexsched/bilevel/bilevel_model.hpp"
#include "flexsched/errors.hpp"
#include "flexsched/milp/lp_format.hpp"
#include "flexsched/model/io.hpp"
#include "flexsched/scenario/scenarios.hpp"

namespace fs = std::filesystem;
using namespace flexsched;

namespace {

enum Exit { kOk = 0, kInput = 1, kLimit = 2, kInternal = 3 };

struct CaseArgs {
  std::string dir = "data/ieee33";
  std::vector<std::string> sets;
  std::optional<int> horizon, start;
  std::optional<std::string> flex;
  std::optional<uint64_t> random_seed;
  int random_buses = 5, random_mgs = 1;
  bool quiet = false;

  void add_to(CLI::App* app) {
    app->add_option("--case", dir, "case directory")->capture_default_str();
    app->add_option("--set", sets, "config override key=value (repeatable)");
    app->add_option("--horizon", horizon, "hours to model");
    app->add_option("--start", start, "first dataset hour of the window");
    app->add_option("--flexibility", flex, "on or off")->check(CLI::IsMember({"on", "off", "true", "false"}));
    app->add_option("--random", random_seed, "use a generated case with this seed instead of --case");
    app->add_option("--random-buses", random_buses, "buses of the generated case")->capture_default_str();
    app->add_option("--random-mgs", random_mgs, "microgrids of the generated case")->capture_default_str();
    app->add_flag("--quiet", quiet, "no progress messages");
  }

  model::KeyValues overrides() const {
    model::KeyValues kv;
    for (const std::string& s : sets) {
      const size_t eq = s.find('=');
      if (eq == std::string::npos) throw InputError("--set expects key=value, got '" + s + "'");
      kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
    if (horizon) kv["horizon"] = std::to_string(*horizon);
    if (start) kv["horizon_start"] = std::to_string(*start);
    if (flex) kv["flexibility"] = (*flex == "on" || *flex == "true") ? "true" : "false";
    return kv;
  }

  model::Case load() const {
    if (!random_seed) return model::load_case(dir, overrides());
    analysis::RandomCaseShape shape;
    shape.buses = random_buses;
    shape.microgrids = random_mgs;
    model::KeyValues kv = overrides();
    if (auto it = kv.find("horizon"); it != kv.end()) shape.horizon = std::stoi(it->second);
    model::Case c = analysis::random_case(*random_seed, shape);
    for (const auto& [k, v] : kv) {
      if (k != "horizon") model::apply_config_value(c.config, k, v);
    }
    return c;
  }
};

struct SolverArgs {
  std::optional<double> gap, time_limit, int_tol, primal_tol, dual_tol;
  std::optional<long long> node_limit;
  std::optional<std::string> big_m_primal, big_m_dual;
  std::optional<std::string> mode;
  std::string export_path = "model.lp", solution_path = "model.sol", external_cmd;
  double check_tol = 1e-4;
  std::optional<int> scenario;

  void add_to(CLI::App* app) {
    app->add_option("--gap", gap, "relative optimality gap");
    app->add_option("--time-limit", time_limit, "seconds");
    app->add_option("--node-limit", node_limit, "branch-and-bound nodes");
    app->add_option("--int-tol", int_tol, "integrality tolerance");
    app->add_option("--primal-tol", primal_tol, "simplex primal feasibility tolerance");
    app->add_option("--dual-tol", dual_tol, "simplex dual feasibility tolerance");
    app->add_option("--big-m-primal", big_m_primal, "primal big-M, number or auto");
    app->add_option("--big-m-dual", big_m_dual, "dual big-M, number or auto");
    app->add_option("--solver", mode, "embedded or export")->check(CLI::IsMember({"embedded", "export"}));
    app->add_option("--export", export_path, "model file in export mode")->capture_default_str();
    app->add_option("--solution", solution_path, "solution file in export mode")->capture_default_str();
    app->add_option("--external-cmd", external_cmd,
                    "command run in export mode; {model} and {solution} are substituted");
    app->add_option("--check-tol", check_tol, "tolerance of the report self-checks")->capture_default_str();
    app->add_option("--scenario", scenario, "scenario (1-based) for per-bus tables; default: most probable");
  }

  void apply(model::Case& c) const {
    if (big_m_primal) model::apply_config_value(c.config, "big_m_primal", *big_m_primal);
    if (big_m_dual) model::apply_config_value(c.config, "big_m_dual", *big_m_dual);
    if (mode) model::apply_config_value(c.config, "solver_mode", *mode);
  }

  analysis::RunOptions options(bool quiet) const {
    analysis::RunOptions o;
    if (gap) o.milp.relative_gap = *gap;
    if (time_limit) o.milp.time_limit_seconds = *time_limit;
    if (node_limit) o.milp.node_limit = *node_limit;
    if (int_tol) o.milp.integrality_tolerance = *int_tol;
    if (primal_tol) o.milp.lp.primal_tolerance = *primal_tol;
    if (dual_tol) o.milp.lp.dual_tolerance = *dual_tol;
    if (scenario) o.view_scenario = *scenario - 1;
    o.export_path = export_path;
    o.solution_path = solution_path;
    o.external_command = external_cmd;
    o.check_tolerance = check_tol;
    if (!quiet) o.log = [](const std::string& m) { std::cerr << m << "\n"; };
    return o;
  }
};

void open_write(const fs::path& p, const std::function<void(std::ostream&)>& fn) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw milp::IoError("cannot write " + p.string());
  fn(f);
}

void write_outputs(const analysis::CaseReport& r, const std::string& outdir, const std::string& plots) {
  if (!outdir.empty()) {
    fs::path d = outdir;
    open_write(d / "summary.txt", [&](std::ostream& o) { analysis::write_summary(r, o); });
    open_write(d / "report.json", [&](std::ostream& o) { analysis::write_report_json(r, o); });
    if (r.has_solution) open_write(d / "bus_balance.csv", [&](std::ostream& o) { analysis::write_bus_balance(r, o); });
  }
  if (!plots.empty() && r.has_solution) analysis::emit_plot_data(r, plots);
}

int status_code(const analysis::CaseReport& r) {
  if (!r.has_solution) return kLimit;
  return r.status == milp::SolveStatus::kOptimal ? kOk : kLimit;
}

std::string kkt_audit_path;

void maybe_kkt_audit(const model::Case& c) {
  if (kkt_audit_path.empty()) return;
  bilevel::BilevelModel bm = bilevel::assemble_milp(c, scenario::make_scenarios(c));
  open_write(kkt_audit_path, [&](std::ostream& o) { bilevel::write_kkt_audit(bm, o); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disco/microgrid bilevel scheduling with ramp flexibility"};
  app.require_subcommand(1);

  CaseArgs run_case, cmp_case, exp_case, imp_case, plot_case;
  SolverArgs run_solver, cmp_solver, imp_solver, plot_solver;
  std::string run_out, run_plots, cmp_out, exp_out = "model.lp", imp_file, imp_out, imp_plots, plot_out = "plots";

  CLI::App* run = app.add_subcommand("run", "solve one case and write its report");
  run_case.add_to(run);
  run_solver.add_to(run);
  run->add_option("--out", run_out, "directory for summary.txt, report.json, bus_balance.csv");
  run->add_option("--plots", run_plots, "directory for the figure CSVs");
  run->add_option("--kkt-audit", kkt_audit_path, "write the derived KKT system to this file");

  CLI::App* cmp = app.add_subcommand("compare", "solve without and with flexibility and compare");
  cmp_case.add_to(cmp);
  cmp_solver.add_to(cmp);
  cmp->add_option("--out", cmp_out, "directory for comparison.csv, price table and per-run outputs");

  CLI::App* exp = app.add_subcommand("export-model", "write the assembled MILP in LP format");
  exp_case.add_to(exp);
  exp->add_option("--out", exp_out, "model file")->capture_default_str();
  exp->add_option("--kkt-audit", kkt_audit_path, "write the derived KKT system to this file");

  CLI::App* imp = app.add_subcommand("import-solution", "report on a solution from an external solver");
  imp_case.add_to(imp);
  imp_solver.add_to(imp);
  imp->add_option("--file", imp_file, "solution file (name value per line)")->required();
  imp->add_option("--out", imp_out, "report directory");
  imp->add_option("--plots", imp_plots, "directory for the figure CSVs");

  CLI::App* plot = app.add_subcommand("emit-plots", "solve one case and write only the figure CSVs");
  plot_case.add_to(plot);
  plot_solver.add_to(plot);
  plot->add_option("--out", plot_out, "directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (run->parsed()) {
      model::Case c = run_case.load();
      run_solver.apply(c);
      maybe_kkt_audit(c);
      analysis::CaseReport r = analysis::run_case(c, run_solver.options(run_case.quiet));
      analysis::write_summary(r, std::cout);
      write_outputs(r, run_out, run_plots);
      return status_code(r);
    }
    if (cmp->parsed()) {
      model::Case base = cmp_case.load();
      cmp_solver.apply(base);
      model::Case off = base, on = base;
      off.config.flexibility_enabled = false;
      on.config.flexibility_enabled = true;
      analysis::RunOptions o_off = cmp_solver.options(cmp_case.quiet), o_on = o_off;
      if (base.config.solver_mode == model::SolverMode::kExport) {
        auto tag = [](const std::string& p, const char* t) {
          fs::path f = p;
          return f.parent_path() / (f.stem().string() + "_" + t + f.extension().string());
        };
        o_off.export_path = tag(cmp_solver.export_path, "noflex");
        o_off.solution_path = tag(cmp_solver.solution_path, "noflex");
        o_on.export_path = tag(cmp_solver.export_path, "flex");
        o_on.solution_path = tag(cmp_solver.solution_path, "flex");
      }
      auto fut = std::async(std::launch::async, [&] { return analysis::run_case(off, o_off); });
      analysis::CaseReport r_on = analysis::run_case(on, o_on);
      analysis::CaseReport r_off = fut.get();
      std::cout << "# without flexibility\n";
      analysis::write_summary(r_off, std::cout);
      std::cout << "# with flexibility\n";
      analysis::write_summary(r_on, std::cout);
      if (!r_off.has_solution || !r_on.has_solution) return kLimit;
      analysis::Comparison cmpres = analysis::compare_cases(r_off, r_on);
      std::cout << "# comparison\n";
      analysis::write_comparison(cmpres, std::cout);
      if (!cmp_out.empty()) {
        fs::path d = cmp_out;
        open_write(d / "comparison.csv", [&](std::ostream& o) { analysis::write_comparison(cmpres, o); });
        open_write(d / "lem_price_table.csv", [&](std::ostream& o) {
          o << "hour,lem_price_without_flex,lem_price_with_flex\n";
          for (size_t t = 0; t < cmpres.price_without.size(); ++t) {
            o << t + 1 << "," << milp::format_number(cmpres.price_without[t]) << ","
              << milp::format_number(cmpres.price_with[t]) << "\n";
          }
        });
        write_outputs(r_off, (d / "noflex").string(), (d / "noflex" / "plots").string());
        write_outputs(r_on, (d / "flex").string(), (d / "flex" / "plots").string());
      }
      return std::max(status_code(r_off), status_code(r_on));
    }
    if (exp->parsed()) {
      model::Case c = exp_case.load();
      maybe_kkt_audit(c);
      bilevel::BilevelModel bm = bilevel::assemble_milp(c, scenario::make_scenarios(c));
      milp::export_model(bm.milp, exp_out);
      milp::ModelStats st = milp::stats(bm.milp);
      std::cout << exp_out << ": " << st.rows << " rows, " << st.cols << " columns, " << st.binaries
                << " binaries, " << st.nonzeros << " nonzeros\n";
      return kOk;
    }
    if (imp->parsed()) {
      model::Case c = imp_case.load();
      imp_solver.apply(c);
      bilevel::BilevelModel bm = bilevel::assemble_milp(c, scenario::make_scenarios(c));
      milp::Solution sol = milp::import_solution(bm.milp, imp_file);
      analysis::CaseReport r = analysis::build_report(c, bm, sol, imp_solver.options(imp_case.quiet));
      r.solver = "external";
      if (c.name == analysis::kBundledCaseName) analysis::attach_references(r);
      analysis::write_summary(r, std::cout);
      write_outputs(r, imp_out, imp_plots);
      return kOk;
    }
    if (plot->parsed()) {
      model::Case c = plot_case.load();
      plot_solver.apply(c);
      analysis::CaseReport r = analysis::run_case(c, plot_solver.options(plot_case.quiet));
      if (!r.has_solution) {
        analysis::write_summary(r, std::cerr);
        return kLimit;
      }
      for (const fs::path& p : analysis::emit_plot_data(r, plot_out)) std::cout << p.string() << "\n";
      return status_code(r);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const milp::SolutionRejected& e) {
    std::cerr << "solution rejected (" << e.subject() << "): " << e.what() << "\n";
    return kInput;
  } catch (const milp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kInput;
  } catch (const milp::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kInput;
  } catch (const analysis::StageError& e) {
    std::cerr << "error in " << e.what() << "\n";
    if (e.stage() == "solve") return kLimit;
    return e.stage() == "report" ? kInternal : kInput;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
