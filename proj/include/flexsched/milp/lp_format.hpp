#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>

#include "flexsched/milp/model.hpp"
#include "flexsched/milp/solution.hpp"

namespace flexsched::milp {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by import_solution; `subject` is the offending column or row name.
class SolutionRejected : public std::runtime_error {
 public:
  SolutionRejected(const std::string& message, std::string subject)
      : std::runtime_error(message), subject_(std::move(subject)) {}
  const std::string& subject() const { return subject_; }

 private:
  std::string subject_;
};

// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

// CPLEX-style LP text: objective, Subject To, Bounds, Binaries, End. The
// objective constant has no place in that grammar and is written as a
// "\ offset" comment line. Output depends only on the model contents.
void write_lp(const MilpModel& model, std::ostream& out);
void export_model(const MilpModel& model, const std::filesystem::path& path);

// One "name value" pair per line; '#' starts a comment.
void write_solution(const MilpModel& model, const Solution& solution, std::ostream& out);
void export_solution(const MilpModel& model, const Solution& solution,
                     const std::filesystem::path& path);

// Every column must be present exactly once. Bounds, integrality and rows are
// rechecked at `tolerance`; the worst violation is reported by name.
Solution read_solution(const MilpModel& model, std::istream& in, double tolerance = 1e-5);
Solution import_solution(const MilpModel& model, const std::filesystem::path& path,
                         double tolerance = 1e-5);

}  // namespace flexsched::milp
