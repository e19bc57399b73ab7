#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flexsched::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ColId {
  int32_t value = -1;
  friend bool operator==(ColId, ColId) = default;
  explicit operator bool() const { return value >= 0; }
};

struct RowId {
  int32_t value = -1;
  friend bool operator==(RowId, RowId) = default;
};

enum class Sense : uint8_t { kLessEqual, kEqual, kGreaterEqual };
enum class ObjectiveSense : uint8_t { kMinimize, kMaximize };

struct Column {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double objective = 0.0;
  bool is_binary = false;
};

struct Term {
  ColId col;
  double coef = 0.0;
};

struct Row {
  std::string name;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::vector<Term> terms;  // sorted by column, no duplicates
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sparse mixed-binary linear program. Columns and rows keep insertion order,
// which is the canonical order used by the exporter and the solvers.
class MilpModel {
 public:
  MilpModel() = default;

  ColId add_column(std::string name, double lower, double upper,
                   double objective = 0.0);
  ColId add_binary(std::string name, double objective = 0.0);

  // Duplicate columns inside `terms` are merged; exact zeros are dropped.
  RowId add_row(std::string name, Sense sense, double rhs,
                std::vector<Term> terms);

  void set_objective(ColId col, double coef) { cols_.at(col.value).objective = coef; }
  void add_objective(ColId col, double coef) { cols_.at(col.value).objective += coef; }
  void set_bounds(ColId col, double lower, double upper);

  ObjectiveSense objective_sense() const { return sense_; }
  void set_objective_sense(ObjectiveSense sense) { sense_ = sense; }
  double objective_offset() const { return offset_; }
  void set_objective_offset(double offset) { offset_ = offset; }
  void add_objective_offset(double delta) { offset_ += delta; }

  int num_cols() const { return static_cast<int>(cols_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_binaries() const;
  size_t num_nonzeros() const;

  const Column& col(ColId id) const { return cols_.at(id.value); }
  const Column& col(int index) const { return cols_.at(index); }
  const Row& row(RowId id) const { return rows_.at(id.value); }
  const Row& row(int index) const { return rows_.at(index); }
  std::span<const Column> columns() const { return cols_; }
  std::span<const Row> rows() const { return rows_; }

  // Throws ModelError naming the first offending entity.
  void validate() const;

  double evaluate_objective(std::span<const double> x) const;
  double row_activity(int row, std::span<const double> x) const;

  // Index lookup by name; -1 when absent. Built lazily.
  int find_column(const std::string& name) const;

 private:
  std::vector<Column> cols_;
  std::vector<Row> rows_;
  ObjectiveSense sense_ = ObjectiveSense::kMinimize;
  double offset_ = 0.0;
  mutable std::vector<std::pair<std::string, int>> name_index_;
};

struct ModelStats {
  int rows = 0;
  int cols = 0;
  int binaries = 0;
  size_t nonzeros = 0;
};

inline ModelStats stats(const MilpModel& model) {
  return {model.num_rows(), model.num_cols(), model.num_binaries(),
          model.num_nonzeros()};
}

}  // namespace flexsched::milp
