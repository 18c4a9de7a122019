#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qsl/states.hpp"

namespace qsl {

/// "%.12g"
std::string format_number(double x);

/// Column-oriented table written as CSV (header row, LF endings) or as a
/// JSON object mapping each column name to an array.
class Table {
 public:
  using Cell = std::variant<double, std::string>;

  explicit Table(std::vector<std::string> columns);

  /// Throws OutOfRange if the row width differs from the header.
  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  const Cell& at(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// A parsed state-description file.
using StateInput = std::variant<PureState, DensityMatrix, CompositeState>;

/// Accepted layouts:
///   pure       {"levels", "amplitudes_re", "amplitudes_im"?}
///   ensemble   {"probs", "states": [pure, ...]}
///   density    {"levels", "rho_re", "rho_im"?}  (row-major nested arrays)
///   composite  {"factors": [pure, ...]} or
///              {"joint": {"subsystem_levels", "amplitudes_re", "amplitudes_im"?}}
/// Throws Error(Parse) on malformed input; state validation errors pass through.
StateInput parse_state_text(const std::string& text);
StateInput parse_state_file(const std::string& path);

}  // namespace qsl
