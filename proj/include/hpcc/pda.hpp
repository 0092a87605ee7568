#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hpcc/rate.hpp"

namespace hpcc {

/// One entry of a placement delivery array: "*", a null (blank) entry, or a
/// positive integer.
struct Cell {
  enum class Kind : std::uint8_t { Star, Null, Integer };

  Kind kind = Kind::Null;
  int value = 0;

  static Cell star() { return {Kind::Star, 0}; }
  static Cell null() { return {Kind::Null, 0}; }
  static Cell integer(int v) { return {Kind::Integer, v}; }

  bool is_star() const { return kind == Kind::Star; }
  bool is_null() const { return kind == Kind::Null; }
  bool is_integer() const { return kind == Kind::Integer; }

  bool operator==(const Cell&) const = default;
};

/// Rectangular F x K array of cells, row-major. Rows and columns are
/// addressed 0-based in code and printed 1-based.
class CellArray {
 public:
  CellArray() = default;
  CellArray(int rows, int cols) : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Cell& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Cell& at(int r, int c) const { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }

  /// Same positions of "*" in both arrays (the HpPDA pattern equality).
  bool same_star_pattern(const CellArray& other) const;

  /// Copy with every integer replaced by a null entry.
  CellArray stars_only() const;

  bool operator==(const CellArray&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Cell> cells_;
};

/// Parses the text array format: one row per line, cells separated by
/// whitespace, "*" star, "-" null, decimal integers. Blank lines and lines
/// starting with '#' are skipped. Throws ParseError on ragged rows or bad
/// tokens.
CellArray parse_cell_array(const std::string& text);
std::string format_cell_array(const CellArray& a);

struct PdaParams {
  int K = 0;
  int F = 0;
  int Z = 0;
  int S = 0;
  bool operator==(const PdaParams&) const = default;
};

struct PdaViolation {
  enum class Condition { Shape, NullCell, StarCount, MissingInteger, SameRowOrColumn, NotStarComplement };
  Condition condition;
  /// Offending cells, 1-based (row, column).
  std::vector<std::pair<int, int>> cells;
  int integer = 0;
  std::string message;
};

/// Which of the three PDA conditions a violation breaks (1, 2 or 3; 0 for
/// shape and null-entry problems).
int condition_number(PdaViolation::Condition c);

using PdaCheck = std::variant<PdaParams, PdaViolation>;

/// Checks the three PDA conditions in order and reports the first failure.
PdaCheck verify_pda(const CellArray& candidate);

/// A verified [K, F, Z, S]-PDA.
class Pda {
 public:
  /// Throws InvalidParameters carrying the violation message.
  explicit Pda(CellArray cells);

  const CellArray& cells() const { return cells_; }
  const PdaParams& params() const { return params_; }
  int K() const { return params_.K; }
  int F() const { return params_.F; }
  int Z() const { return params_.Z; }
  int S() const { return params_.S; }

  /// Number of occurrences of each integer 1..S (index 0 unused).
  std::vector<int> integer_counts() const;

 private:
  CellArray cells_;
  PdaParams params_;
};

/// MAN-PDA: rows are the t-subsets of [K] in lexicographic order; entry
/// (T, k) is "*" when k is in T, otherwise 1 + the lexicographic rank of
/// T with k added among the (t+1)-subsets. Throws InvalidT.
Pda man_pda(int K, int t);

/// Memory-rate point of the secretive PDA scheme on man_pda(K, t) with N
/// files: M = N Z / (F - Z) + 1, R = S / (F - Z), counted on the array.
RatePoint baseline_point(int K, int t, int N);

}  // namespace hpcc
