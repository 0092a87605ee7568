#include "hpcc/pda.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hpcc/combinatorics.hpp"
#include "hpcc/errors.hpp"

namespace hpcc {

bool CellArray::same_star_pattern(const CellArray& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].is_star() != other.cells_[i].is_star()) return false;
  }
  return true;
}

CellArray CellArray::stars_only() const {
  CellArray out = *this;
  for (auto& c : out.cells_) {
    if (c.is_integer()) c = Cell::null();
  }
  return out;
}

CellArray parse_cell_array(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<Cell>> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    std::vector<Cell> row;
    while (ls >> tok) {
      if (row.empty() && tok[0] == '#') break;
      if (tok == "*") {
        row.push_back(Cell::star());
      } else if (tok == "-") {
        row.push_back(Cell::null());
      } else {
        std::size_t used = 0;
        int v = 0;
        try {
          v = std::stoi(tok, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tok.size() || v < 1) {
          throw ParseError("line " + std::to_string(lineno) + ": bad cell '" + tok + "'");
        }
        row.push_back(Cell::integer(v));
      }
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(rows.front().size()) +
                       " cells, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty array");
  CellArray a(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) a.at(r, c) = rows[r][c];
  }
  return a;
}

std::string format_cell_array(const CellArray& a) {
  std::string out;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      if (c) out += ' ';
      const Cell& x = a.at(r, c);
      out += x.is_star() ? "*" : x.is_null() ? "-" : std::to_string(x.value);
    }
    out += '\n';
  }
  return out;
}

int condition_number(PdaViolation::Condition c) {
  switch (c) {
    case PdaViolation::Condition::StarCount: return 1;
    case PdaViolation::Condition::MissingInteger: return 2;
    case PdaViolation::Condition::SameRowOrColumn:
    case PdaViolation::Condition::NotStarComplement: return 3;
    default: return 0;
  }
}

PdaCheck verify_pda(const CellArray& a) {
  using C = PdaViolation::Condition;
  if (a.rows() == 0 || a.cols() == 0) return PdaViolation{C::Shape, {}, 0, "empty array"};

  std::map<int, std::vector<std::pair<int, int>>> where;
  int max_int = 0;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      const Cell& x = a.at(r, c);
      if (x.is_null()) return PdaViolation{C::NullCell, {{r + 1, c + 1}}, 0, "null entry in a PDA"};
      if (x.is_integer()) {
        where[x.value].emplace_back(r, c);
        max_int = std::max(max_int, x.value);
      }
    }
  }

  int Z = -1;
  for (int c = 0; c < a.cols(); ++c) {
    int stars = 0;
    for (int r = 0; r < a.rows(); ++r) stars += a.at(r, c).is_star();
    if (Z < 0) Z = stars;
    if (stars != Z) {
      return PdaViolation{C::StarCount, {{1, 1}, {1, c + 1}}, 0,
                          "column " + std::to_string(c + 1) + " has " + std::to_string(stars) +
                              " stars, column 1 has " + std::to_string(Z)};
    }
  }

  for (int s = 1; s <= max_int; ++s) {
    if (!where.contains(s)) {
      return PdaViolation{C::MissingInteger, {}, s, "integer " + std::to_string(s) + " does not occur"};
    }
  }

  for (const auto& [s, cells] : where) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = i + 1; j < cells.size(); ++j) {
        auto [r1, c1] = cells[i];
        auto [r2, c2] = cells[j];
        std::vector<std::pair<int, int>> pair{{r1 + 1, c1 + 1}, {r2 + 1, c2 + 1}};
        if (r1 == r2 || c1 == c2) {
          return PdaViolation{C::SameRowOrColumn, pair, s,
                              "integer " + std::to_string(s) + " repeats in a row or column"};
        }
        if (!a.at(r1, c2).is_star() || !a.at(r2, c1).is_star()) {
          return PdaViolation{C::NotStarComplement, pair, s,
                              "integer " + std::to_string(s) + " lacks the star complement"};
        }
      }
    }
  }
  return PdaParams{a.cols(), a.rows(), Z, max_int};
}

Pda::Pda(CellArray cells) : cells_(std::move(cells)) {
  auto check = verify_pda(cells_);
  if (auto* v = std::get_if<PdaViolation>(&check)) throw InvalidParameters("not a PDA: " + v->message);
  params_ = std::get<PdaParams>(check);
}

std::vector<int> Pda::integer_counts() const {
  std::vector<int> counts(params_.S + 1, 0);
  for (int r = 0; r < cells_.rows(); ++r) {
    for (int c = 0; c < cells_.cols(); ++c) {
      if (cells_.at(r, c).is_integer()) ++counts[cells_.at(r, c).value];
    }
  }
  return counts;
}

Pda man_pda(int K, int t) {
  if (K < 1 || t < 0 || t > K) {
    throw InvalidT("t=" + std::to_string(t) + " outside [0, " + std::to_string(K) + "]");
  }
  const auto rows = k_subsets(K, t);
  CellArray a(static_cast<int>(rows.size()), K);
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = 1; k <= K; ++k) {
      if (contains(rows[r], k)) {
        a.at(r, k - 1) = Cell::star();
      } else {
        a.at(r, k - 1) = Cell::integer(static_cast<int>(subset_rank(set_union(rows[r], {k}), K)) + 1);
      }
    }
  }
  return Pda(std::move(a));
}

RatePoint baseline_point(int K, int t, int N) {
  if (t >= K) throw InvalidT("baseline needs t < K");
  const Pda p = man_pda(K, t);
  const std::int64_t free_rows = p.F() - p.Z();
  Rational M = Rational(static_cast<std::int64_t>(N) * p.Z(), free_rows) + 1;
  Rational R(p.S(), free_rows);
  return {M, R, "baseline", "t=" + std::to_string(t)};
}

}  // namespace hpcc
