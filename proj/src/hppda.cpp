#include "hpcc/hppda.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hpcc/errors.hpp"

namespace hpcc {

std::string format_label(const PositionLabel& l) {
  return "(" + format_compact(l.Y) + "," + std::to_string(l.copy) + ")";
}

std::string format_params(const HpPdaParams& p) {
  std::ostringstream out;
  out << "(" << p.K << "," << p.Kp << "," << p.F << "," << p.Fp << "," << p.Z << "," << p.Zp << "," << p.S << ")";
  return out.str();
}

namespace {

Subset star_set(const CellArray& a, int row) {
  Subset s;
  for (int c = 0; c < a.cols(); ++c) {
    if (a.at(row, c).is_star()) s.push_back(c + 1);
  }
  return s;
}

int column_star_count(const CellArray& P) {
  int z = -1;
  for (int c = 0; c < P.cols(); ++c) {
    int stars = 0;
    for (int r = 0; r < P.rows(); ++r) stars += P.at(r, c).is_star();
    if (z >= 0 && stars != z) {
      throw InvalidParameters("column " + std::to_string(c + 1) + " of P has " + std::to_string(stars) +
                              " stars, column 1 has " + std::to_string(z));
    }
    z = stars;
  }
  return z;
}

/// Builds B from its row labels: "*" on Y, otherwise the label (Y + j, i).
/// Integers are issued by `number`.
template <typename Numbering>
CellArray b_from_rows(const std::vector<PositionLabel>& rows, int Kp, Numbering number) {
  CellArray B(static_cast<int>(rows.size()), Kp);
  for (int r = 0; r < B.rows(); ++r) {
    for (int j = 1; j <= Kp; ++j) {
      if (contains(rows[r].Y, j)) {
        B.at(r, j - 1) = Cell::star();
      } else {
        B.at(r, j - 1) = Cell::integer(number(PositionLabel{set_union(rows[r].Y, {j}), rows[r].copy}));
      }
    }
  }
  return B;
}

}  // namespace

HpPda::HpPda(CellArray P, CellArray B, HpPdaKind kind, int t, std::vector<int> multiplicities,
             std::optional<TDesign> design)
    : kind_(kind),
      t_(t),
      multiplicities_(std::move(multiplicities)),
      design_(std::move(design)),
      P_(P.stars_only()),
      B_(std::move(B)) {
  params_.K = P_.cols();
  params_.F = P_.rows();
  params_.Z = column_star_count(P_);
  params_.Kp = B_.K();
  params_.Fp = B_.F();
  params_.Zp = B_.Z();
  params_.S = B_.S();
  if (params_.Kp > params_.K) throw InvalidParameters("B has more columns than P");

  std::map<Subset, int> seen;
  for (int r = 0; r < params_.Fp; ++r) {
    Subset Y = star_set(B_.cells(), r);
    const int copy = ++seen[Y];
    b_rows_.push_back({std::move(Y), copy});
  }

  // A transmission serves exactly the columns its integer occupies; equal
  // column sets are told apart by order of first appearance.
  std::vector<Subset> served(params_.S + 1);
  for (int r = 0; r < params_.Fp; ++r) {
    for (int c = 0; c < params_.Kp; ++c) {
      const Cell& x = B_.cells().at(r, c);
      if (x.is_integer()) served[x.value].push_back(c + 1);
    }
  }
  std::map<Subset, int> copies;
  tx_.reserve(params_.S);
  for (int s = 1; s <= params_.S; ++s) {
    std::sort(served[s].begin(), served[s].end());
    const int copy = ++copies[served[s]];
    tx_.push_back({served[s], copy});
  }
}

HpPda man_hppda(int K, int Kp, int t) {
  if (Kp < 1 || Kp > K) throw InvalidParameters("need 1 <= K' <= K");
  if (t < 0 || t > Kp - 1) throw InvalidParameters("need 0 <= t <= K'-1");
  CellArray P = man_pda(K, t).cells().stars_only();
  CellArray B = man_pda(Kp, t).cells();
  return HpPda(std::move(P), std::move(B), HpPdaKind::Man, t);
}

HpPda tdesign_hppda(const TDesign& design, const std::vector<int>& a) {
  const int t = design.t;
  if (t < 2) throw MultiplicityOutOfRange("designs of strength t < 2 give no rows");
  if (static_cast<int>(a.size()) != t - 1) {
    throw MultiplicityOutOfRange("expected " + std::to_string(t - 1) + " multiplicities a_1..a_{t-1}");
  }
  bool any = false;
  for (int s = 1; s <= t - 1; ++s) {
    const auto cap = lambda_i_t(design, s);
    if (a[s - 1] < 0 || a[s - 1] > cap) {
      throw MultiplicityOutOfRange("a_" + std::to_string(s) + "=" + std::to_string(a[s - 1]) +
                                   " outside [0, lambda_" + std::to_string(s) + "^t=" + std::to_string(cap) + "]");
    }
    any = any || a[s - 1] > 0;
  }
  if (!any) throw MultiplicityOutOfRange("at least one a_s must be positive");

  // Rows: s = t-1 first, copy-major; then smaller s, subset-major.
  std::vector<PositionLabel> rows;
  for (int s = t - 1; s >= 1; --s) {
    const auto subsets = k_subsets(t, s);
    if (s == t - 1) {
      for (int i = 1; i <= a[s - 1]; ++i) {
        for (const auto& Y : subsets) rows.push_back({Y, i});
      }
    } else {
      for (const auto& Y : subsets) {
        for (int i = 1; i <= a[s - 1]; ++i) rows.push_back({Y, i});
      }
    }
  }
  std::map<PositionLabel, int> ids;
  CellArray B = b_from_rows(rows, t, [&](const PositionLabel& l) {
    auto [it, inserted] = ids.emplace(l, static_cast<int>(ids.size()) + 1);
    return it->second;
  });

  CellArray P(design.num_blocks(), design.v);
  for (int r = 0; r < P.rows(); ++r) {
    for (int c = 0; c < P.cols(); ++c) P.at(r, c) = contains(design.blocks[r], c + 1) ? Cell::star() : Cell::null();
  }
  return HpPda(std::move(P), std::move(B), HpPdaKind::TDesign, t, a, design);
}

Subset phi(const Subset& tau, const Subset& positions) {
  Subset out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(tau.at(p - 1));
  return out;
}

Subset normalize_active_set(const HpPda& h, Subset tau) {
  std::sort(tau.begin(), tau.end());
  if (static_cast<int>(tau.size()) != h.params().Kp) {
    throw BadActiveSet("need " + std::to_string(h.params().Kp) + " active users, got " + std::to_string(tau.size()));
  }
  if (std::adjacent_find(tau.begin(), tau.end()) != tau.end()) throw BadActiveSet("repeated user");
  if (!tau.empty() && (tau.front() < 1 || tau.back() > h.params().K)) {
    throw BadActiveSet("user outside [1, " + std::to_string(h.params().K) + "]");
  }
  return tau;
}

std::vector<int> witness(const HpPda& h, const Subset& tau_in) {
  const Subset tau = normalize_active_set(h, tau_in);
  const CellArray& P = h.P();
  std::vector<int> zeta;
  zeta.reserve(h.b_row_labels().size());
  for (const auto& label : h.b_row_labels()) {
    const Subset target = phi(tau, label.Y);
    int seen = 0;
    int chosen = 0;
    for (int r = 0; r < P.rows() && chosen == 0; ++r) {
      bool match = true;
      for (int u : tau) {
        if (P.at(r, u - 1).is_star() != contains(target, u)) {
          match = false;
          break;
        }
      }
      if (match && ++seen == label.copy) chosen = r + 1;
    }
    if (chosen == 0) {
      throw WitnessNotFound("no row " + std::to_string(label.copy) + " of P covers exactly " +
                            format_subset(target) + " within " + format_subset(tau));
    }
    zeta.push_back(chosen);
  }
  return zeta;
}

FilledSubarray fill(const HpPda& h, const Subset& tau_in) {
  FilledSubarray out;
  out.tau = normalize_active_set(h, tau_in);
  out.zeta = witness(h, out.tau);
  const CellArray& B = h.B().cells();
  out.cells = CellArray(B.rows(), B.cols());
  for (int r = 0; r < B.rows(); ++r) {
    for (int c = 0; c < B.cols(); ++c) {
      const bool star = h.p_star(out.zeta[r], out.tau[c]);
      if (star != B.at(r, c).is_star()) {
        throw WitnessNotFound("star pattern of P differs from B at row " + std::to_string(out.zeta[r]) +
                              ", user " + std::to_string(out.tau[c]));
      }
      out.cells.at(r, c) = B.at(r, c);
    }
  }
  return out;
}

std::optional<Subset> verify_hppda(const HpPda& h) {
  for (const Subset& tau : k_subsets(h.params().K, h.params().Kp)) {
    try {
      const FilledSubarray f = fill(h, tau);
      std::set<int> distinct(f.zeta.begin(), f.zeta.end());
      if (distinct.size() != f.zeta.size()) return tau;
    } catch (const WitnessNotFound&) {
      return tau;
    }
  }
  return std::nullopt;
}

std::string format_hppda(const HpPda& h) {
  const auto& p = h.params();
  std::ostringstream out;
  const char* kind = h.kind() == HpPdaKind::Man ? "man" : h.kind() == HpPdaKind::TDesign ? "tdesign" : "arrays";
  out << "hppda " << kind << " K=" << p.K << " Kp=" << p.Kp << " F=" << p.F << " Fp=" << p.Fp << " Z=" << p.Z
      << " Zp=" << p.Zp << " S=" << p.S;
  if (h.t() >= 0) out << " t=" << h.t();
  if (!h.multiplicities().empty()) {
    out << " a=";
    for (std::size_t i = 0; i < h.multiplicities().size(); ++i) out << (i ? "," : "") << h.multiplicities()[i];
  }
  out << "\nP\n" << format_cell_array(h.P()) << "B\n" << format_cell_array(h.B().cells());
  return out.str();
}

HpPda parse_hppda(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string header;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    header = line;
    break;
  }
  std::istringstream hs(header);
  std::string word, kind_word;
  hs >> word >> kind_word;
  if (word != "hppda") throw ParseError("HpPDA file must start with 'hppda <kind> ...'");
  HpPdaKind kind;
  if (kind_word == "man") {
    kind = HpPdaKind::Man;
  } else if (kind_word == "tdesign") {
    kind = HpPdaKind::TDesign;
  } else if (kind_word == "arrays") {
    kind = HpPdaKind::Arrays;
  } else {
    throw ParseError("unknown HpPDA kind '" + kind_word + "'");
  }
  std::map<std::string, std::string> fields;
  while (hs >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw ParseError("bad header field '" + word + "'");
    fields[word.substr(0, eq)] = word.substr(eq + 1);
  }
  auto integer = [](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw ParseError("not an integer: '" + s + "'");
    return v;
  };
  int t = fields.contains("t") ? integer(fields["t"]) : -1;
  std::vector<int> a;
  if (fields.contains("a")) {
    std::istringstream as(fields["a"]);
    std::string tok;
    while (std::getline(as, tok, ',')) a.push_back(integer(tok));
  }

  std::string p_text, b_text;
  std::string* section = nullptr;
  while (std::getline(in, line)) {
    if (line == "P" || line == "P\r") {
      section = &p_text;
    } else if (line == "B" || line == "B\r") {
      section = &b_text;
    } else if (section) {
      *section += line + "\n";
    } else if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ParseError("array rows before a 'P' or 'B' line");
    }
  }
  if (p_text.empty() || b_text.empty()) throw ParseError("HpPDA file needs both a P and a B section");
  HpPda h(parse_cell_array(p_text), parse_cell_array(b_text), kind, t, a);

  for (const auto& [key, expected] :
       std::initializer_list<std::pair<const char*, int>>{{"K", h.params().K},   {"Kp", h.params().Kp},
                                                          {"F", h.params().F},   {"Fp", h.params().Fp},
                                                          {"Z", h.params().Z},   {"Zp", h.params().Zp},
                                                          {"S", h.params().S}}) {
    if (fields.contains(key) && integer(fields[key]) != expected) {
      throw InvalidParameters(std::string("header ") + key + "=" + fields[key] + " but the arrays give " +
                              std::to_string(expected));
    }
  }
  return h;
}

}  // namespace hpcc
