#include "hpcc/design.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hpcc/errors.hpp"

namespace hpcc {

DesignCheck verify_design(int v, const std::vector<Subset>& blocks, int t, int lambda) {
  DesignCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.message = std::move(msg);
    return out;
  };
  if (blocks.empty()) return fail("no blocks");
  if (t < 0 || t > v) return fail("strength t out of range");
  const std::size_t k = blocks.front().size();
  std::set<Subset> seen;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Subset s = blocks[b];
    std::sort(s.begin(), s.end());
    if (s.size() != k) return fail("block " + std::to_string(b + 1) + " has the wrong size");
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      return fail("block " + std::to_string(b + 1) + " repeats a point");
    }
    if (s.front() < 1 || s.back() > v) return fail("block " + std::to_string(b + 1) + " has a point outside [v]");
    if (!seen.insert(s).second) return fail("block " + std::to_string(b + 1) + " is repeated");
  }
  std::vector<Subset> sorted(seen.begin(), seen.end());
  for (const Subset& T : k_subsets(v, t)) {
    int count = 0;
    for (const Subset& b : sorted) {
      if (std::includes(b.begin(), b.end(), T.begin(), T.end())) ++count;
    }
    if (count != lambda) {
      out.ok = false;
      out.counterexample = T;
      out.found = count;
      out.message = format_subset(T) + " lies in " + std::to_string(count) + " blocks, expected " +
                    std::to_string(lambda);
      return out;
    }
  }
  return out;
}

TDesign make_design(int v, int k, int t, int lambda, std::vector<Subset> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  for (const auto& b : blocks) {
    if (static_cast<int>(b.size()) != k) throw DesignInvalid("block " + format_subset(b) + " does not have k points");
  }
  const DesignCheck check = verify_design(v, blocks, t, lambda);
  if (!check.ok) throw DesignInvalid(check.message);
  return TDesign{v, k, t, lambda, std::move(blocks)};
}

std::int64_t lambda_s(const TDesign& d, int s) {
  if (s < 0 || s > d.t) throw OutOfRange("s=" + std::to_string(s) + " outside [0, t]");
  const auto num = static_cast<std::int64_t>(d.lambda) * static_cast<std::int64_t>(binomial(d.v - s, d.t - s));
  const auto den = static_cast<std::int64_t>(binomial(d.k - s, d.t - s));
  if (den == 0 || num % den != 0) throw DesignInvalid("lambda_s is not an integer; parameters are inconsistent");
  return num / den;
}

std::int64_t lambda_i_t(const TDesign& d, int i) {
  if (i < 0 || i > d.t) throw OutOfRange("i=" + std::to_string(i) + " outside [0, t]");
  const auto num = static_cast<std::int64_t>(d.lambda) * static_cast<std::int64_t>(binomial(d.v - d.t, d.k - i));
  const auto den = static_cast<std::int64_t>(binomial(d.v - d.t, d.k - d.t));
  if (den == 0 || num % den != 0) throw DesignInvalid("lambda_i^t is not an integer; parameters are inconsistent");
  return num / den;
}

TDesign catalog(const std::string& name) {
  if (name == "fano-7-3-1") {
    return make_design(7, 3, 2, 1, {{1, 2, 7}, {1, 4, 5}, {1, 3, 6}, {4, 6, 7}, {2, 5, 6}, {3, 5, 7}, {2, 3, 4}});
  }
  if (name == "sqs-8-4-1") {
    return make_design(8, 4, 3, 1,
                       {{1, 2, 5, 6}, {3, 4, 7, 8}, {2, 4, 6, 8}, {1, 3, 5, 7}, {1, 4, 5, 8}, {2, 3, 6, 7},
                        {1, 2, 3, 4}, {5, 6, 7, 8}, {1, 2, 7, 8}, {3, 4, 5, 6}, {1, 3, 6, 8}, {2, 4, 5, 7},
                        {1, 4, 6, 7}, {2, 3, 5, 8}});
  }
  throw UnknownDesign("'" + name + "' (known: fano-7-3-1, sqs-8-4-1)");
}

std::vector<std::string> catalog_names() { return {"fano-7-3-1", "sqs-8-4-1"}; }

TDesign parse_design(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  int v = 0, k = 0, t = 0, lambda = 0;
  std::vector<Subset> blocks;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<long> nums;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long x = 0;
      try {
        x = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError("line " + std::to_string(lineno) + ": not an integer: '" + tok + "'");
      nums.push_back(x);
    }
    if (!have_header) {
      if (nums.size() != 4) throw ParseError("line " + std::to_string(lineno) + ": header must be 'v k t lambda'");
      v = static_cast<int>(nums[0]);
      k = static_cast<int>(nums[1]);
      t = static_cast<int>(nums[2]);
      lambda = static_cast<int>(nums[3]);
      if (v < 1 || k < 1 || t < 0 || lambda < 1 || k > v || t > k) {
        throw ParseError("line " + std::to_string(lineno) + ": inconsistent design parameters");
      }
      have_header = true;
      continue;
    }
    if (static_cast<int>(nums.size()) != k) {
      throw ParseError("line " + std::to_string(lineno) + ": block needs " + std::to_string(k) + " points");
    }
    Subset b;
    for (long x : nums) {
      if (x < 1 || x > v) throw ParseError("line " + std::to_string(lineno) + ": point " + std::to_string(x) +
                                           " outside [1, " + std::to_string(v) + "]");
      b.push_back(static_cast<int>(x));
    }
    blocks.push_back(std::move(b));
  }
  if (!have_header) throw ParseError("missing header line");
  return make_design(v, k, t, lambda, std::move(blocks));
}

std::string format_design(const TDesign& d) {
  std::ostringstream out;
  out << d.v << ' ' << d.k << ' ' << d.t << ' ' << d.lambda << '\n';
  for (const auto& b : d.blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
    out << '\n';
  }
  return out.str();
}

TDesign load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read design file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_design(buf.str());
}

TDesign resolve_design(const std::string& name_or_path) {
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return catalog(name_or_path);
  if (std::filesystem::exists(name_or_path)) return load_design(name_or_path);
  throw UnknownDesign("'" + name_or_path + "' is neither a catalog name nor a readable file");
}

}  // namespace hpcc
