#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpcc/combinatorics.hpp"

namespace hpcc {

/// A t-(v, k, lambda) design on the points 1..v. Each block is stored
/// sorted; the order of the block list is kept exactly as given because
/// witness selection counts blocks in list order.
struct TDesign {
  int v = 0;
  int k = 0;
  int t = 0;
  int lambda = 0;
  std::vector<Subset> blocks;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  bool operator==(const TDesign&) const = default;
};

struct DesignCheck {
  bool ok = true;
  /// A t-subset covered by the wrong number of blocks, or empty when the
  /// failure is structural (see message).
  Subset counterexample;
  int found = 0;
  std::string message;
};

/// Structural checks (block sizes, range, repeats) then an exhaustive pass
/// over all C(v, t) subsets.
DesignCheck verify_design(int v, const std::vector<Subset>& blocks, int t, int lambda);

/// Builds and verifies; throws DesignInvalid with the counterexample.
TDesign make_design(int v, int k, int t, int lambda, std::vector<Subset> blocks);

/// Blocks through any fixed s-subset: lambda * C(v-s, t-s) / C(k-s, t-s).
std::int64_t lambda_s(const TDesign& d, int s);

/// Blocks containing a fixed i-subset Y of a t-subset T and missing T \ Y:
/// lambda * C(v-t, k-i) / C(v-t, k-t).
std::int64_t lambda_i_t(const TDesign& d, int i);

/// Built-in designs: "fano-7-3-1" and "sqs-8-4-1". Throws UnknownDesign.
TDesign catalog(const std::string& name);
std::vector<std::string> catalog_names();

/// Design file: first line "v k t lambda", then one block per line as
/// 1-based points; lines starting with '#' are comments.
TDesign parse_design(const std::string& text);
std::string format_design(const TDesign& d);
TDesign load_design(const std::string& path);

/// Catalog name or a path to a design file.
TDesign resolve_design(const std::string& name_or_path);

}  // namespace hpcc
