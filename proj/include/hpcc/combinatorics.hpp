#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hpcc {

/// Sorted list of 1-based points (users, design points, positions in [t]).
using Subset = std::vector<int>;

std::uint64_t binomial(std::int64_t n, std::int64_t k);

/// All k-subsets of {1..n} in lexicographic order.
std::vector<Subset> k_subsets(int n, int k);

/// All k-subsets of `items` (itself sorted), lexicographic by position.
std::vector<Subset> k_subsets_of(const Subset& items, int k);

/// 0-based lexicographic rank of a k-subset of {1..n}.
std::uint64_t subset_rank(const Subset& s, int n);

bool contains(const Subset& s, int x);
Subset set_union(const Subset& a, const Subset& b);
Subset set_difference(const Subset& a, const Subset& b);
Subset set_intersection(const Subset& a, const Subset& b);

/// "{1,4,5}"
std::string format_subset(const Subset& s);
/// "145", the compact form used for small labels.
std::string format_compact(const Subset& s);

}  // namespace hpcc
