#include "hpcc/combinatorics.hpp"

#include <algorithm>
#include <iterator>

namespace hpcc {

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::vector<Subset> k_subsets(int n, int k) {
  Subset all(n > 0 ? n : 0);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  return k_subsets_of(all, k);
}

std::vector<Subset> k_subsets_of(const Subset& items, int k) {
  std::vector<Subset> out;
  const int n = static_cast<int>(items.size());
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Subset s(k);
    for (int i = 0; i < k; ++i) s[i] = items[idx[i]];
    out.push_back(std::move(s));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::uint64_t subset_rank(const Subset& s, int n) {
  // Count subsets that precede s: at each position, those taking a smaller
  // element there.
  const int k = static_cast<int>(s.size());
  std::uint64_t r = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int x = prev + 1; x < s[i]; ++x) r += binomial(n - x, k - i - 1);
    prev = s[i];
  }
  return r;
}

bool contains(const Subset& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

Subset set_union(const Subset& a, const Subset& b) {
  Subset out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Subset set_difference(const Subset& a, const Subset& b) {
  Subset out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Subset set_intersection(const Subset& a, const Subset& b) {
  Subset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string format_subset(const Subset& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

std::string format_compact(const Subset& s) {
  bool small = std::all_of(s.begin(), s.end(), [](int x) { return x >= 0 && x <= 9; });
  if (!small) return format_subset(s);
  std::string out;
  for (int x : s) out += std::to_string(x);
  return out;
}

}  // namespace hpcc
