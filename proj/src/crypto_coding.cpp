#include "hpcc/crypto_coding.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "hpcc/combinatorics.hpp"
#include "hpcc/errors.hpp"

namespace hpcc {

namespace {

/// out[r] = sum_j M[r][j] * in[j], symbol-wise.
std::vector<Symbols> combine(const gf::Field& f, const gf::Matrix& M, const std::vector<Symbols>& in, int len) {
  std::vector<Symbols> out(M.rows(), Symbols(len, 0));
  for (std::size_t r = 0; r < M.rows(); ++r) {
    for (std::size_t j = 0; j < M.cols(); ++j) f.axpy(out[r], in[j], M.at(r, j));
  }
  return out;
}

}  // namespace

std::uint32_t required_field_order(int n, int F) { return static_cast<std::uint32_t>(F + n); }

SharingSpec make_sharing_spec(int m, int n, int F, const gf::Field& field, int part_len) {
  if (m < 0 || n <= m || F < n) {
    throw InvalidParameters("need F >= n > m >= 0, got m=" + std::to_string(m) + " n=" + std::to_string(n) +
                            " F=" + std::to_string(F));
  }
  if (part_len < 1) throw InvalidParameters("part_len must be positive");
  const std::uint32_t need = required_field_order(n, F);
  if (field.order() < need) {
    throw FieldTooSmall("q=" + std::to_string(field.order()) + " but the code needs q >= " + std::to_string(need));
  }

  std::vector<gf::Element> xs, ys;
  for (int i = 0; i < n; ++i) xs.push_back(static_cast<gf::Element>(i));
  for (int i = 0; i < n; ++i) ys.push_back(static_cast<gf::Element>(n + i));
  for (int i = 0; i < F - n; ++i) xs.push_back(static_cast<gf::Element>(2 * n + i));

  gf::Matrix encoding = gf::cauchy_matrix(field, xs, ys);
  std::vector<std::size_t> top(n), rest(F - n);
  std::iota(top.begin(), top.end(), 0);
  std::iota(rest.begin(), rest.end(), n);
  gf::Matrix A = encoding.select_rows(top);

  gf::Matrix Gt(F, n);
  for (int i = 0; i < n; ++i) Gt.at(i, i) = 1;
  if (F > n) {
    const gf::Matrix parity = gf::multiply(field, encoding.select_rows(rest), gf::inverse(field, A));
    for (int r = 0; r < F - n; ++r) {
      for (int c = 0; c < n; ++c) Gt.at(n + r, c) = parity.at(r, c);
    }
  }
  return SharingSpec{m, n, F, part_len, field, std::move(A), Gt.transpose(), std::move(encoding)};
}

Symbols random_symbols(const gf::Field& f, int len, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, f.order() - 1);
  Symbols s(len);
  for (auto& x : s) x = static_cast<gf::Element>(dist(rng));
  return s;
}

FileVector random_file(const SharingSpec& spec, int index, std::mt19937_64& rng) {
  FileVector f{index, {}};
  for (int h = 0; h < spec.num_parts(); ++h) f.parts.push_back(random_symbols(spec.field, spec.part_len, rng));
  return f;
}

std::vector<Symbols> share_file(const SharingSpec& spec, const FileVector& file, const std::vector<Symbols>& keys) {
  if (static_cast<int>(file.parts.size()) != spec.num_parts() || static_cast<int>(keys.size()) != spec.m) {
    throw DimensionMismatch("sharing needs " + std::to_string(spec.num_parts()) + " parts and " +
                            std::to_string(spec.m) + " keys");
  }
  std::vector<Symbols> stack = file.parts;
  stack.insert(stack.end(), keys.begin(), keys.end());
  for (const auto& s : stack) {
    if (static_cast<int>(s.size()) != spec.part_len) throw DimensionMismatch("symbol run of the wrong length");
  }
  return combine(spec.field, spec.A, stack, spec.part_len);
}

std::vector<CodedShare> mds_extend(const SharingSpec& spec, int file_index, const std::vector<Symbols>& shares) {
  if (static_cast<int>(shares.size()) != spec.n) throw DimensionMismatch("expected n shares");
  const auto payloads = combine(spec.field, spec.G.transpose(), shares, spec.part_len);
  std::vector<CodedShare> out;
  out.reserve(spec.F);
  for (int f = 0; f < spec.F; ++f) out.push_back({file_index, f + 1, payloads[f]});
  return out;
}

Reconstruction reconstruct_from_shares(const SharingSpec& spec, int file_index, const std::vector<Symbols>& shares) {
  if (static_cast<int>(shares.size()) != spec.n) throw DimensionMismatch("expected n shares");
  const auto stack = combine(spec.field, gf::inverse(spec.field, spec.A), shares, spec.part_len);
  Reconstruction out;
  out.file.index = file_index;
  out.file.parts.assign(stack.begin(), stack.begin() + spec.num_parts());
  out.keys.assign(stack.begin() + spec.num_parts(), stack.end());
  return out;
}

Reconstruction reconstruct_file(const SharingSpec& spec, const std::vector<CodedShare>& coded) {
  std::set<int> rows;
  std::vector<const CodedShare*> picked;
  for (const auto& c : coded) {
    if (c.row < 1 || c.row > spec.F) throw DimensionMismatch("coded share row out of range");
    if (static_cast<int>(picked.size()) < spec.n && rows.insert(c.row).second) picked.push_back(&c);
  }
  if (static_cast<int>(picked.size()) < spec.n) {
    throw InsufficientShares("have " + std::to_string(picked.size()) + " distinct coded shares, need " +
                             std::to_string(spec.n));
  }
  std::vector<std::size_t> cols;
  std::vector<Symbols> payloads;
  for (const auto* c : picked) {
    cols.push_back(static_cast<std::size_t>(c->row - 1));
    payloads.push_back(c->payload);
  }
  gf::Matrix sub = spec.G.select_cols(cols).transpose();
  gf::Matrix inv;
  try {
    inv = gf::inverse(spec.field, sub);
  } catch (const Underdetermined&) {
    throw SingularSelection("selected columns of G are dependent");
  }
  const auto shares = combine(spec.field, inv, payloads, spec.part_len);
  return reconstruct_from_shares(spec, picked.front()->file, shares);
}

bool verify_mds(const SharingSpec& spec, std::uint64_t exhaustive_limit, int samples, std::uint64_t seed) {
  auto check = [&](const std::vector<std::size_t>& cols) {
    return gf::rank(spec.field, spec.G.select_cols(cols)) == static_cast<std::size_t>(spec.n);
  };
  if (binomial(spec.F, spec.n) <= exhaustive_limit) {
    for (const Subset& s : k_subsets(spec.F, spec.n)) {
      std::vector<std::size_t> cols(s.begin(), s.end());
      for (auto& c : cols) --c;
      if (!check(cols)) return false;
    }
    return true;
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> all(spec.F);
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < samples; ++i) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> cols(all.begin(), all.begin() + spec.n);
    if (!check(cols)) return false;
  }
  return true;
}

}  // namespace hpcc
