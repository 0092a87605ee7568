#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hpcc/gf.hpp"

namespace hpcc {

/// A run of part_len field symbols: one file part, share, coded share or key.
using Symbols = std::vector<gf::Element>;

/// File i split into n - m equal parts.
struct FileVector {
  int index = 0;
  std::vector<Symbols> parts;
  bool operator==(const FileVector&) const = default;
};

struct CodedShare {
  int file = 0;
  /// 1-based row of the code (a P row in the caching schemes).
  int row = 0;
  Symbols payload;
};

/// (m, n) ramp sharing followed by an (F, n) systematic MDS code.
///
/// shares = A * [parts; keys] with A an n x n Cauchy matrix, and
/// coded = G^T * shares with G = [I_n | parity]. The parity block is chosen
/// so that the composite map G^T A is itself an F x n Cauchy matrix whose
/// top n rows are A. Hence any m coded shares see an invertible m x m key
/// block and any n coded shares determine everything.
struct SharingSpec {
  int m = 0;
  int n = 0;
  int F = 0;
  int part_len = 1;
  gf::Field field;
  gf::Matrix A;
  gf::Matrix G;
  /// G^T A, F x n: coded share f = encoding.row(f) . [parts; keys].
  gf::Matrix encoding;

  int num_parts() const { return n - m; }
};

/// Requires F >= n > m >= 0 and q >= F + n (throws FieldTooSmall naming the
/// order needed, InvalidParameters otherwise). Evaluation points follow the
/// field's element order: A uses xs = 0..n-1, ys = n..2n-1 and the parity
/// rows continue the xs from 2n.
SharingSpec make_sharing_spec(int m, int n, int F, const gf::Field& field, int part_len);

/// Smallest field order an (n, F) code needs.
std::uint32_t required_field_order(int n, int F);

Symbols random_symbols(const gf::Field& f, int len, std::mt19937_64& rng);
FileVector random_file(const SharingSpec& spec, int index, std::mt19937_64& rng);

/// n shares of `file` using the m sharing keys. Throws DimensionMismatch.
std::vector<Symbols> share_file(const SharingSpec& spec, const FileVector& file, const std::vector<Symbols>& keys);

/// F coded shares; the first n equal the shares.
std::vector<CodedShare> mds_extend(const SharingSpec& spec, int file_index, const std::vector<Symbols>& shares);

struct Reconstruction {
  FileVector file;
  std::vector<Symbols> keys;
};

/// Recovers the parts and keys from any n coded shares with distinct rows
/// (extra ones are ignored). Throws InsufficientShares or SingularSelection.
Reconstruction reconstruct_file(const SharingSpec& spec, const std::vector<CodedShare>& coded);

/// Inverts A directly: the inverse of share_file.
Reconstruction reconstruct_from_shares(const SharingSpec& spec, int file_index, const std::vector<Symbols>& shares);

/// Every n-subset of G's columns invertible: exhaustive when C(F, n) is at
/// most `exhaustive_limit`, otherwise `samples` random subsets.
bool verify_mds(const SharingSpec& spec, std::uint64_t exhaustive_limit = 20000, int samples = 500,
                std::uint64_t seed = 0);

}  // namespace hpcc
