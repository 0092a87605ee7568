#include <doctest.h>

#include <random>

#include "hpcc/combinatorics.hpp"
#include "hpcc/crypto_coding.hpp"
#include "hpcc/errors.hpp"

using namespace hpcc;

namespace {

// Rows of the composite encoding seen by an observer of `rows` coded
// shares; leakage about the parts is rank(all) - rank(key columns only).
int share_leakage(const SharingSpec& spec, const std::vector<std::size_t>& rows) {
  const gf::Matrix view = spec.encoding.select_rows(rows);
  std::vector<std::size_t> keys;
  for (int j = spec.num_parts(); j < spec.n; ++j) keys.push_back(static_cast<std::size_t>(j));
  return static_cast<int>(gf::rank(spec.field, view) - gf::rank(spec.field, view.select_cols(keys)));
}

}  // namespace

TEST_CASE("the encoding is G^T A and G is systematic") {
  const auto spec = make_sharing_spec(5, 8, 15, gf::Field::gf256(), 1);
  CHECK(gf::multiply(spec.field, spec.G.transpose(), spec.A) == spec.encoding);
  std::vector<std::size_t> first(8);
  for (std::size_t i = 0; i < 8; ++i) first[i] = i;
  CHECK(spec.G.select_cols(first) == gf::Matrix::identity(8));
  CHECK(spec.A.at(1, 2) == spec.field.inv(1 ^ (8 + 2)));
  CHECK(verify_mds(spec));
}

TEST_CASE("m coded shares reveal nothing, m + 1 do") {
  const auto spec = make_sharing_spec(3, 5, 9, gf::Field::gf256(), 1);
  for (const Subset& s : k_subsets(9, 3)) {
    std::vector<std::size_t> rows;
    for (int x : s) rows.push_back(static_cast<std::size_t>(x - 1));
    REQUIRE(share_leakage(spec, rows) == 0);
  }
  CHECK(share_leakage(spec, {0, 1, 2, 3}) == 1);
  CHECK(share_leakage(spec, {0, 1, 2, 3, 4}) == 2);
}

TEST_CASE("share, extend and reconstruct round trip") {
  const gf::Field f = gf::Field::gf256();
  const auto spec = make_sharing_spec(4, 7, 12, f, 6);
  std::mt19937_64 rng(5);
  const FileVector file = random_file(spec, 3, rng);
  std::vector<Symbols> keys;
  for (int i = 0; i < 4; ++i) keys.push_back(random_symbols(f, 6, rng));
  const auto shares = share_file(spec, file, keys);
  CHECK(reconstruct_from_shares(spec, 3, shares).file == file);
  const auto coded = mds_extend(spec, 3, shares);
  REQUIRE(coded.size() == 12);
  for (int i = 0; i < 7; ++i) CHECK(coded[i].payload == shares[i]);
  for (const Subset& s : k_subsets(12, 7)) {
    std::vector<CodedShare> pick;
    for (int x : s) pick.push_back(coded[x - 1]);
    const auto rec = reconstruct_file(spec, pick);
    REQUIRE(rec.file == file);
    REQUIRE(rec.keys == keys);
  }
}

TEST_CASE("reconstruction input checks") {
  const gf::Field f = gf::Field::gf256();
  const auto spec = make_sharing_spec(2, 4, 6, f, 1);
  std::mt19937_64 rng(1);
  const FileVector file = random_file(spec, 1, rng);
  const auto coded = mds_extend(spec, 1, share_file(spec, file, {random_symbols(f, 1, rng), random_symbols(f, 1, rng)}));
  std::vector<CodedShare> few(coded.begin(), coded.begin() + 3);
  few.push_back(coded[0]);
  CHECK_THROWS_AS(reconstruct_file(spec, few), InsufficientShares);
  CHECK_THROWS_AS(share_file(spec, file, {}), DimensionMismatch);
  CodedShare bad = coded[0];
  bad.row = 7;
  CHECK_THROWS_AS(reconstruct_file(spec, {bad}), DimensionMismatch);
}

TEST_CASE("parameter and field size checks") {
  const gf::Field small = gf::Field::with_bits(4);
  CHECK(required_field_order(8, 15) == 23);
  CHECK_THROWS_AS(make_sharing_spec(5, 8, 15, small, 1), FieldTooSmall);
  CHECK_NOTHROW(make_sharing_spec(2, 4, 12, small, 1));
  CHECK_THROWS_AS(make_sharing_spec(2, 2, 4, small, 1), InvalidParameters);
  CHECK_THROWS_AS(make_sharing_spec(1, 4, 3, small, 1), InvalidParameters);
  CHECK_THROWS_AS(make_sharing_spec(1, 2, 3, small, 0), InvalidParameters);
  // m = 0 is plain MDS coding.
  const auto plain = make_sharing_spec(0, 3, 5, small, 1);
  CHECK(plain.num_parts() == 3);
  CHECK(verify_mds(plain));
}

TEST_CASE("sampled MDS check on a large code") {
  const auto spec = make_sharing_spec(6, 12, 40, gf::Field::gf256(), 1);
  CHECK(verify_mds(spec, 1000, 300, 9));
}
