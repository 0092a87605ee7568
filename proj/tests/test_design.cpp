#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "hpcc/combinatorics.hpp"
#include "hpcc/design.hpp"
#include "hpcc/errors.hpp"

using namespace hpcc;

namespace {

// Blocks whose intersection with T is exactly I.
int meeting_exactly(const TDesign& d, const Subset& T, const Subset& I) {
  int n = 0;
  for (auto b : d.blocks) {
    std::sort(b.begin(), b.end());
    if (set_intersection(b, T) == I) ++n;
  }
  return n;
}

int containing(const TDesign& d, const Subset& S) {
  int n = 0;
  for (auto b : d.blocks) {
    std::sort(b.begin(), b.end());
    if (std::includes(b.begin(), b.end(), S.begin(), S.end())) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("catalog designs are designs by direct counting") {
  for (const auto& name : catalog_names()) {
    const TDesign d = catalog(name);
    for (const Subset& T : k_subsets(d.v, d.t)) CHECK(containing(d, T) == d.lambda);
  }
  CHECK(catalog("fano-7-3-1").blocks.size() == 7);
  CHECK(catalog("sqs-8-4-1").blocks.size() == 14);
  CHECK_THROWS_AS(catalog("nope"), UnknownDesign);
}

TEST_CASE("lambda_s counts blocks through an s-set") {
  for (const auto& name : catalog_names()) {
    const TDesign d = catalog(name);
    for (int s = 0; s <= d.t; ++s) {
      for (const Subset& S : k_subsets(d.v, s)) REQUIRE(containing(d, S) == lambda_s(d, s));
    }
  }
  CHECK(lambda_s(catalog("sqs-8-4-1"), 1) == 7);
  CHECK(lambda_s(catalog("fano-7-3-1"), 1) == 3);
  CHECK_THROWS_AS(lambda_s(catalog("fano-7-3-1"), 3), OutOfRange);
}

TEST_CASE("lambda_i^t counts blocks meeting a t-set in a given i-set") {
  for (const auto& name : catalog_names()) {
    const TDesign d = catalog(name);
    for (int i = 0; i <= d.t; ++i) {
      for (const Subset& T : k_subsets(d.v, d.t)) {
        for (const Subset& I : k_subsets_of(T, i)) REQUIRE(meeting_exactly(d, T, I) == lambda_i_t(d, i));
      }
    }
  }
  CHECK(lambda_i_t(catalog("fano-7-3-1"), 1) == 2);
  CHECK(lambda_i_t(catalog("sqs-8-4-1"), 1) == 2);
  CHECK(lambda_i_t(catalog("sqs-8-4-1"), 2) == 2);
  CHECK_THROWS_AS(lambda_i_t(catalog("sqs-8-4-1"), 4), OutOfRange);
}

TEST_CASE("verification finds a counterexample pair") {
  auto blocks = catalog("fano-7-3-1").blocks;
  blocks[0] = {1, 2, 3};
  const DesignCheck c = verify_design(7, blocks, 2, 1);
  CHECK_FALSE(c.ok);
  REQUIRE(c.counterexample.size() == 2);
  CHECK(containing(TDesign{7, 3, 2, 1, blocks}, c.counterexample) == c.found);
  CHECK(c.found != 1);
  CHECK_THROWS_AS(make_design(7, 3, 2, 1, blocks), DesignInvalid);
  CHECK_FALSE(verify_design(7, {{1, 2, 3}, {1, 2, 3}}, 2, 1).ok);
}

TEST_CASE("design text format") {
  const TDesign d = catalog("sqs-8-4-1");
  const TDesign back = parse_design(format_design(d));
  CHECK(back.blocks == d.blocks);
  CHECK(load_design(HPCC_DATA_DIR "/fano-7-3-1.design").blocks == catalog("fano-7-3-1").blocks);
  CHECK(resolve_design(HPCC_DATA_DIR "/sqs-8-4-1.design").blocks == d.blocks);
  CHECK(resolve_design("fano-7-3-1").v == 7);
  CHECK_THROWS_AS(resolve_design("/no/such/file"), UnknownDesign);
  CHECK_THROWS_AS(parse_design("7 3 2\n"), ParseError);
  CHECK_THROWS_AS(parse_design("7 3 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_design("7 3 2 1\n1 2 9\n"), ParseError);
  CHECK_THROWS_AS(parse_design("7 3 2 1\n1 2 x\n"), ParseError);
  CHECK_THROWS_AS(parse_design("7 3 2 1\n1 2 3\n"), DesignInvalid);
}
