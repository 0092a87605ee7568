#include <doctest.h>

#include <sstream>

#include "hpcc/analysis.hpp"
#include "hpcc/combinatorics.hpp"
#include "hpcc/engine.hpp"
#include "hpcc/errors.hpp"
#include "hpcc/pda.hpp"

using namespace hpcc;

namespace {

Rational C(int n, int k) { return Rational(static_cast<std::int64_t>(binomial(n, k))); }

// Direct evaluation of the MAN-HpPDA rate pair from the array sizes.
RatePoint man_by_sizes(int K, int Kp, int N, int t) {
  const Rational Z = C(K - 1, t - 1), Fp = C(Kp, t), Zp = C(Kp - 1, t - 1), S = C(Kp, t + 1);
  const Rational parts = Fp - Zp;
  const Rational keys = t <= Kp - 2 ? C(K - 1, t) : Rational(0);
  return {Rational(N) * Z / parts + keys / parts, S / parts, "man", ""};
}

// The hull is convex, passes through no point twice and stays at or below
// every input point inside its range.
void check_hull(const Curve& c) {
  REQUIRE_FALSE(c.hull.empty());
  for (std::size_t i = 0; i + 1 < c.hull.size(); ++i) CHECK(c.hull[i].M < c.hull[i + 1].M);
  for (std::size_t i = 0; i + 2 < c.hull.size(); ++i) {
    const auto& a = c.hull[i];
    const auto& b = c.hull[i + 1];
    const auto& d = c.hull[i + 2];
    CHECK((b.R - a.R) / (b.M - a.M) < (d.R - b.R) / (d.M - b.M));
  }
  for (const auto& p : c.points) {
    if (p.M < c.min_M() || p.M > c.max_M()) continue;
    CHECK(*c.value_at(p.M) <= p.R);
  }
}

}  // namespace

TEST_CASE("MAN closed form against the array sizes") {
  for (auto [K, Kp] : std::vector<std::pair<int, int>>{{6, 4}, {8, 3}, {12, 3}, {7, 7}}) {
    const auto pts = thm1_points(K, Kp, K);
    REQUIRE(pts.size() == static_cast<std::size_t>(Kp));
    for (int t = 0; t < Kp; ++t) {
      const RatePoint ref = man_by_sizes(K, Kp, K, t);
      CHECK(pts[t].M == ref.M);
      CHECK(pts[t].R == ref.R);
    }
  }
  const RatePoint ex1 = thm1_point(6, 4, 6, 2);
  CHECK(ex1.M == Rational(40, 3));
  CHECK(ex1.R == Rational(4, 3));
  const RatePoint top = thm1_point(8, 3, 8, 2);
  CHECK(top.M == Rational(8 * 7));
  CHECK(top.R == Rational(1));
  CHECK_THROWS_AS(thm1_point(8, 3, 8, 3), InvalidParameters);
  CHECK_THROWS_AS(thm1_points(3, 4, 3), InvalidParameters);
}

TEST_CASE("design closed form") {
  const TDesign sqs = catalog("sqs-8-4-1");
  const RatePoint p = thm2_point(sqs, 8, {1, 2});
  CHECK(p.M == Rational(63, 4));
  CHECK(p.R == Rational(5, 4));
  CHECK(p.param == "a=1-2");
  const RatePoint fano = thm2_point(catalog("fano-7-3-1"), 7, {1});
  CHECK(fano.M == Rational(21));
  CHECK(fano.R == Rational(1));
  CHECK_THROWS_AS(thm2_point(sqs, 8, {3, 0}), MultiplicityOutOfRange);

  const auto as = admissible_multiplicities(sqs);
  // lambda_1^3 = lambda_2^3 = 2 for the quadruple system.
  CHECK(as.size() == 3u * 3u - 1u);
  CHECK(as.front() == std::vector<int>{0, 1});
  CHECK(as.back() == std::vector<int>{2, 2});
  CHECK(admissible_multiplicities(catalog("fano-7-3-1")) == std::vector<std::vector<int>>{{1}, {2}});
  CHECK(format_multiplicities({1, 2}) == "1-2");
}

TEST_CASE("baseline points and curve") {
  const RatePoint b = baseline_point(8, 2, 8);
  CHECK(b.M == Rational(8 * 7, 21) + 1);
  CHECK(b.R == Rational(56, 21));
  const Curve c = baseline_curve(8, 8);
  CHECK(c.points.size() == 8u);
  check_hull(c);
  CHECK(c.min_M() == Rational(1));
}

TEST_CASE("envelope: hull of a hand-made set") {
  const std::vector<RatePoint> pts{{Rational(0), Rational(4), "x", "a"},
                                   {Rational(1), Rational(3), "x", "b"},
                                   {Rational(2), Rational(1), "x", "c"},
                                   {Rational(3), Rational(1, 2), "x", "d"},
                                   {Rational(4), Rational(1), "x", "e"}};
  const Curve c = envelope("x", pts);
  std::vector<std::string> params;
  for (const auto& p : c.hull) params.push_back(p.param);
  // b sits above the chord a-c; e is past the minimum.
  CHECK(params == std::vector<std::string>{"a", "c", "d"});
  CHECK(*c.value_at(Rational(1)) == Rational(5, 2));
  CHECK_FALSE(c.value_at(Rational(7, 2)).has_value());
  check_hull(c);
  for (auto [K, Kp] : std::vector<std::pair<int, int>>{{8, 3}, {12, 3}, {6, 4}}) {
    check_hull(envelope("man", thm1_points(K, Kp, K)));
  }
}

TEST_CASE("crossovers on the two MAN systems") {
  const Curve man8 = envelope("man", thm1_points(8, 3, 8));
  const auto x8 = crossover(man8, baseline_curve(8, 8));
  REQUIRE_FALSE(x8.empty());
  CHECK(x8[0].from_M == Rational(1));
  CHECK(to_double(x8[0].to_M) == doctest::Approx(11.9).epsilon(0.05 / 11.9));
  CHECK(to_double(x8[0].to_R) == doctest::Approx(1.45).epsilon(0.01 / 1.45));

  const Curve man12 = envelope("man", thm1_points(12, 3, 12));
  const auto x12 = crossover(man12, baseline_curve(12, 12));
  REQUIRE_FALSE(x12.empty());
  CHECK(x12[0].from_M == Rational(1));
  CHECK(to_double(x12[0].to_R) == doctest::Approx(1.47).epsilon(0.01 / 1.47));

  const TDesign sqs = catalog("sqs-8-4-1");
  const Curve design = envelope("tdesign", thm2_points(sqs, 8, admissible_multiplicities(sqs)));
  const auto xd = crossover(design, baseline_curve(8, 8));
  REQUIRE_FALSE(xd.empty());
  CHECK(xd[0].from_domain_edge);
}

TEST_CASE("crossover edge cases") {
  const Curve a = envelope("a", thm1_points(8, 3, 8));
  CHECK(crossover(a, a).empty());
  const Curve lo = envelope("lo", {{Rational(0), Rational(2), "lo", ""}, {Rational(1), Rational(1), "lo", ""}});
  const Curve hi = envelope("hi", {{Rational(5), Rational(2), "hi", ""}, {Rational(6), Rational(1), "hi", ""}});
  CHECK_THROWS_AS(crossover(lo, hi), DisjointDomains);
  // Two lines crossing at M = 1.
  const Curve p = envelope("p", {{Rational(0), Rational(2), "p", ""}, {Rational(2), Rational(0), "p", ""}});
  const Curve q = envelope("q", {{Rational(0), Rational(3, 2), "q", ""}, {Rational(2), Rational(1, 2), "q", ""}});
  const auto x = crossover(p, q);
  REQUIRE(x.size() == 1u);
  CHECK(x[0].from_M == Rational(1));
  CHECK(x[0].to_M == Rational(2));
  CHECK_FALSE(x[0].from_domain_edge);
}

TEST_CASE("lower bound") {
  CHECK(lower_bound(8, 3, Rational(1)) == Rational(3));
  CHECK_THROWS_AS(lower_bound(8, 3, Rational(0)), OutOfRange);
  CHECK_THROWS_AS(lower_bound(8, 3, Rational(17)), OutOfRange);
  Rational prev = lower_bound(12, 3, Rational(1));
  for (int i = 2; i <= 24; ++i) {
    const Rational cur = lower_bound(12, 3, Rational(i));
    CHECK(cur <= prev);
    prev = cur;
  }
  for (auto [K, Kp] : std::vector<std::pair<int, int>>{{8, 3}, {12, 3}}) {
    const Curve man = envelope("man", thm1_points(K, Kp, K));
    for (int i = 0; i <= 40; ++i) {
      const Rational M = man.min_M() + (man.max_M() - man.min_M()) * Rational(i, 40);
      if (M < 1 || M > Rational(K * (Kp - 1))) continue;
      CHECK(lower_bound(K, Kp, M) <= *man.value_at(M));
    }
  }
}

TEST_CASE("closed forms match the engine on small systems") {
  const gf::Field f = gf::Field::gf256();
  for (int t = 0; t < 3; ++t) {
    const auto rep = simulate(man_hppda(5, 3, t), 5, {1, 3, 4}, {5, 5, 2}, f, {1, 7, false, false});
    const RatePoint p = thm1_point(5, 3, 5, t);
    CHECK(rep.M == p.M);
    CHECK(rep.R == p.R);
  }
  const TDesign sqs = catalog("sqs-8-4-1");
  for (const auto& a : admissible_multiplicities(sqs)) {
    const auto rep = simulate(tdesign_hppda(sqs, a), 8, {1, 2, 3}, {1, 2, 3}, f, {1, 7, false, false});
    const RatePoint p = thm2_point(sqs, 8, a);
    CHECK(rep.M == p.M);
    CHECK(rep.R == p.R);
  }
}

TEST_CASE("csv writers") {
  std::ostringstream pts;
  write_points_csv(pts, {thm1_point(6, 4, 6, 2)});
  CHECK(pts.str() == "scheme,param,M,R\nman,t=2,13.333333,1.333333\n");
  std::ostringstream env;
  write_envelope_csv(env, {envelope("man", {thm1_point(6, 4, 6, 2)})});
  CHECK(env.str() == "scheme,M,R\nman,13.333333,1.333333\n");
  std::ostringstream x;
  write_crossover_csv(x, "man", "baseline", {{Rational(1), Rational(3), Rational(119, 10), Rational(29, 20)}});
  CHECK(x.str() == "man,baseline,1.00,3.00,11.90,1.45\n");
}
