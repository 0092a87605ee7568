#include "hpcc/analysis.hpp"

#include <algorithm>

#include "hpcc/combinatorics.hpp"
#include "hpcc/errors.hpp"
#include "hpcc/pda.hpp"

namespace hpcc {

namespace {

Rational C(int n, int k) { return Rational(static_cast<std::int64_t>(binomial(n, k))); }

}  // namespace

RatePoint thm1_point(int K, int Kp, int N, int t) {
  if (Kp < 1 || Kp > K || N < 1) throw InvalidParameters("need 1 <= K' <= K and N >= 1");
  if (t < 0 || t > Kp - 1) throw InvalidParameters("t=" + std::to_string(t) + " outside [0, K'-1]");
  const std::string param = "t=" + std::to_string(t);
  if (t == Kp - 1) return {N * C(K - 1, Kp - 2), Rational(1), "man", param};
  const Rational Z = C(K - 1, t - 1);
  const Rational Fp = C(Kp, t), Zp = C(Kp - 1, t - 1), S = C(Kp, t + 1);
  return {(N * Z + C(K - 1, t)) / (Fp - Zp), S / (Fp - Zp), "man", param};
}

std::vector<RatePoint> thm1_points(int K, int Kp, int N) {
  std::vector<RatePoint> out;
  for (int t = 0; t <= Kp - 1; ++t) out.push_back(thm1_point(K, Kp, N, t));
  return out;
}

std::string format_multiplicities(const std::vector<int>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "-" : "") + std::to_string(a[i]);
  return s;
}

RatePoint thm2_point(const TDesign& d, int N, const std::vector<int>& a) {
  const int t = d.t;
  if (t < 2 || static_cast<int>(a.size()) != t - 1) {
    throw MultiplicityOutOfRange("expected " + std::to_string(t - 1) + " multiplicities");
  }
  bool any = false;
  for (int s = 1; s <= t - 1; ++s) {
    if (a[s - 1] < 0 || a[s - 1] > lambda_i_t(d, s)) {
      throw MultiplicityOutOfRange("a_" + std::to_string(s) + "=" + std::to_string(a[s - 1]) + " exceeds lambda_" +
                                   std::to_string(s) + "^t=" + std::to_string(lambda_i_t(d, s)));
    }
    any = any || a[s - 1] > 0;
  }
  if (!any) throw MultiplicityOutOfRange("at least one a_s must be positive");
  Rational Fp = 0, Zp = 0, S = 0, keys = 0;
  for (int s = 1; s <= t - 1; ++s) {
    Fp += a[s - 1] * C(t, s);
    Zp += a[s - 1] * C(t - 1, s - 1);
    S += a[s - 1] * C(t, s + 1);
    if (s <= t - 2) keys += a[s - 1] * C(d.v - 1, s);
  }
  const Rational Z(lambda_s(d, 1));
  return {(N * Z + keys) / (Fp - Zp), S / (Fp - Zp), "tdesign", "a=" + format_multiplicities(a)};
}

std::vector<RatePoint> thm2_points(const TDesign& d, int N, const std::vector<std::vector<int>>& as) {
  std::vector<RatePoint> out;
  for (const auto& a : as) out.push_back(thm2_point(d, N, a));
  return out;
}

std::vector<std::vector<int>> admissible_multiplicities(const TDesign& d) {
  std::vector<std::vector<int>> out;
  if (d.t < 2) return out;
  std::vector<int> caps;
  for (int s = 1; s <= d.t - 1; ++s) caps.push_back(static_cast<int>(lambda_i_t(d, s)));
  std::vector<int> a(caps.size(), 0);
  while (true) {
    if (std::any_of(a.begin(), a.end(), [](int x) { return x > 0; })) out.push_back(a);
    int i = static_cast<int>(a.size()) - 1;
    while (i >= 0 && a[i] == caps[i]) a[i--] = 0;
    if (i < 0) break;
    ++a[i];
  }
  return out;
}

namespace {

/// Sign of the turn o -> a -> b; negative for a clockwise turn.
Rational cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
  return (a.M - o.M) * (b.R - o.R) - (a.R - o.R) * (b.M - o.M);
}

}  // namespace

Curve envelope(std::string scheme, std::vector<RatePoint> points) {
  Curve c{std::move(scheme), points, {}};
  std::sort(points.begin(), points.end(), [](const RatePoint& x, const RatePoint& y) {
    return x.M != y.M ? x.M < y.M : x.R < y.R;
  });
  for (const auto& p : points) {
    if (!c.hull.empty() && c.hull.back().M == p.M) continue;
    while (c.hull.size() >= 2 && cross(c.hull[c.hull.size() - 2], c.hull.back(), p) <= 0) c.hull.pop_back();
    c.hull.push_back(p);
  }
  auto lowest = std::min_element(c.hull.begin(), c.hull.end(),
                                 [](const RatePoint& x, const RatePoint& y) { return x.R < y.R; });
  c.hull.erase(lowest + 1, c.hull.end());
  return c;
}

std::optional<Rational> Curve::value_at(const Rational& M) const {
  if (hull.empty() || M < min_M() || M > max_M()) return std::nullopt;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[i + 1];
    if (M <= b.M) return a.R + (b.R - a.R) * (M - a.M) / (b.M - a.M);
  }
  return hull.back().R;
}

Curve baseline_curve(int K, int N) {
  std::vector<RatePoint> pts;
  for (int t = 0; t <= K - 1; ++t) pts.push_back(baseline_point(K, t, N));
  return envelope("baseline", std::move(pts));
}

Rational lower_bound(int N, int Kp, const Rational& M) {
  if (N < 1 || Kp < 1 || M < 1 || M > Rational(N) * (Kp - 1)) {
    throw OutOfRange("need 1 <= M <= N(K'-1)");
  }
  Rational best(1);
  const int top = std::min(N / 2, Kp);
  for (int l = 2; l <= top; ++l) {
    const int q = N / l;
    const Rational v = (Rational(l * q - 1) - (l - 1) * M) / (q - 1);
    best = std::max(best, v);
  }
  return best;
}

std::vector<Interval> crossover(const Curve& a, const Curve& b) {
  const Rational lo = std::max(a.min_M(), b.min_M());
  const Rational hi = std::min(a.max_M(), b.max_M());
  if (lo > hi) throw DisjointDomains("curves " + a.scheme + " and " + b.scheme + " share no memory range");

  std::vector<Rational> xs{lo, hi};
  for (const auto* c : {&a, &b}) {
    for (const auto& p : c->hull) {
      if (p.M > lo && p.M < hi) xs.push_back(p.M);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto diff = [&](const Rational& M) { return *a.value_at(M) - *b.value_at(M); };
  // Pieces of [lo, hi] where a < b, before merging.
  std::vector<std::pair<Rational, Rational>> pieces;
  if (xs.size() == 1) {
    if (diff(lo) < 0) pieces.push_back({lo, lo});
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rational x0 = xs[i], x1 = xs[i + 1];
    const Rational d0 = diff(x0), d1 = diff(x1);
    if (d0 >= 0 && d1 >= 0) continue;
    if (d0 < 0 && d1 < 0) {
      pieces.push_back({x0, x1});
      continue;
    }
    const Rational root = x0 + (x1 - x0) * d0 / (d0 - d1);
    if (d0 < 0) {
      pieces.push_back({x0, root});
    } else {
      pieces.push_back({root, x1});
    }
  }
  std::vector<Interval> out;
  for (const auto& [from, to] : pieces) {
    if (!out.empty() && out.back().to_M == from) {
      out.back().to_M = to;
      continue;
    }
    out.push_back({from, Rational(0), to, Rational(0)});
  }
  for (auto& iv : out) {
    iv.from_R = *a.value_at(iv.from_M);
    iv.to_R = *a.value_at(iv.to_M);
    iv.from_domain_edge = iv.from_M == lo && a.min_M() != b.min_M();
    iv.to_domain_edge = iv.to_M == hi && a.max_M() != b.max_M();
  }
  return out;
}

void write_points_csv(std::ostream& out, const std::vector<RatePoint>& points) {
  out << "scheme,param,M,R\n";
  for (const auto& p : points) {
    out << p.scheme << ',' << p.param << ',' << format_decimal(p.M, 6) << ',' << format_decimal(p.R, 6) << '\n';
  }
}

void write_envelope_csv(std::ostream& out, const std::vector<Curve>& curves) {
  out << "scheme,M,R\n";
  for (const auto& c : curves) {
    for (const auto& p : c.hull) out << c.scheme << ',' << format_decimal(p.M, 6) << ',' << format_decimal(p.R, 6) << '\n';
  }
}

void write_crossover_csv(std::ostream& out, const std::string& a, const std::string& b,
                         const std::vector<Interval>& intervals) {
  for (const auto& iv : intervals) {
    out << a << ',' << b << ',' << format_decimal(iv.from_M, 2) << ',' << format_decimal(iv.from_R, 2) << ','
        << format_decimal(iv.to_M, 2) << ',' << format_decimal(iv.to_R, 2) << '\n';
  }
}

}  // namespace hpcc
