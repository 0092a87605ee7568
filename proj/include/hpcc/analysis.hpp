#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hpcc/design.hpp"
#include "hpcc/rate.hpp"

namespace hpcc {

/// Closed form for the MAN-HpPDA scheme at one t in [0, K'-1]. At
/// t = K'-1 no keys are needed and the point is (N C(K-1, K'-2), 1).
RatePoint thm1_point(int K, int Kp, int N, int t);

/// One point per t in [0, K'-1]. Throws InvalidParameters.
std::vector<RatePoint> thm1_points(int K, int Kp, int N);

/// Block-design scheme with multiplicities a_1..a_{t-1}, K = v, K' = t.
/// Throws MultiplicityOutOfRange.
RatePoint thm2_point(const TDesign& d, int N, const std::vector<int>& a);
std::vector<RatePoint> thm2_points(const TDesign& d, int N, const std::vector<std::vector<int>>& as);

/// Every a with 0 <= a_s <= lambda_s^t, not all zero, in lexicographic
/// order.
std::vector<std::vector<int>> admissible_multiplicities(const TDesign& d);

/// "1-2" for a = (1, 2).
std::string format_multiplicities(const std::vector<int>& a);

/// Lower convex envelope of a scheme's points, cut where it stops
/// decreasing. value_at interpolates between consecutive hull points and
/// is undefined outside [min_M, max_M].
struct Curve {
  std::string scheme;
  std::vector<RatePoint> points;
  std::vector<RatePoint> hull;

  Rational min_M() const { return hull.front().M; }
  Rational max_M() const { return hull.back().M; }
  std::optional<Rational> value_at(const Rational& M) const;
};

Curve envelope(std::string scheme, std::vector<RatePoint> points);

/// Secretive PDA scheme on man_pda(K, t), t in [0, K-1].
Curve baseline_curve(int K, int N);

/// Best of the cut-set style bounds over l in [1, min(floor(N/2), K')].
/// Throws OutOfRange unless 1 <= M <= N (K'-1).
Rational lower_bound(int N, int Kp, const Rational& M);

/// A maximal M range where curve A lies strictly below curve B. An end is
/// marked as a domain edge when it is where one curve starts (or stops)
/// while the other is already (or still) defined: the end is then an
/// artifact of the scheme's memory range rather than a crossing.
struct Interval {
  Rational from_M, from_R, to_M, to_R;
  bool from_domain_edge = false;
  bool to_domain_edge = false;
};

/// Sorted, disjoint intervals over the common M range. Throws
/// DisjointDomains when the curves share no M.
std::vector<Interval> crossover(const Curve& a, const Curve& b);

void write_points_csv(std::ostream& out, const std::vector<RatePoint>& points);
void write_envelope_csv(std::ostream& out, const std::vector<Curve>& curves);
void write_crossover_csv(std::ostream& out, const std::string& a, const std::string& b,
                         const std::vector<Interval>& intervals);

}  // namespace hpcc
