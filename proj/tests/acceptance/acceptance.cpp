// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hpcc/analysis.hpp"
#include "hpcc/combinatorics.hpp"
#include "hpcc/crypto_coding.hpp"
#include "hpcc/engine.hpp"
#include "hpcc/pda.hpp"

using namespace hpcc;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool within(const Rational& x, double target, double tol) { return std::abs(to_double(x) - target) <= tol + 1e-9; }

std::string num(const Rational& r) { return format_decimal(r, 4); }

const gf::Field kField = gf::Field::gf256();

void example1(Outcome& o) {
  const auto rep = simulate(man_hppda(6, 4, 2), 6, {1, 4, 5, 6}, {2, 3, 1, 5}, kField);
  o.detail << "M=" << format_fraction(rep.M) << " R=" << format_fraction(rep.R) << " decoded "
           << rep.decoded_count() << "/4, max leakage " << rep.max_leakage();
  o.require(rep.M == Rational(40, 3), "M");
  o.require(rep.R == Rational(4, 3), "R");
  o.require(rep.decoded_count() == 4, "decoding");
  o.require(rep.max_leakage() == 0 && rep.ok(), "leakage grid");
}

void example2(Outcome& o) {
  const HpPda h = tdesign_hppda(catalog("fano-7-3-1"), {1});
  const auto rep = simulate(h, 7, {2, 5}, {3, 6}, kField);
  std::mt19937_64 rng(0);
  const Placement p = place(h, 7, kField, 1, rng);
  const Delivery d = deliver(p, {2, 5}, {3, 6});
  const std::string trace = format_trace(p, d, false);
  const std::string want = "tx 1 (12,1) users={2,5} unkeyed = C(d2=3,2) + C(d5=6,1)\n";
  o.detail << "M=" << format_fraction(rep.M) << " R=" << format_fraction(rep.R) << ", "
           << d.transmissions.size() << " transmission";
  o.require(rep.M == Rational(21), "M");
  o.require(rep.R == Rational(1), "R");
  o.require(rep.ok(), "decoding or leakage");
  o.require(d.transmissions.size() == 1 && !d.transmissions[0].key, "single unkeyed transmission");
  o.require(trace.find(want) != std::string::npos, "trace structure");
}

void example3(Outcome& o) {
  const HpPda h = tdesign_hppda(catalog("sqs-8-4-1"), {1, 2});
  const auto rep = simulate(h, 8, {2, 6, 8}, {4, 4, 7}, kField);
  std::vector<std::string> labels;
  for (const auto& tx : rep.delivery.transmissions) labels.push_back(format_label(tx.label));
  o.detail << "M=" << format_fraction(rep.M) << " R=" << format_fraction(rep.R) << " zeta=(";
  for (std::size_t i = 0; i < rep.delivery.zeta.size(); ++i) o.detail << (i ? "," : "") << rep.delivery.zeta[i];
  o.detail << ")";
  o.require(rep.M == Rational(63, 4), "M");
  o.require(rep.R == Rational(5, 4), "R");
  o.require(rep.ok(), "decoding or leakage");
  o.require(labels == std::vector<std::string>{"(123,1)", "(123,2)", "(12,1)", "(13,1)", "(23,1)"}, "labels");
  o.require(rep.delivery.zeta == std::vector<int>{1, 9, 8, 6, 14, 11, 7, 10, 2}, "zeta");
}

void man_crossover(Outcome& o, int K, double to_M, double to_R) {
  const auto ivs = crossover(envelope("man", thm1_points(K, 3, K)), baseline_curve(K, K));
  if (ivs.empty()) {
    o.require(false, "no interval");
    return;
  }
  const Interval& iv = ivs.front();
  o.detail << "interval [" << num(iv.from_M) << ", " << num(iv.to_M) << "], R at right end " << num(iv.to_R);
  o.require(iv.from_M == Rational(1), "left end 1");
  o.require(within(iv.to_M, to_M, 0.05), "right end M " + std::to_string(to_M) + "+-0.05");
  o.require(within(iv.to_R, to_R, 0.01), "right end R " + std::to_string(to_R) + "+-0.01");
}

void design_endpoint(Outcome& o) {
  const TDesign sqs = catalog("sqs-8-4-1");
  const RatePoint p = thm2_point(sqs, 8, {1, 2});
  o.detail << "point (" << num(p.M) << ", " << num(p.R) << ")";
  o.require(p.M == Rational(63, 4) && p.R == Rational(5, 4), "exact point 63/4, 5/4");
  o.require(within(p.M, 15.7, 0.05) && within(p.R, 1.25, 0.0), "printed point");
  const auto ivs = crossover(envelope("tdesign", thm2_points(sqs, 8, admissible_multiplicities(sqs))),
                             baseline_curve(8, 8));
  o.require(!ivs.empty(), "design interval");
  if (ivs.empty()) return;
  const Interval& iv = ivs.front();
  o.detail << "; interval [(" << num(iv.from_M) << ", " << num(iv.from_R) << "), (" << num(iv.to_M) << ", "
           << num(iv.to_R) << ")]";
  if (iv.from_domain_edge) o.detail << " flagged: left end is where the design curve starts, not a crossing";
  o.require(iv.from_domain_edge, "discrepancy flag on the left end");
}

struct Instance {
  std::string name;
  HpPda h;
};

std::vector<Instance> secrecy_instances() {
  return {{"man(5,3,1)", man_hppda(5, 3, 1)},
          {"man(6,4,2)", man_hppda(6, 4, 2)},
          {"fano a=1", tdesign_hppda(catalog("fano-7-3-1"), {1})},
          {"sqs a=1-2", tdesign_hppda(catalog("sqs-8-4-1"), {1, 2})},
          {"sqs a=2-2", tdesign_hppda(catalog("sqs-8-4-1"), {2, 2})}};
}

void secrecy_suite(Outcome& o) {
  for (const auto& inst : secrecy_instances()) {
    const int N = inst.h.params().K;
    const SweepResult r = secrecy_sweep_parallel(inst.h, N, kField, {50, 2024, 2});
    o.detail << inst.name << ": " << r.deliveries << " deliveries; ";
    o.require(r.ok(), inst.name + (r.notes.empty() ? "" : " " + r.notes.front()));
    o.require(r.deliveries == 50 * binomial(inst.h.params().K, inst.h.params().Kp), inst.name + " coverage");
  }
}

void negative_controls(Outcome& o) {
  for (const auto& inst : secrecy_instances()) {
    const NegativeControl nc = negative_control(inst.h, inst.h.params().K, kField, 2024);
    o.detail << inst.name << ": " << nc.detected << "/" << nc.keyed_transmissions << " caught"
             << (nc.keyed_transmissions == 0 ? " (no keyed transmissions)" : "") << "; ";
    o.require(nc.detected == nc.keyed_transmissions && nc.missed.empty(),
              inst.name + (nc.missed.empty() ? "" : " " + nc.missed.front()));
  }
}

// rank of the observed rows minus rank of their key columns.
int share_leakage(const SharingSpec& spec, const std::vector<std::size_t>& rows) {
  const gf::Matrix view = spec.encoding.select_rows(rows);
  std::vector<std::size_t> keys;
  for (int j = spec.num_parts(); j < spec.n; ++j) keys.push_back(static_cast<std::size_t>(j));
  return static_cast<int>(gf::rank(spec.field, view) - gf::rank(spec.field, view.select_cols(keys)));
}

std::vector<std::size_t> zero_based(const Subset& s) {
  std::vector<std::size_t> out;
  for (int x : s) out.push_back(static_cast<std::size_t>(x - 1));
  return out;
}

void sharing_suite(Outcome& o) {
  struct Spec {
    int m, n, F;
  };
  for (const Spec s : {Spec{5, 8, 15}, Spec{7, 11, 14}, Spec{4, 5, 10}}) {
    const SharingSpec spec = make_sharing_spec(s.m, s.n, s.F, kField, 1);
    const std::string tag = "(" + std::to_string(s.m) + "," + std::to_string(s.n) + ")/(" + std::to_string(s.F) +
                            "," + std::to_string(s.n) + ")";
    std::uint64_t secret = 0, rebuilt = 0, minors = 0;
    bool ok = true;
    for (int k = 1; k <= s.m && ok; ++k) {
      for (const Subset& rows : k_subsets(s.F, k)) {
        ++secret;
        if (share_leakage(spec, zero_based(rows)) != 0) {
          ok = false;
          break;
        }
      }
    }
    o.require(ok, tag + " some <= m shares leak");

    std::mt19937_64 rng(s.F);
    const FileVector file = random_file(spec, 1, rng);
    std::vector<Symbols> keys;
    for (int i = 0; i < s.m; ++i) keys.push_back(random_symbols(spec.field, 1, rng));
    const auto coded = mds_extend(spec, 1, share_file(spec, file, keys));
    ok = true;
    for (const Subset& pick : k_subsets(s.F, s.n)) {
      std::vector<CodedShare> chosen;
      for (int x : pick) chosen.push_back(coded[x - 1]);
      ++rebuilt;
      const auto rec = reconstruct_file(spec, chosen);
      if (rec.file != file || rec.keys != keys) {
        ok = false;
        break;
      }
    }
    o.require(ok, tag + " reconstruction");

    // The encoding is the Cauchy matrix on xs = 0..n-1, 2n..F+n-1 and
    // ys = n..2n-1; every minor of it must be nonzero.
    std::vector<gf::Element> xs, ys;
    for (int i = 0; i < s.n; ++i) xs.push_back(static_cast<gf::Element>(i));
    for (int i = 2 * s.n; i < s.F + s.n; ++i) xs.push_back(static_cast<gf::Element>(i));
    for (int j = s.n; j < 2 * s.n; ++j) ys.push_back(static_cast<gf::Element>(j));
    const gf::Matrix cauchy = gf::cauchy_matrix(spec.field, xs, ys);
    o.require(cauchy == spec.encoding, tag + " encoding is Cauchy");
    ok = true;
    for (int k = 1; k <= 4 && ok; ++k) {
      for (const Subset& r : k_subsets(s.F, k)) {
        const gf::Matrix band = cauchy.select_rows(zero_based(r));
        for (const Subset& c : k_subsets(s.n, k)) {
          ++minors;
          if (gf::rank(spec.field, band.select_cols(zero_based(c))) != static_cast<std::size_t>(k)) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    }
    o.require(ok, tag + " singular Cauchy minor");
    o.detail << tag << ": " << secret << " secret sets, " << rebuilt << " rebuilds, " << minors << " minors; ";
  }
}

void formula_agreement(Outcome& o) {
  int checked = 0;
  const SimulationOptions opts{1, 5, false, true};
  for (auto [K, Kp] : std::vector<std::pair<int, int>>{{6, 4}, {8, 3}, {12, 3}}) {
    Subset active;
    std::vector<int> demands;
    for (int j = 1; j <= Kp; ++j) {
      active.push_back(j);
      demands.push_back(j);
    }
    for (int t = 0; t < Kp; ++t) {
      const RatePoint p = thm1_point(K, Kp, K, t);
      const auto rep = simulate(man_hppda(K, Kp, t), K, active, demands, choose_field(Kp, K), opts);
      ++checked;
      o.require(rep.M == p.M && rep.R == p.R,
                "man(" + std::to_string(K) + "," + std::to_string(Kp) + "," + std::to_string(t) + ")");
      o.require(rep.ok(), "simulation of man t=" + std::to_string(t));
    }
  }
  for (const std::string name : {"fano-7-3-1", "sqs-8-4-1"}) {
    const TDesign d = catalog(name);
    Subset active;
    std::vector<int> demands;
    for (int j = 1; j <= d.t; ++j) {
      active.push_back(j);
      demands.push_back(j);
    }
    for (const auto& a : admissible_multiplicities(d)) {
      const RatePoint p = thm2_point(d, d.v, a);
      const auto rep = simulate(tdesign_hppda(d, a), d.v, active, demands, kField, opts);
      ++checked;
      o.require(rep.M == p.M && rep.R == p.R, name + " a=" + format_multiplicities(a));
      o.require(rep.ok(), "simulation of " + name + " a=" + format_multiplicities(a));
    }
  }
  o.detail << checked << " points agree as exact rationals";
}

void lower_bound_sanity(Outcome& o) {
  const Rational at1 = lower_bound(8, 3, Rational(1));
  o.detail << "lower_bound(8,3,1)=" << format_fraction(at1);
  o.require(at1 == Rational(3), "lower_bound(8,3,1) = 3");
  int probes = 0;
  for (auto [K, Kp] : std::vector<std::pair<int, int>>{{8, 3}, {12, 3}}) {
    std::vector<Curve> curves{envelope("man", thm1_points(K, Kp, K)), baseline_curve(K, K)};
    if (K == 8) {
      const TDesign sqs = catalog("sqs-8-4-1");
      curves.push_back(envelope("tdesign", thm2_points(sqs, K, admissible_multiplicities(sqs))));
    }
    const Rational lo(1), hi(K * (Kp - 1));
    for (int i = 0; i < 100; ++i) {
      const Rational M = lo + (hi - lo) * Rational(i, 99);
      const Rational bound = lower_bound(K, Kp, M);
      for (const Curve& c : curves) {
        const auto v = c.value_at(M);
        if (!v) continue;
        ++probes;
        o.require(bound <= *v, c.scheme + " below the bound at M=" + num(M));
      }
    }
  }
  o.detail << ", " << probes << " grid comparisons";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "six-user MAN example", 1, example1},
      {2, "Fano example", 1, example2},
      {3, "quadruple system example", 1, example3},
      {4, "MAN crossover (8,3,8)", 5, [](Outcome& o) { man_crossover(o, 8, 11.9, 1.45); }},
      {5, "MAN crossover (12,3,12)", 5, [](Outcome& o) { man_crossover(o, 12, 19.12, 1.47); }},
      {6, "design endpoint (8,3,8)", 5, design_endpoint},
      {7, "secrecy sweep", 300, secrecy_suite},
      {8, "negative control", 300, negative_controls},
      {9, "sharing and MDS", 120, sharing_suite},
      {10, "formula vs simulation", 60, formula_agreement},
      {11, "lower bound sanity", 60, lower_bound_sanity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) o.require(false, "runtime over " + std::to_string(c.budget_s) + " s");
    if (!o.pass) ++failed;
    std::printf("%s criterion %d (%s) %.2fs: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
