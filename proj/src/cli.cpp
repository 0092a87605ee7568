#include "hpcc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "hpcc/analysis.hpp"
#include "hpcc/design.hpp"
#include "hpcc/engine.hpp"
#include "hpcc/errors.hpp"
#include "hpcc/hppda.hpp"
#include "hpcc/pda.hpp"

namespace hpcc::cli {

namespace {

/// Semantic failure reported through exit code 1 without an exception type.
struct Failure {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<int> parse_ints(const std::string& s, char sep) {
  std::vector<int> out;
  for (const auto& tok : split(s, sep)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size()) throw ParseError("not an integer list: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

int verify(const std::string& kind, const std::string& path, std::ostream& out) {
  const std::string text = read_file(path);
  if (kind == "pda") {
    const PdaCheck check = verify_pda(parse_cell_array(text));
    if (const auto* p = std::get_if<PdaParams>(&check)) {
      out << "PDA K=" << p->K << " F=" << p->F << " Z=" << p->Z << " S=" << p->S << '\n';
      return 0;
    }
    const auto& v = std::get<PdaViolation>(check);
    out << "violation C" << condition_number(v.condition) << ": " << v.message << '\n';
    return 1;
  }
  if (kind == "design") {
    try {
      const TDesign d = parse_design(text);
      out << "DESIGN " << d.t << "-(" << d.v << "," << d.k << "," << d.lambda << ") b=" << d.blocks.size() << '\n';
      return 0;
    } catch (const DesignInvalid& e) {
      out << "violation: " << e.what() << '\n';
      return 1;
    }
  }
  if (kind == "hppda") {
    const HpPda h = parse_hppda(text);
    if (auto bad = verify_hppda(h)) {
      out << "violation: no witness for active set " << format_subset(*bad) << '\n';
      return 1;
    }
    out << "HPPDA " << format_params(h.params()) << '\n';
    return 0;
  }
  throw ParseError("unknown kind '" + kind + "' (pda, design, hppda)");
}

struct SchemeFlags {
  int K = 0, Kp = 0, t = -1;
  std::string design;
  std::string a;
  std::string hppda_file;
  bool baseline = false;
};

void add_scheme_flags(CLI::App* app, SchemeFlags& f) {
  app->add_option("--K", f.K, "users");
  app->add_option("--Kp", f.Kp, "active users");
  app->add_option("--t", f.t, "MAN parameter");
  app->add_option("--design", f.design, "catalog name or design file");
  app->add_option("--a", f.a, "multiplicities a_1,...,a_{t-1}");
}

HpPda build_hppda(const SchemeFlags& f) {
  if (!f.hppda_file.empty()) return parse_hppda(read_file(f.hppda_file));
  if (!f.design.empty()) {
    const TDesign d = resolve_design(f.design);
    if (f.a.empty()) throw ParseError("--a is required with --design");
    return tdesign_hppda(d, parse_ints(f.a, ','));
  }
  if (f.K == 0 || f.Kp == 0 || f.t < 0) throw ParseError("give --K --Kp --t, --design --a or --hppda");
  return man_hppda(f.K, f.Kp, f.t);
}

int simulate_cmd(const SchemeFlags& f, int N, const std::string& active_s, const std::string& demands_s,
                 std::uint64_t seed, unsigned field_bits, int part_len, const std::optional<std::string>& trace,
                 std::ostream& out) {
  const std::vector<int> demands = parse_ints(demands_s, ',');
  SimulationOptions opts;
  opts.seed = seed;
  opts.part_len = part_len;

  std::optional<HpPda> h;
  Subset active;
  if (f.baseline) {
    if (f.K == 0 || f.t < 0) throw ParseError("baseline needs --K and --t");
    h = man_hppda(f.K, f.K, f.t);
    for (int k = 1; k <= f.K; ++k) active.push_back(k);
    opts.key_all = true;
  } else {
    h = build_hppda(f);
    active = parse_ints(active_s, ',');
  }
  const auto& hp = h->params();
  const int n = hp.Fp - hp.Zp + hp.Z;
  const gf::Field field = field_bits ? gf::Field::with_bits(field_bits) : choose_field(n, hp.F);

  const SimulationReport rep = simulate(*h, N, active, demands, field, opts);
  out << "M=" << format_fraction(rep.M) << " R=" << format_fraction(rep.R) << " decode=" << rep.decoded_count()
      << "/" << rep.active_count() << " leakage=" << rep.max_leakage() << '\n';
  out << "user demand decoded rank-decodable cache-leakage joint-leakage\n";
  for (const auto& u : rep.users) {
    out << u.user << ' ';
    if (u.active) {
      out << u.demand << ' ' << (u.decoded ? "yes" : "no") << ' ' << (u.decodable ? "yes" : "no");
    } else {
      out << "- - -";
    }
    out << ' ' << u.cache_leakage << ' ' << (u.active ? std::to_string(u.joint_leakage) : "-") << '\n';
  }
  out << "leakage grid (active user: files 1.." << N << ")\n";
  for (const auto& u : rep.users) {
    if (!u.active) continue;
    out << u.user << ':';
    for (int l : u.leakage) out << ' ' << l;
    out << '\n';
  }
  if (trace) {
    std::mt19937_64 rng(seed);
    const Placement p = place(*h, N, field, part_len, rng, {opts.key_all});
    out << format_trace(p, rep.delivery, *trace == "full");
  }
  return rep.ok() ? 0 : 1;
}

struct SchemeRequest {
  std::string kind;
  std::string design;
  std::vector<std::vector<int>> as;
};

std::vector<SchemeRequest> parse_schemes(const std::string& s) {
  std::vector<SchemeRequest> out;
  for (const auto& item : split(s, ',')) {
    const auto fields = split(item, ':');
    SchemeRequest r;
    r.kind = fields.empty() ? "" : fields[0];
    if (r.kind == "tdesign") {
      if (fields.size() < 2 || fields.size() > 3) throw ParseError("use tdesign:<design>[:a1-a2/a1-a2]");
      r.design = fields[1];
      if (fields.size() == 3) {
        for (const auto& a : split(fields[2], '/')) r.as.push_back(parse_ints(a, '-'));
      }
    } else if (r.kind != "man" && r.kind != "baseline" && r.kind != "bound") {
      throw ParseError("unknown scheme '" + item + "'");
    } else if (fields.size() != 1) {
      throw ParseError("scheme '" + r.kind + "' takes no arguments");
    }
    out.push_back(std::move(r));
  }
  return out;
}

int curves_cmd(const std::string& system, const std::string& schemes_s, const std::string& out_dir,
               std::ostream& out) {
  const auto sys = parse_ints(system, ',');
  if (sys.size() != 3) throw ParseError("--system expects K,Kp,N");
  const int K = sys[0], Kp = sys[1], N = sys[2];
  if (Kp < 1 || Kp > K || N < 1) throw InvalidParameters("need 1 <= K' <= K and N >= 1");

  std::vector<RatePoint> points;
  std::vector<Curve> curves;
  std::optional<Curve> baseline;
  std::vector<RatePoint> bound;
  for (const auto& r : parse_schemes(schemes_s)) {
    if (r.kind == "man") {
      curves.push_back(envelope("man", thm1_points(K, Kp, N)));
    } else if (r.kind == "tdesign") {
      const TDesign d = resolve_design(r.design);
      if (d.v != K || d.t != Kp) {
        throw InvalidParameters("design " + r.design + " has v=" + std::to_string(d.v) + ", t=" +
                                std::to_string(d.t) + "; the system needs v=K, t=K'");
      }
      const auto as = r.as.empty() ? admissible_multiplicities(d) : r.as;
      curves.push_back(envelope("tdesign", thm2_points(d, N, as)));
    } else if (r.kind == "baseline") {
      baseline = baseline_curve(K, N);
    } else {
      for (int M = 1; M <= N * (Kp - 1); ++M) {
        bound.push_back({Rational(M), lower_bound(N, Kp, Rational(M)), "bound", "l-max"});
      }
    }
  }
  if (baseline) curves.push_back(*baseline);
  for (const auto& c : curves) points.insert(points.end(), c.points.begin(), c.points.end());
  points.insert(points.end(), bound.begin(), bound.end());

  std::ostringstream pts, env, cross, notes;
  write_points_csv(pts, points);
  write_envelope_csv(env, curves);
  cross << "schemeA,schemeB,M_from,R_from,M_to,R_to\n";
  if (baseline) {
    for (const auto& c : curves) {
      if (c.scheme == "baseline") continue;
      const auto ivs = crossover(c, *baseline);
      write_crossover_csv(cross, c.scheme, "baseline", ivs);
      for (const auto& iv : ivs) {
        if (iv.from_domain_edge) {
          notes << "note: " << c.scheme << " below baseline from M=" << format_decimal(iv.from_M, 2)
                << ", where " << c.scheme << " starts; this end is not a crossing\n";
        }
        if (iv.to_domain_edge) {
          notes << "note: " << c.scheme << " below baseline up to M=" << format_decimal(iv.to_M, 2) << ", where "
                << c.scheme << " ends; this end is not a crossing\n";
        }
      }
    }
  }
  if (!bound.empty()) notes << "bound R(M=1)=" << format_fraction(bound.front().R) << '\n';

  if (out_dir.empty()) {
    out << pts.str() << '\n' << env.str() << '\n' << cross.str();
  } else {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::filesystem::path dir(out_dir);
    for (const auto& [name, body] : {std::pair{"points.csv", pts.str()}, std::pair{"envelope.csv", env.str()},
                                     std::pair{"crossover.csv", cross.str()}}) {
      std::ofstream f(dir / name);
      f << body;
      if (!f) throw ParseError("cannot write " + (dir / name).string());
    }
    out << cross.str();
  }
  out << notes.str();
  return 0;
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* s = std::getenv("HPCC_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ParseError("HPCC_SEED is not an unsigned integer");
    }
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hotplug secretive coded caching toolkit", "hpcc"};
  app.require_subcommand(1);

  std::string verify_kind, verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "check a PDA, design or HpPDA file");
  verify_cmd->add_option("kind", verify_kind, "pda | design | hppda")->required();
  verify_cmd->add_option("path", verify_path)->required();

  std::string construct_kind;
  SchemeFlags cf;
  auto* construct_cmd = app.add_subcommand("construct", "print a hotplug array pair");
  construct_cmd->add_option("kind", construct_kind, "man-hppda | tdesign-hppda")->required();
  add_scheme_flags(construct_cmd, cf);

  SchemeFlags sf;
  int N = 0;
  std::string active, demands;
  std::uint64_t seed = 0;
  unsigned field_bits = 0;
  int part_len = 4;
  std::optional<std::string> trace;
  auto* sim_cmd = app.add_subcommand("simulate", "run placement, delivery, decoding and the leakage oracle");
  add_scheme_flags(sim_cmd, sf);
  sim_cmd->add_option("--hppda", sf.hppda_file, "HpPDA file");
  sim_cmd->add_flag("--baseline", sf.baseline, "classical scheme on man_pda(K, t), all users active");
  sim_cmd->add_option("--N", N, "files")->required();
  sim_cmd->add_option("--active", active, "active users, comma separated");
  sim_cmd->add_option("--demands", demands, "one file per active user")->required();
  auto* seed_opt = sim_cmd->add_option("--seed", seed);
  sim_cmd->add_option("--field-bits", field_bits, "GF(2^l); default: smallest suitable, at least 8");
  sim_cmd->add_option("--part-len", part_len, "symbols per coded share");
  sim_cmd->add_option("--trace", trace, "print cache entries and transmissions; =full adds payloads")
      ->expected(0, 1);

  std::string system, schemes = "man,baseline", out_dir;
  auto* curves = app.add_subcommand("curves", "rate-memory points, envelopes and crossovers");
  curves->add_option("--system", system, "K,Kp,N")->required();
  curves->add_option("--schemes", schemes, "man,tdesign:<design>[:a-list],baseline,bound");
  curves->add_option("--out", out_dir, "output directory");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*verify_cmd) return verify(verify_kind, verify_path, out);
    if (*construct_cmd) {
      HpPda h = construct_kind == "man-hppda" ? man_hppda(cf.K, cf.Kp, cf.t)
                : construct_kind == "tdesign-hppda"
                    ? tdesign_hppda(resolve_design(cf.design), parse_ints(cf.a, ','))
                    : throw ParseError("unknown kind '" + construct_kind + "' (man-hppda, tdesign-hppda)");
      out << format_hppda(h);
      return 0;
    }
    if (*sim_cmd) {
      if (seed_opt->count() == 0) seed = default_seed();
      if (trace && !trace->empty() && *trace != "full" && *trace != "labels") {
        throw ParseError("--trace takes no value or 'full'");
      }
      return simulate_cmd(sf, N, active, demands, seed, field_bits, part_len, trace, out);
    }
    if (*curves) return curves_cmd(system, schemes, out_dir, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace hpcc::cli
