#include "hpcc/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "hpcc/combinatorics.hpp"
#include "hpcc/errors.hpp"

namespace hpcc {

std::optional<int> KeySchedule::find(const Subset& users, int copy) const {
  auto it = index.find({users, copy});
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Rational Placement::memory(int user) const {
  const auto& c = caches.at(user - 1);
  return Rational(static_cast<std::int64_t>(c.coded.size() + c.keys.size()), spec.num_parts());
}

bool is_keyed(const HpPda& h, const PositionLabel& label, bool key_all) {
  return key_all || static_cast<int>(label.Y.size()) < h.params().Kp;
}

gf::Field choose_field(int n, int F) {
  const std::uint32_t need = required_field_order(n, F);
  if (need <= 256) return gf::Field::gf256();
  unsigned bits = 9;
  while ((1u << bits) < need) ++bits;
  if (bits > gf::Field::kMaxBits) throw FieldTooSmall("no supported field has order " + std::to_string(need));
  return gf::Field::with_bits(bits);
}

Placement place(const HpPda& h, int N, const gf::Field& field, int part_len, std::mt19937_64& rng,
                PlacementOptions opts) {
  if (N < 1) throw InvalidParameters("N must be at least 1");
  const HpPdaParams& hp = h.params();
  const int m = hp.Z;
  const int n = hp.Fp - hp.Zp + hp.Z;
  Placement p{h, N, opts.key_all, make_sharing_spec(m, n, hp.F, field, part_len), {}, {}, {}, {}, {}};

  for (int i = 1; i <= N; ++i) p.files.push_back(random_file(p.spec, i, rng));
  for (int i = 1; i <= N; ++i) {
    std::vector<Symbols> keys;
    for (int j = 0; j < m; ++j) keys.push_back(random_symbols(field, part_len, rng));
    p.sharing_keys.push_back(std::move(keys));
  }
  for (int i = 1; i <= N; ++i) {
    const auto shares = share_file(p.spec, p.files[i - 1], p.sharing_keys[i - 1]);
    std::vector<Symbols> rows;
    for (auto& c : mds_extend(p.spec, i, shares)) rows.push_back(std::move(c.payload));
    p.coded.push_back(std::move(rows));
  }

  // One key per subset of [K] for each (size, copy) that some keyed
  // transmission uses.
  std::set<std::pair<int, int>> kinds;
  for (const auto& label : h.transmission_labels()) {
    if (is_keyed(h, label, opts.key_all)) kinds.insert({static_cast<int>(label.Y.size()), label.copy});
  }
  for (const auto& [size, copy] : kinds) {
    for (const Subset& S : k_subsets(hp.K, size)) {
      p.schedule.index[{S, copy}] = static_cast<int>(p.schedule.entries.size());
      p.schedule.entries.push_back({S, copy, random_symbols(field, part_len, rng)});
    }
  }

  for (int k = 1; k <= hp.K; ++k) {
    CacheContents c{k, {}, {}};
    for (int i = 1; i <= N; ++i) {
      for (int f = 1; f <= hp.F; ++f) {
        if (h.p_star(f, k)) c.coded.push_back({i, f});
      }
    }
    for (std::size_t e = 0; e < p.schedule.entries.size(); ++e) {
      if (contains(p.schedule.entries[e].users, k)) c.keys.push_back(static_cast<int>(e));
    }
    p.caches.push_back(std::move(c));
  }
  return p;
}

Delivery deliver(const Placement& p, const Subset& active, const std::vector<int>& demands) {
  const HpPda& h = p.hppda;
  if (demands.size() != active.size()) {
    throw BadDemand("got " + std::to_string(demands.size()) + " demands for " + std::to_string(active.size()) +
                    " active users");
  }
  Delivery d;
  d.tau = normalize_active_set(h, active);
  d.demand.assign(p.K(), 0);
  for (std::size_t j = 0; j < active.size(); ++j) {
    if (demands[j] < 1 || demands[j] > p.N) {
      throw BadDemand("user " + std::to_string(active[j]) + " asks for file " + std::to_string(demands[j]) +
                      " outside [1, " + std::to_string(p.N) + "]");
    }
    d.demand[active[j] - 1] = demands[j];
  }
  const FilledSubarray filled = fill(h, d.tau);
  d.zeta = filled.zeta;
  const CellArray& B = h.B().cells();
  const auto& labels = h.transmission_labels();
  for (int s = 1; s <= h.B().S(); ++s) {
    Transmission tx;
    tx.integer = s;
    tx.label = labels[s - 1];
    tx.users = phi(d.tau, tx.label.Y);
    tx.payload.assign(p.spec.part_len, 0);
    for (int r = 0; r < B.rows(); ++r) {
      for (int c = 0; c < B.cols(); ++c) {
        if (!B.at(r, c).is_integer() || B.at(r, c).value != s) continue;
        const int user = d.tau[c];
        const Term term{user, d.demand[user - 1], d.zeta[r]};
        p.spec.field.axpy(tx.payload, p.coded[term.file - 1][term.row - 1], 1);
        tx.terms.push_back(term);
      }
    }
    std::sort(tx.terms.begin(), tx.terms.end(), [](const Term& a, const Term& b) { return a.user < b.user; });
    if (is_keyed(h, tx.label, p.key_all)) {
      tx.key = p.schedule.find(tx.users, tx.label.copy);
      if (!tx.key) throw InvalidParameters("no key scheduled for " + format_label(tx.label));
      p.spec.field.axpy(tx.payload, p.schedule.entries[*tx.key].payload, 1);
    }
    d.transmissions.push_back(std::move(tx));
  }
  return d;
}

Delivery strip_key(const Placement& p, Delivery d, std::size_t index) {
  Transmission& tx = d.transmissions.at(index);
  if (tx.key) {
    p.spec.field.axpy(tx.payload, p.schedule.entries[*tx.key].payload, 1);
    tx.key.reset();
  }
  return d;
}

FileVector decode(const Placement& p, const Delivery& d, int user) {
  const HpPda& h = p.hppda;
  if (user < 1 || user > p.K() || d.demand[user - 1] == 0) {
    throw DecodeFailed("user " + std::to_string(user) + " is not active");
  }
  const int want = d.demand[user - 1];
  std::vector<CodedShare> got;
  for (int f = 1; f <= h.params().F; ++f) {
    if (h.p_star(f, user)) got.push_back({want, f, p.coded[want - 1][f - 1]});
  }
  const auto& cache = p.caches[user - 1];
  for (const auto& tx : d.transmissions) {
    auto mine = std::find_if(tx.terms.begin(), tx.terms.end(), [&](const Term& t) { return t.user == user; });
    if (mine == tx.terms.end()) continue;
    Symbols value = tx.payload;
    if (tx.key) {
      if (std::find(cache.keys.begin(), cache.keys.end(), *tx.key) == cache.keys.end()) {
        throw DecodeFailed("user " + std::to_string(user) + " lacks the key of " + format_label(tx.label));
      }
      p.spec.field.axpy(value, p.schedule.entries[*tx.key].payload, 1);
    }
    for (const Term& t : tx.terms) {
      if (t.user == user) continue;
      if (!h.p_star(t.row, user)) {
        throw DecodeFailed("user " + std::to_string(user) + " does not cache row " + std::to_string(t.row));
      }
      p.spec.field.axpy(value, p.coded[t.file - 1][t.row - 1], 1);
    }
    got.push_back({want, mine->row, std::move(value)});
  }
  try {
    return reconstruct_file(p.spec, got).file;
  } catch (const Error& e) {
    throw DecodeFailed("user " + std::to_string(user) + ": " + e.what());
  }
}

namespace {

void add_coded_row(const Placement& p, const ObservationMatrix& o, std::vector<gf::Element>& row, int file,
                   int f) {
  const int parts = p.spec.num_parts();
  for (int j = 0; j < p.spec.n; ++j) {
    const gf::Element coef = p.spec.encoding.at(f - 1, j);
    const std::size_t col = j < parts ? o.part_column(file, j + 1)
                                      : static_cast<std::size_t>(p.N * parts + (file - 1) * p.spec.m + (j - parts));
    row[col] ^= coef;
  }
}

std::size_t key_column(const ObservationMatrix& o, int key) {
  return static_cast<std::size_t>(o.N * (o.parts + o.m) + key);
}

/// Reduced rows of a matrix, able to test membership of a vector.
struct RowSpace {
  gf::Matrix rref;
  std::vector<std::size_t> pivots;

  RowSpace(const gf::Field& f, gf::Matrix g) : rref(std::move(g)) { pivots = gf::reduce_row_echelon(f, rref); }

  bool contains_unit(std::size_t col) const {
    // e_col is in the row space iff it equals the combination of pivot rows
    // selected by its own entries; only the pivot row for `col` can help.
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (pivots[i] != col) continue;
      const auto r = rref.row(i);
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c != col && r[c] != 0) return false;
      }
      return true;
    }
    return false;
  }
};

}  // namespace

ObservationMatrix observation_matrix(const Placement& p, const Delivery* d, int user) {
  ObservationMatrix o;
  o.N = p.N;
  o.parts = p.spec.num_parts();
  o.m = p.spec.m;
  o.keys = static_cast<int>(p.schedule.entries.size());
  const std::size_t cols = o.columns();
  std::vector<gf::Element> data;
  auto push = [&](const std::vector<gf::Element>& row, std::string what) {
    data.insert(data.end(), row.begin(), row.end());
    o.provenance.push_back(std::move(what));
  };
  const auto& cache = p.caches.at(user - 1);
  for (const auto& [file, f] : cache.coded) {
    std::vector<gf::Element> row(cols, 0);
    add_coded_row(p, o, row, file, f);
    push(row, "C(" + std::to_string(file) + "," + std::to_string(f) + ")");
  }
  for (int k : cache.keys) {
    std::vector<gf::Element> row(cols, 0);
    row[key_column(o, k)] = 1;
    const auto& e = p.schedule.entries[k];
    push(row, "V" + format_label({e.users, e.copy}));
  }
  if (d) {
    for (const auto& tx : d->transmissions) {
      std::vector<gf::Element> row(cols, 0);
      for (const Term& t : tx.terms) add_coded_row(p, o, row, t.file, t.row);
      if (tx.key) row[key_column(o, *tx.key)] ^= 1;
      push(row, "X" + format_label(tx.label));
    }
  }
  o.G = gf::Matrix(o.provenance.size(), cols, std::move(data));
  return o;
}

int leakage(const gf::Field& f, const ObservationMatrix& obs, const std::vector<int>& files) {
  if (obs.G.rows() == 0) return 0;
  std::vector<bool> drop(obs.columns(), false);
  for (int file : files) {
    for (int h = 1; h <= obs.parts; ++h) drop[obs.part_column(file, h)] = true;
  }
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < obs.columns(); ++c) {
    if (!drop[c]) keep.push_back(c);
  }
  const auto full = gf::rank(f, obs.G);
  const auto rest = gf::rank(f, obs.G.select_cols(keep));
  return static_cast<int>(full - rest);
}

bool decodable(const gf::Field& f, const ObservationMatrix& obs, int file) {
  const RowSpace space(f, obs.G);
  for (int h = 1; h <= obs.parts; ++h) {
    if (!space.contains_unit(obs.part_column(file, h))) return false;
  }
  return true;
}

int SimulationReport::decoded_count() const {
  return static_cast<int>(std::count_if(users.begin(), users.end(), [](const UserCheck& u) { return u.decoded; }));
}

int SimulationReport::active_count() const {
  return static_cast<int>(std::count_if(users.begin(), users.end(), [](const UserCheck& u) { return u.active; }));
}

int SimulationReport::max_leakage() const {
  int worst = 0;
  for (const auto& u : users) {
    worst = std::max({worst, u.cache_leakage, u.joint_leakage});
    for (int l : u.leakage) worst = std::max(worst, l);
  }
  return worst;
}

bool SimulationReport::ok() const {
  for (const auto& u : users) {
    if (u.active && (!u.decoded || !u.decodable)) return false;
  }
  return max_leakage() == 0;
}

namespace {

std::vector<int> other_files(int N, int demand) {
  std::vector<int> out;
  for (int j = 1; j <= N; ++j) {
    if (j != demand) out.push_back(j);
  }
  return out;
}

std::vector<int> all_files(int N) { return other_files(N, 0); }

/// Shared setup for both grid versions: one observation matrix per active
/// user, and the flattened (user index, file) pairs to evaluate.
struct GridJob {
  std::vector<ObservationMatrix> views;
  std::vector<std::pair<int, int>> cells;
};

GridJob grid_job(const Placement& p, const Delivery& d) {
  GridJob job;
  for (std::size_t a = 0; a < d.tau.size(); ++a) {
    job.views.push_back(observation_matrix(p, &d, d.tau[a]));
    for (int j = 1; j <= p.N; ++j) {
      if (j != d.demand[d.tau[a] - 1]) job.cells.push_back({static_cast<int>(a), j});
    }
  }
  return job;
}

std::vector<std::vector<int>> empty_grid(const Placement& p, const Delivery& d) {
  return std::vector<std::vector<int>>(d.tau.size(), std::vector<int>(p.N, 0));
}

}  // namespace

std::vector<std::vector<int>> leakage_grid_serial(const Placement& p, const Delivery& d) {
  const GridJob job = grid_job(p, d);
  auto grid = empty_grid(p, d);
  for (const auto& [a, j] : job.cells) grid[a][j - 1] = leakage(p.spec.field, job.views[a], j);
  return grid;
}

std::vector<std::vector<int>> leakage_grid_parallel(const Placement& p, const Delivery& d) {
  const GridJob job = grid_job(p, d);
  auto grid = empty_grid(p, d);
  const auto n = static_cast<std::int64_t>(job.cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < n; ++c) {
    const auto [a, j] = job.cells[c];
    grid[a][j - 1] = leakage(p.spec.field, job.views[a], j);
  }
  return grid;
}

namespace {

SimulationReport run(const HpPda& h, int N, const Subset& active, const std::vector<int>& demands,
                     const gf::Field& field, const SimulationOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const Placement p = place(h, N, field, opts.part_len, rng, {opts.key_all});
  SimulationReport rep;
  rep.delivery = deliver(p, active, demands);
  const Delivery& d = rep.delivery;
  rep.R = Rational(static_cast<std::int64_t>(d.transmissions.size()), p.spec.num_parts());
  rep.M = 0;
  for (int k = 1; k <= p.K(); ++k) rep.M = std::max(rep.M, p.memory(k));

  const auto grid = opts.parallel ? leakage_grid_parallel(p, d) : leakage_grid_serial(p, d);
  for (int k = 1; k <= p.K(); ++k) {
    UserCheck u;
    u.user = k;
    u.demand = d.demand[k - 1];
    u.active = u.demand != 0;
    u.cache_leakage = leakage(field, observation_matrix(p, nullptr, k), all_files(N));
    u.leakage.assign(N, 0);
    if (u.active) {
      const ObservationMatrix view = observation_matrix(p, &d, k);
      u.decodable = decodable(field, view, u.demand);
      u.joint_leakage = leakage(field, view, other_files(N, u.demand));
      const auto a = std::lower_bound(d.tau.begin(), d.tau.end(), k) - d.tau.begin();
      u.leakage = grid[a];
      try {
        u.decoded = decode(p, d, k) == p.files[u.demand - 1];
      } catch (const DecodeFailed&) {
        u.decoded = false;
      }
    }
    rep.users.push_back(std::move(u));
  }
  return rep;
}

}  // namespace

SimulationReport simulate(const HpPda& h, int N, const Subset& active, const std::vector<int>& demands,
                          const gf::Field& field, const SimulationOptions& opts) {
  return run(h, N, active, demands, field, opts);
}

SimulationReport simulate_baseline(int K, int t, int N, const std::vector<int>& demands, const gf::Field& field,
                                   const SimulationOptions& opts) {
  const HpPda h = man_hppda(K, K, t);
  Subset everyone(K);
  std::iota(everyone.begin(), everyone.end(), 1);
  SimulationOptions o = opts;
  o.key_all = true;
  return run(h, N, everyone, demands, field, o);
}

namespace {

std::string hex(const Symbols& s, unsigned bits) {
  std::string out;
  char buf[8];
  for (auto x : s) {
    std::snprintf(buf, sizeof buf, bits <= 8 ? "%02x" : "%04x", static_cast<unsigned>(x));
    out += buf;
  }
  return out;
}

}  // namespace

std::string format_trace(const Placement& p, const Delivery& d, bool payloads) {
  std::ostringstream out;
  const unsigned bits = p.spec.field.bits();
  for (const auto& c : p.caches) {
    for (const auto& [file, f] : c.coded) {
      out << "cache " << c.user << " C(" << file << "," << f << ")";
      if (payloads) out << ' ' << hex(p.coded[file - 1][f - 1], bits);
      out << '\n';
    }
    for (int k : c.keys) {
      const auto& e = p.schedule.entries[k];
      out << "cache " << c.user << " V(" << format_subset(e.users) << "," << e.copy << ")";
      if (payloads) out << ' ' << hex(e.payload, bits);
      out << '\n';
    }
  }
  for (const auto& tx : d.transmissions) {
    out << "tx " << tx.integer << ' ' << format_label(tx.label) << " users=" << format_subset(tx.users);
    if (tx.key) {
      const auto& e = p.schedule.entries[*tx.key];
      out << " key=V(" << format_subset(e.users) << "," << e.copy << ")";
    } else {
      out << " unkeyed";
    }
    out << " =";
    for (std::size_t i = 0; i < tx.terms.size(); ++i) {
      const Term& t = tx.terms[i];
      out << (i ? " + " : " ") << "C(d" << t.user << "=" << t.file << "," << t.row << ")";
    }
    if (payloads) out << ' ' << hex(tx.payload, bits);
    out << '\n';
  }
  return out.str();
}

namespace {

void note(SweepResult& r, std::string s) {
  if (r.notes.size() < 5) r.notes.push_back(std::move(s));
}

void merge(SweepResult& into, const SweepResult& from) {
  into.deliveries += from.deliveries;
  into.cache_leaks += from.cache_leaks;
  into.rank_failures += from.rank_failures;
  into.view_leaks += from.view_leaks;
  into.decode_failures += from.decode_failures;
  for (const auto& n : from.notes) note(into, n);
}

SweepResult cache_only_checks(const Placement& p) {
  SweepResult r;
  for (int k = 1; k <= p.K(); ++k) {
    const int l = leakage(p.spec.field, observation_matrix(p, nullptr, k), all_files(p.N));
    if (l != 0) {
      ++r.cache_leaks;
      note(r, "cache of user " + std::to_string(k) + " leaks " + std::to_string(l));
    }
  }
  return r;
}

SweepResult sweep_one(const Placement& p, const Subset& tau, std::size_t index, const SweepOptions& opts) {
  SweepResult r;
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> pick(1, p.N);
  const gf::Field& f = p.spec.field;
  for (int v = 0; v < opts.demand_vectors; ++v) {
    std::vector<int> demands(tau.size());
    for (auto& x : demands) x = pick(rng);
    const Delivery d = deliver(p, tau, demands);
    ++r.deliveries;
    for (int k : tau) {
      const int want = d.demand[k - 1];
      const std::string where = "tau=" + format_subset(tau) + " user " + std::to_string(k);
      bool ok = false;
      try {
        ok = decode(p, d, k) == p.files[want - 1];
      } catch (const DecodeFailed&) {
      }
      if (!ok) {
        ++r.decode_failures;
        note(r, where + " failed to decode");
      }
      const ObservationMatrix view = observation_matrix(p, &d, k);
      if (!decodable(f, view, want)) {
        ++r.rank_failures;
        note(r, where + " cannot decode in rank");
      }
      if (p.N > 1) {
        const int l = leakage(f, view, other_files(p.N, want));
        if (l != 0) {
          ++r.view_leaks;
          note(r, where + " leaks " + std::to_string(l));
        }
      }
    }
  }
  return r;
}

}  // namespace

SweepResult secrecy_sweep_serial(const HpPda& h, int N, const gf::Field& field, const SweepOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const Placement p = place(h, N, field, opts.part_len, rng);
  SweepResult total = cache_only_checks(p);
  const auto taus = k_subsets(h.params().K, h.params().Kp);
  for (std::size_t j = 0; j < taus.size(); ++j) merge(total, sweep_one(p, taus[j], j, opts));
  return total;
}

SweepResult secrecy_sweep_parallel(const HpPda& h, int N, const gf::Field& field, const SweepOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const Placement p = place(h, N, field, opts.part_len, rng);
  SweepResult total = cache_only_checks(p);
  const auto taus = k_subsets(h.params().K, h.params().Kp);
  std::vector<SweepResult> parts(taus.size());
  const auto n = static_cast<std::int64_t>(taus.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t j = 0; j < n; ++j) parts[j] = sweep_one(p, taus[j], static_cast<std::size_t>(j), opts);
  for (const auto& r : parts) merge(total, r);
  return total;
}

NegativeControl negative_control(const HpPda& h, int N, const gf::Field& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Placement p = place(h, N, field, 1, rng);
  std::uniform_int_distribution<int> pick(1, N);
  NegativeControl out;
  const auto taus = k_subsets(h.params().K, h.params().Kp);
  for (std::size_t j = 0; j < taus.size(); ++j) {
    const Subset& tau = taus[j];
    std::vector<int> demands(tau.size());
    for (std::size_t a = 0; a < tau.size(); ++a) {
      demands[a] = N >= static_cast<int>(tau.size()) ? static_cast<int>((a + j) % N) + 1 : pick(rng);
    }
    const Delivery d = deliver(p, tau, demands);
    for (std::size_t x = 0; x < d.transmissions.size(); ++x) {
      if (!d.transmissions[x].key) continue;
      ++out.keyed_transmissions;
      const Delivery bad = strip_key(p, d, x);
      bool caught = false;
      for (int k : tau) {
        if (N > 1 && leakage(field, observation_matrix(p, &bad, k), other_files(N, bad.demand[k - 1])) > 0) {
          caught = true;
          break;
        }
      }
      if (caught) {
        ++out.detected;
      } else if (out.missed.size() < 5) {
        out.missed.push_back("tau=" + format_subset(tau) + " " + format_label(d.transmissions[x].label));
      }
    }
  }
  return out;
}

}  // namespace hpcc
