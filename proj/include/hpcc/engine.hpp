#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hpcc/crypto_coding.hpp"
#include "hpcc/hppda.hpp"
#include "hpcc/rate.hpp"

namespace hpcc {

/// Key V_(S, i): a pad cached by exactly the users in S.
struct KeyEntry {
  Subset users;
  int copy = 1;
  Symbols payload;
};

struct KeySchedule {
  std::vector<KeyEntry> entries;

  /// Index into entries, if the schedule has a key for (users, copy).
  std::optional<int> find(const Subset& users, int copy) const;

  std::map<std::pair<Subset, int>, int> index;
};

struct CacheContents {
  int user = 0;
  /// (file, row) pairs, both 1-based: every file's coded shares on the
  /// rows where P has a star in this user's column.
  std::vector<std::pair<int, int>> coded;
  /// Indices into the key schedule.
  std::vector<int> keys;
};

struct PlacementOptions {
  /// Key every transmission (the baseline), instead of only those that
  /// serve fewer than K' users.
  bool key_all = false;
};

struct Placement {
  HpPda hppda;
  int N = 0;
  bool key_all = false;
  SharingSpec spec;
  std::vector<FileVector> files;
  /// sharing_keys[i-1] are the m keys mixed into file i.
  std::vector<std::vector<Symbols>> sharing_keys;
  /// coded[i-1][f-1] = C_{i,f}
  std::vector<std::vector<Symbols>> coded;
  KeySchedule schedule;
  /// caches[k-1]
  std::vector<CacheContents> caches;

  int K() const { return hppda.params().K; }
  /// Memory of user k in file units.
  Rational memory(int user) const;
};

/// Whether a transmission with this label is padded with a key.
bool is_keyed(const HpPda& h, const PositionLabel& label, bool key_all);

/// Smallest field (at least GF(2^8)) large enough for an (m, n, F) spec.
gf::Field choose_field(int n, int F);

/// Draws the library, shares and codes every file, builds the key schedule
/// and fills the caches. Random draws happen in a fixed order: all files,
/// then the sharing keys file by file, then the schedule keys in schedule
/// order. Throws FieldTooSmall.
Placement place(const HpPda& h, int N, const gf::Field& field, int part_len, std::mt19937_64& rng,
                PlacementOptions opts = {});

struct Term {
  int user = 0;
  int file = 0;
  int row = 0;
};

struct Transmission {
  /// Integer of B this transmission realizes.
  int integer = 0;
  PositionLabel label;
  /// Phi(label.Y): the active users served.
  Subset users;
  std::optional<int> key;
  std::vector<Term> terms;
  Symbols payload;
};

struct Delivery {
  Subset tau;
  std::vector<int> zeta;
  /// demand[k-1] for active k, 0 for inactive users.
  std::vector<int> demand;
  std::vector<Transmission> transmissions;
};

/// Sends one transmission per integer of B for the active users `active`
/// (any order) with demands[j] the file wanted by active[j]. Throws
/// BadActiveSet or BadDemand.
Delivery deliver(const Placement& p, const Subset& active, const std::vector<int>& demands);

/// Same delivery but transmission `index` goes out without its key. Used
/// as the negative control for the leakage oracle.
Delivery strip_key(const Placement& p, Delivery d, std::size_t index);

/// Rebuilds the demanded file of active user k from its cache and the
/// broadcast. Throws DecodeFailed.
FileVector decode(const Placement& p, const Delivery& d, int user);

/// Linear view of one user over the variables (file parts, sharing keys,
/// schedule keys), one row per observed symbol at part_len = 1.
struct ObservationMatrix {
  gf::Matrix G;
  std::vector<std::string> provenance;
  int N = 0;
  int parts = 0;
  int m = 0;
  int keys = 0;

  std::size_t part_column(int file, int part) const {
    return static_cast<std::size_t>((file - 1) * parts + (part - 1));
  }
  std::size_t columns() const { return static_cast<std::size_t>(N * (parts + m) + keys); }
};

/// Cache-only view when `d` is null, otherwise cache plus every transmission.
ObservationMatrix observation_matrix(const Placement& p, const Delivery* d, int user);

/// rank(G) - rank(G without the part columns of `files`): mutual
/// information with those files in symbols of the field.
int leakage(const gf::Field& f, const ObservationMatrix& obs, const std::vector<int>& files);
inline int leakage(const gf::Field& f, const ObservationMatrix& obs, int file) {
  return leakage(f, obs, std::vector<int>{file});
}

/// Every part of `file` is a linear function of the view.
bool decodable(const gf::Field& f, const ObservationMatrix& obs, int file);

struct UserCheck {
  int user = 0;
  bool active = false;
  int demand = 0;
  bool decoded = false;
  bool decodable = false;
  /// Leakage of the cache alone about all files together.
  int cache_leakage = 0;
  /// Full view, all non-demanded files together (active users only).
  int joint_leakage = 0;
  /// Full view, one file at a time; leakage[j-1]. The demanded file's
  /// entry is not a secrecy violation and is reported as 0.
  std::vector<int> leakage;
};

struct SimulationReport {
  Rational M;
  Rational R;
  Delivery delivery;
  std::vector<UserCheck> users;

  int decoded_count() const;
  int active_count() const;
  /// Largest leakage anywhere it must be zero.
  int max_leakage() const;
  bool ok() const;
};

struct SimulationOptions {
  int part_len = 4;
  std::uint64_t seed = 0;
  bool key_all = false;
  /// Compute the per-file leakage grid with OpenMP.
  bool parallel = true;
};

SimulationReport simulate(const HpPda& h, int N, const Subset& active, const std::vector<int>& demands,
                          const gf::Field& field, const SimulationOptions& opts = {});

/// The secretive scheme for the classical system: P = B = man_pda(K, t)
/// and every transmission keyed. `demands` covers all K users.
SimulationReport simulate_baseline(int K, int t, int N, const std::vector<int>& demands, const gf::Field& field,
                                   const SimulationOptions& opts = {});

/// Line-oriented dump: cache entries then transmissions, with hex payloads
/// when `payloads` is set.
std::string format_trace(const Placement& p, const Delivery& d, bool payloads);

/// Outcome of checking secrecy and decodability over every active set.
struct SweepResult {
  std::uint64_t deliveries = 0;
  /// Users whose cache alone reveals something.
  std::uint64_t cache_leaks = 0;
  /// Active users whose view does not span their demanded file.
  std::uint64_t rank_failures = 0;
  /// Active users whose full view reveals something about other files.
  std::uint64_t view_leaks = 0;
  std::uint64_t decode_failures = 0;
  /// First few failures, in active-set order.
  std::vector<std::string> notes;

  bool ok() const { return cache_leaks + rank_failures + view_leaks + decode_failures == 0; }
  bool operator==(const SweepResult&) const = default;
};

struct SweepOptions {
  int demand_vectors = 50;
  std::uint64_t seed = 0;
  int part_len = 2;
};

/// Places once, then for every active set and `demand_vectors` random
/// demand vectors delivers, decodes and runs the rank tests. Demands for
/// active set number j come from a generator seeded by (seed, j), so the
/// serial and parallel versions agree exactly.
SweepResult secrecy_sweep_serial(const HpPda& h, int N, const gf::Field& field, const SweepOptions& opts);
SweepResult secrecy_sweep_parallel(const HpPda& h, int N, const gf::Field& field, const SweepOptions& opts);

/// Per-file leakage for every (active user, file) pair, serial reference
/// and OpenMP version.
std::vector<std::vector<int>> leakage_grid_serial(const Placement& p, const Delivery& d);
std::vector<std::vector<int>> leakage_grid_parallel(const Placement& p, const Delivery& d);

struct NegativeControl {
  int keyed_transmissions = 0;
  /// Keyed transmissions whose stripped version was caught.
  int detected = 0;
  std::vector<std::string> missed;
};

/// For every active set (one demand vector with distinct demands where
/// N allows), removes each keyed transmission's key in turn and checks that
/// some active user then learns something about files it did not ask for.
NegativeControl negative_control(const HpPda& h, int N, const gf::Field& field, std::uint64_t seed = 0);

}  // namespace hpcc
