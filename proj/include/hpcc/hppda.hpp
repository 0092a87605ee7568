#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpcc/combinatorics.hpp"
#include "hpcc/design.hpp"
#include "hpcc/pda.hpp"

namespace hpcc {

/// (Y, i): a subset of the K' active positions plus a copy index. Rows of B
/// carry one of these (Y is the row's star set) and so does every
/// transmission (Y is the set of positions it serves). MAN arrays always
/// use copy 1.
struct PositionLabel {
  Subset Y;
  int copy = 1;

  bool operator==(const PositionLabel&) const = default;
  auto operator<=>(const PositionLabel&) const = default;
};

/// "(12,1)" style rendering.
std::string format_label(const PositionLabel& l);

enum class HpPdaKind { Man, TDesign, Arrays };

struct HpPdaParams {
  int K = 0, Kp = 0, F = 0, Fp = 0, Z = 0, Zp = 0, S = 0;
  bool operator==(const HpPdaParams&) const = default;
};

std::string format_params(const HpPdaParams& p);

/// A hotplug PDA (P, B). P is F x K stars and nulls; B is a
/// [K', F', Z', S]-PDA. Parameters are measured on the arrays.
///
/// Witness rule: for the active set tau (sorted) and the B row labelled
/// (Y, i), the matching P row is the i-th row, in P order, whose stars
/// restricted to tau are exactly Phi(Y), where Phi maps position j of [K']
/// to the j-th smallest element of tau. Both constructions satisfy it.
class HpPda {
 public:
  /// Wraps arbitrary arrays (used when reading files). B row labels are
  /// derived from B's star sets, numbering repeats in row order. Throws
  /// InvalidParameters if P's columns disagree on the star count or B is
  /// not a PDA.
  HpPda(CellArray P, CellArray B, HpPdaKind kind = HpPdaKind::Arrays, int t = -1,
        std::vector<int> multiplicities = {}, std::optional<TDesign> design = std::nullopt);

  HpPdaKind kind() const { return kind_; }
  /// MAN t, or the design strength.
  int t() const { return t_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }
  const std::optional<TDesign>& design() const { return design_; }

  const CellArray& P() const { return P_; }
  const Pda& B() const { return B_; }
  const HpPdaParams& params() const { return params_; }

  const std::vector<PositionLabel>& b_row_labels() const { return b_rows_; }
  /// Transmission label of B's integer s is transmission_labels()[s - 1].
  const std::vector<PositionLabel>& transmission_labels() const { return tx_; }

  bool p_star(int row, int user) const { return P_.at(row - 1, user - 1).is_star(); }

 private:
  HpPdaKind kind_;
  int t_;
  std::vector<int> multiplicities_;
  std::optional<TDesign> design_;
  CellArray P_;
  Pda B_;
  HpPdaParams params_;
  std::vector<PositionLabel> b_rows_;
  std::vector<PositionLabel> tx_;
};

/// MAN-HpPDA: P is the star pattern of man_pda(K, t), B = man_pda(K', t).
/// Throws InvalidParameters unless 1 <= K' <= K and 0 <= t <= K'-1.
HpPda man_hppda(int K, int Kp, int t);

/// HpPDA from a t-design with multiplicities a_1..a_{t-1}. Throws
/// MultiplicityOutOfRange if some a_s exceeds lambda_s^t, all are zero or
/// the vector has the wrong length.
HpPda tdesign_hppda(const TDesign& design, const std::vector<int>& a);

/// Order-preserving map from positions [K'] to the sorted active set.
Subset phi(const Subset& tau, const Subset& positions);

/// Checks that tau is a K'-subset of [K] and returns it sorted. Throws
/// BadActiveSet.
Subset normalize_active_set(const HpPda& h, Subset tau);

/// P rows (1-based) aligned with B's rows. Throws WitnessNotFound.
std::vector<int> witness(const HpPda& h, const Subset& tau);

/// [P] restricted to zeta x tau with B's integers written into the null
/// cells, i.e. the array that must equal B.
struct FilledSubarray {
  Subset tau;
  std::vector<int> zeta;
  CellArray cells;
};

FilledSubarray fill(const HpPda& h, const Subset& tau);

/// Returns the first active set whose witness fails, if any. Exhaustive
/// over C(K, K').
std::optional<Subset> verify_hppda(const HpPda& h);

/// Text form: a header line
///   hppda <man|tdesign|arrays> K=.. Kp=.. F=.. Fp=.. Z=.. Zp=.. S=.. [t=..] [a=1,2]
/// then a line "P", the rows of P, a line "B", the rows of B, using the
/// PDA cell format.
std::string format_hppda(const HpPda& h);
HpPda parse_hppda(const std::string& text);

}  // namespace hpcc
