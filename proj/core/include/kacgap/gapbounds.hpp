#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "kacgap/kspectrum.hpp"
#include "kacgap/tridiag.hpp"

namespace kacgap::gapbounds {

/// W^{(2)}: every sector bound must stay strictly below this.
inline constexpr double kTrivialBound = 0.75;
/// One-sided slack used when comparing against quoted decimal bounds.
inline constexpr double kSlack = 1e-9;

enum class Sector { AntiSymmetric, SymLargeEll, SymMidEll, SymSmallEll };
std::string to_string(Sector s);

/// Ordered key/value record of intermediate quantities.
class Evidence {
 public:
  void add(std::string key, double value) { items_.emplace_back(std::move(key), value); }
  /// Throws std::out_of_range for unknown keys.
  double at(const std::string& key) const;
  bool contains(const std::string& key) const;
  const std::vector<std::pair<std::string, double>>& items() const noexcept { return items_; }

 private:
  std::vector<std::pair<std::string, double>> items_;
};

struct SectorBound {
  Sector sector;
  std::optional<int> ell;
  double lambda_bound;
  Evidence evidence;

  std::string label() const;
};

// ---- anti-symmetric sector ---------------------------------------------------

/// max(11/(16t), 3/8 (1+t)). Throws DomainError unless 0 < t < 1.
double antisym_bound(double t);

struct AntisymOptimum {
  double t_star;
  double bound;
  double t_closed_form;  ///< (-3 + sqrt(75)) / 6
};

/// One-dimensional minimization of antisym_bound over (0, 1).
AntisymOptimum antisym_optimize();

SectorBound antisym_sector();

// ---- large ell ---------------------------------------------------------------

struct LargeEllOptions {
  /// Majorant of kappa in the diagonal sequence (1 - a~)(1 + 2 kappa).
  kspectrum::Majorant diagonal = kspectrum::Majorant::Tilde;
  /// Majorant of kappa in the off-diagonal sequence 2 b~ (1 + 2 kappa).
  kspectrum::Majorant offdiagonal = kspectrum::Majorant::Uniform;
  /// 0 selects max(ceil(4 ell^{3/2}), 2000).
  int n_cut = 0;
  int tail_check = 100;
};

int default_n_cut(int ell);

/// Evidence keys: n_cut, diag_sup, diag_argmax, offdiag_sup, offdiag_argmax.
/// Throws DomainError for ell < 4, TailNotDecreasing when the last
/// tail_check values of either sequence are not strictly decreasing.
SectorBound large_ell_bound(int ell, const LargeEllOptions& options = {});

// ---- mid ell -----------------------------------------------------------------

inline constexpr double kMidEllThreshold = 0.23;

/// Checks |kappa| <= threshold on [0, n_boundary] x [ell_lo, ell_hi] by scan and
/// kappa_hat(n_boundary, ell_lo) <= threshold for the rest (kappa_hat decreases
/// in both indices). Returns 1/2 (1 + 2 threshold). Throws BoundViolated.
SectorBound mid_ell_check(int ell_lo = 6, int ell_hi = 69, int n_boundary = 151,
                          double threshold = kMidEllThreshold);

// ---- small ell ---------------------------------------------------------------

/// Pairing of the X rows (Jacobi index) with the Y entries (kappa index).
///  Shifted: X from index 0, Y_i = 1 + 2 kappa_{i+2, ell}.
///  Aligned: both start at the first mode not killed by the conservation
///           constraints: 2 for ell = 0, 1 for ell = 1, 0 otherwise.
enum class IndexConvention { Shifted, Aligned };
std::string to_string(IndexConvention c);
IndexConvention parse_convention(const std::string& s);

struct IndexOffsets {
  int x_start;
  int y_start;
};
IndexOffsets index_offsets(int ell, IndexConvention c);

/// Z = (XY + YX)/2 restricted to the first `size` basis functions.
TridiagMatrix build_Z(int ell, int size, IndexConvention c = IndexConvention::Shifted);

struct SmallEllOptions {
  IndexConvention convention = IndexConvention::Shifted;
  int block = 5;
};

/// Largest kappa_{m,ell} over m >= m_start (signed), with its location.
std::pair<double, int> tail_kappa_max(int ell, int m_start);

/// Half the top eigenvalue of [[B, r], [r, T]].
double two_by_two_bound(double block, double remainder, double tail);

/// Evidence keys: block_top, remainder, tail_kappa, tail_kappa_n, tail_norm,
/// tail, coupled_top. Throws DomainError outside 0 <= ell <= 5,
/// BoundViolated if the result reaches 3/4.
SectorBound small_ell_bound(int ell, const SmallEllOptions& options = {});

// ---- assembly ----------------------------------------------------------------

struct GapReport {
  std::vector<SectorBound> sectors;
  double mu3;
  double gap;
  std::string binding;
  /// lambda bounds of the large-ell pipeline at the ells checked for monotonicity.
  std::vector<std::pair<int, double>> large_ell_trend;
  bool large_ell_monotone;
};

struct GapOptions {
  SmallEllOptions small;
  LargeEllOptions large;
  int large_ell = 70;
  std::vector<int> trend_ells{70, 100, 150, 200};
};

/// mu3 = max over sectors, gap = 3/4 - mu3. Throws BoundViolated if any
/// sector bound is >= 3/4, DomainError for an empty list.
GapReport assemble_gap(std::span<const SectorBound> sectors);

/// Runs every pipeline (antisymmetric, ell = 0..5, mid, large) and assembles.
GapReport assemble_gap(const GapOptions& options = {});

// ---- entropy production ------------------------------------------------------

struct EntropyProductionResult {
  int N;
  int alpha;
  boost::rational<long long> C;
  boost::rational<long long> gap_bound;
  bool degenerate;
};

/// C_{N,2} = 1 - 2N/(N-1)^2, C_{N,0} = (N-3)/(N-1); gap bound C/2.
/// Throws DomainError for N < 2 or alpha not in {0, 2}.
EntropyProductionResult entropy_production_constant(int N, int alpha);

}  // namespace kacgap::gapbounds
