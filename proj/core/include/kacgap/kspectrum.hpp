#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace kacgap::kspectrum {

/// Eigenvalue kappa_{n,ell} of the correlation operator K for three particles:
///
///   kappa_{n,ell} = P_n^{(1/2, ell+1/2)}(-1/2) / P_n^{(1/2, ell+1/2)}(1) * (-1/2)^ell
///
/// This ratio is the reference value every other formula in the library is
/// checked against. Throws DomainError for negative indices.
double kappa(int n, int ell);

/// kappa_{0..n_max, ell} in one pass of the ratio recurrence.
std::vector<double> kappa_row(int ell, int n_max);

/// kappa_hat_{n,ell} = sqrt(8e/3) (n+1)^{-1/4} (n+ell+3/2)^{-1/4}.
double kappa_hat(int n, int ell);

/// kappa~_{n,ell} = sqrt(8e/3) / sqrt(n + sqrt(ell)); dominates kappa_hat for ell >= 4.
double kappa_tilde(double n, int ell);

/// sqrt(8e/3) / sqrt(n+1): an ell-independent majorant of kappa_hat.
double kappa_uniform(double n);

enum class Majorant { Hat, Tilde, Uniform };

double majorant(Majorant which, double n, int ell);
std::string to_string(Majorant which);

/// Dense (ell, n) grid, row-major over ell.
class KappaTable {
 public:
  KappaTable(int n_max, int ell_max);

  int n_max() const noexcept { return n_max_; }
  int ell_max() const noexcept { return ell_max_; }

  double value(int n, int ell) const { return values_[index(n, ell)]; }
  double hat(int n, int ell) const { return hat_[index(n, ell)]; }
  double tilde(int n, int ell) const { return tilde_[index(n, ell)]; }

  std::size_t index(int n, int ell) const;

 private:
  friend KappaTable kappa_table(int, int, std::size_t);

  int n_max_;
  int ell_max_;
  std::vector<double> values_;
  std::vector<double> hat_;
  std::vector<double> tilde_;
};

inline constexpr std::size_t kDefaultCellBudget = 10'000'000;

/// Throws ConfigError when (n_max+1)(ell_max+1) exceeds the cell budget.
/// Rows are filled in parallel; the result does not depend on scheduling.
KappaTable kappa_table(int n_max, int ell_max, std::size_t cell_budget = kDefaultCellBudget);

enum class Monotonicity { Monotone, NotMonotone, Inconclusive };
std::string to_string(Monotonicity m);

struct Mod3Report {
  int ell;
  int n_min;
  int n_max;
  std::array<Monotonicity, 3> by_residue;

  bool all_monotone() const;
};

/// For each residue r, whether kappa_{3k+r, ell} keeps one sign of successive
/// differences across [n_min, n_max]. Windows narrower than 30 are reported
/// as inconclusive.
Mod3Report mod3_monotonicity_check(int ell, int n_min, int n_max);

// ---- identity audit -------------------------------------------------------

struct IdentityAudit {
  std::string name;
  std::string range;
  double max_discrepancy = 0.0;
  int worst_n = 0;
  int worst_ell = 0;
  bool consistent = false;

  std::string verdict() const;
};

struct IdentityAuditReport {
  std::vector<IdentityAudit> rows;

  const IdentityAudit& find(const std::string& name) const;
};

inline constexpr double kAuditTolerance = 1e-10;

/// Names of the audited identities, in report order.
namespace identity {
inline constexpr const char* kZeroClosedForm = "kappa_n0_closed_form_printed";
inline constexpr const char* kZeroShifted = "kappa_n0_closed_form_shifted";
inline constexpr const char* kEllRecurrence = "ell_recurrence_printed";
inline constexpr const char* kEllRecurrenceCorrected = "ell_recurrence_corrected";
inline constexpr const char* kEllOneExpansion = "kappa_n1_expansion";
inline constexpr const char* kEllTwoExpansion = "kappa_n2_expansion_printed";
inline constexpr const char* kEllTwoExpansionCorrected = "kappa_n2_expansion_corrected";
inline constexpr const char* kBinomialClosedForm = "binomial_closed_form";
}  // namespace identity

/// Right-hand sides of the audited identities, exposed for tests.
double kappa_n0_closed_form_printed(int n);
double kappa_n0_closed_form_shifted(int n);
/// kappa_{n,ell} solved from the ell-recurrence given kappa_{n,ell-1}, kappa_{n+1,ell-1}.
double ell_recurrence_printed(int n, int ell, double k_n_prev, double k_n1_prev);
double ell_recurrence_corrected(int n, int ell, double k_n_prev, double k_n1_prev);
/// C_{n,ell}^{(j)} of the binomial closed form.
double binomial_coefficient_c(int n, int ell, int j);

/// Compares every identity against kappa() over n <= n_max, ell <= ell_max.
/// Disagreements are reported, never corrected.
IdentityAuditReport audit_identities(int n_max = 100, int ell_max = 10);

}  // namespace kacgap::kspectrum
