#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace kacgap {

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
struct TridiagMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  TridiagMatrix() = default;
  /// Throws DomainError unless offdiag.size() + 1 == diag.size() (or both
  /// are empty) and every entry is finite.
  TridiagMatrix(std::vector<double> d, std::vector<double> e);

  std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly below x (Sturm sequence via the LDL^T pivots).
std::size_t sturm_count(const TridiagMatrix& m, double x);

/// [lo, hi] containing every eigenvalue.
std::pair<double, double> gershgorin_interval(const TridiagMatrix& m);

/// Largest eigenvalue by bisection on the Sturm count, started from the
/// Gershgorin interval. Absolute error <= tol; at most 200 halvings.
/// Throws DomainError for an empty matrix or tol <= 0.
double tridiag_top_eigenvalue(const TridiagMatrix& m, double tol = 1e-12);

}  // namespace kacgap
