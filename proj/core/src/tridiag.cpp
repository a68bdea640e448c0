#include "kacgap/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kacgap/error.hpp"

namespace kacgap {

TridiagMatrix::TridiagMatrix(std::vector<double> d, std::vector<double> e)
    : diag(std::move(d)), offdiag(std::move(e)) {
  const bool shape_ok = diag.empty() ? offdiag.empty() : offdiag.size() + 1 == diag.size();
  if (!shape_ok) {
    throw DomainError("TridiagMatrix: off-diagonal must be one shorter than the diagonal");
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(diag.begin(), diag.end(), finite) ||
      !std::all_of(offdiag.begin(), offdiag.end(), finite)) {
    throw DomainError("TridiagMatrix: non-finite entry");
  }
}

std::size_t sturm_count(const TridiagMatrix& m, double x) {
  const std::size_t n = m.size();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = i == 0 ? 0.0 : m.offdiag[i - 1] * m.offdiag[i - 1];
    q = m.diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) {
      q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
    }
    if (q < 0.0) {
      ++count;
    }
  }
  return count;
}

std::pair<double, double> gershgorin_interval(const TridiagMatrix& m) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(m.offdiag[i]);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  return {lo, hi};
}

double tridiag_top_eigenvalue(const TridiagMatrix& m, double tol) {
  if (m.size() == 0) {
    throw DomainError("tridiag_top_eigenvalue: empty matrix");
  }
  if (!(tol > 0.0)) {
    throw DomainError("tridiag_top_eigenvalue: tol must be positive");
  }
  auto [lo, hi] = gershgorin_interval(m);
  const double pad = 1e-12 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  lo -= pad;
  hi += pad;
  const std::size_t n = m.size();
  // invariant: count(lo) < n <= count(hi)
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(m, mid) < n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace kacgap
