#include "kacgap/exact.hpp"

#include "kacgap/error.hpp"

namespace kacgap::exact {

namespace mp = boost::multiprecision;

namespace {

Rational R(long long num, long long den = 1) { return Rational(num, den); }

Rational sector_beta(int ell) { return R(2 * ell + 1, 2); }

}  // namespace

Rational jacobi(const Rational& a, const Rational& b, int n, const Rational& x) {
  if (n < 0) {
    throw DomainError("exact::jacobi: negative degree");
  }
  Rational prev = 1;
  if (n == 0) {
    return prev;
  }
  Rational curr = (a + 1) + (a + b + 2) * (x - 1) / 2;
  for (int k = 1; k < n; ++k) {
    const Rational s = 2 * k + a + b;
    const Rational den = 2 * (k + 1) * (k + a + b + 1) * s;
    const Rational A = (s + 1) * (s + 2) * s / den;
    const Rational B = (a * a - b * b) * (s + 1) / den;
    const Rational C = -2 * (k + a) * (k + b) * (s + 2) / den;
    const Rational next = (A * x + B) * curr + C * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

Rational kappa(int n, int ell) {
  if (n < 0 || ell < 0) {
    throw DomainError("exact::kappa: negative index");
  }
  const Rational alpha = R(1, 2);
  const Rational beta = sector_beta(ell);
  Rational at_one = 1;
  for (int k = 1; k <= n; ++k) {
    at_one *= (alpha + k) / k;
  }
  Rational scale = 1;
  for (int i = 0; i < ell; ++i) {
    scale *= R(-1, 2);
  }
  return jacobi(alpha, beta, n, R(-1, 2)) / at_one * scale;
}

Rational a_coeff(int ell, int n) {
  return R(static_cast<long long>(ell) * (ell + 1)) /
         (R(2LL * n + ell + 1) * R(2LL * n + ell + 3));
}

Rational b_squared(int ell, int n) {
  const Rational num = R(n + 1) * R(2 * n + 3, 2) * R(2 * n + 2 * ell + 3, 2) * R(n + ell + 2);
  const Rational d = R(2LL * n + ell + 3);
  const Rational den = R(2LL * n + ell + 2) * d * d * R(2LL * n + ell + 4);
  return 4 * num / den;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) {
    return std::nullopt;
  }
  const mp::cpp_int num = mp::numerator(q);
  const mp::cpp_int den = mp::denominator(q);
  const mp::cpp_int rn = mp::sqrt(num);
  const mp::cpp_int rd = mp::sqrt(den);
  if (rn * rn != num || rd * rd != den) {
    return std::nullopt;
  }
  return Rational(rn, rd);
}

std::optional<Rational> b_coeff(int ell, int n) { return rational_sqrt(b_squared(ell, n)); }

RationalTridiag build_Z(int ell, int size, int x_start, int y_start) {
  if (size < 2 || x_start < 0 || y_start < 0) {
    throw DomainError("exact::build_Z: need size >= 2 and nonnegative offsets");
  }
  std::vector<Rational> y;
  for (int i = 0; i < size; ++i) {
    y.push_back(1 + 2 * kappa(y_start + i, ell));
  }
  RationalTridiag z;
  for (int i = 0; i < size; ++i) {
    z.diag.push_back((1 - a_coeff(ell, x_start + i)) / 2 * y[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i + 1 < size; ++i) {
    const auto b = b_coeff(ell, x_start + i);
    if (!b) {
      throw DomainError("exact::build_Z: irrational off-diagonal coefficient");
    }
    const Rational x_off = -*b / 2;
    z.offdiag.push_back(x_off * (y[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i) + 1]) / 2);
  }
  return z;
}

std::string to_string(const Rational& q) {
  if (mp::denominator(q) == 1) {
    return mp::numerator(q).str();
  }
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace kacgap::exact
