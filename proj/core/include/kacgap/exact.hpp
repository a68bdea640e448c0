#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kacgap::exact {

using Rational = boost::multiprecision::cpp_rational;

/// P_n^{(alpha,beta)}(x) in exact rational arithmetic (degree recurrence).
Rational jacobi(const Rational& alpha, const Rational& beta, int n, const Rational& x);

/// kappa_{n,ell} as an exact rational.
Rational kappa(int n, int ell);

/// Sector three-term coefficients: a exactly, b through its square.
Rational a_coeff(int ell, int n);
Rational b_squared(int ell, int n);
/// b_{n,ell} when b^2 is the square of a rational (e.g. ell = 0, where b = 1/2).
std::optional<Rational> b_coeff(int ell, int n);

/// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& q);

struct RationalTridiag {
  std::vector<Rational> diag;
  std::vector<Rational> offdiag;
};

/// Z = (XY + YX)/2 with X rows starting at Jacobi index x_start and
/// Y_i = 1 + 2 kappa_{y_start + i, ell}. Throws DomainError when some b
/// in the block is irrational.
RationalTridiag build_Z(int ell, int size, int x_start, int y_start);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

}  // namespace kacgap::exact
