#include "kacgap/jacobi.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kacgap/error.hpp"
#include "kacgap/special.hpp"

namespace kacgap::jacobi {

namespace {

constexpr double kRescaleAbove = 1e150;
constexpr double kRescaleBelow = 1e-150;
constexpr int kRescaleBits = 512;

void check_degree(int n) {
  if (n < 0) {
    throw DomainError("jacobi: negative degree " + std::to_string(n));
  }
}

void check_point(double x) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw DomainError("jacobi: evaluation point outside [-1, 1]");
  }
}

// Keeps (prev, curr) in a comfortable range by exact power-of-two rescaling.
void rescale(double& prev, double& curr, long& exponent) {
  const double mag = std::max(std::abs(prev), std::abs(curr));
  if (mag > kRescaleAbove) {
    prev = std::ldexp(prev, -kRescaleBits);
    curr = std::ldexp(curr, -kRescaleBits);
    exponent += kRescaleBits;
  } else if (mag != 0.0 && mag < kRescaleBelow) {
    prev = std::ldexp(prev, kRescaleBits);
    curr = std::ldexp(curr, kRescaleBits);
    exponent -= kRescaleBits;
  }
}

}  // namespace

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("jacobi: weight exponents must exceed -1");
  }
}

JacobiParams JacobiParams::sector(int ell) {
  if (ell < 0) {
    throw DomainError("jacobi: negative angular index " + std::to_string(ell));
  }
  JacobiParams p(0.5, ell + 0.5);
  p.ell_ = ell;
  return p;
}

double ScaledValue::value() const { return std::ldexp(mantissa, static_cast<int>(exponent)); }

double ScaledValue::value_shifted(long shift) const {
  return std::ldexp(mantissa, static_cast<int>(exponent + shift));
}

RecurrenceCoeffs recurrence_coeffs(const JacobiParams& p, int n) {
  check_degree(n);
  const double a = p.alpha();
  const double b = p.beta();
  const double nn = n;
  const double s = 2.0 * nn + a + b;
  const double denom = 2.0 * (nn + 1.0) * (nn + a + b + 1.0);
  RecurrenceCoeffs c{};
  c.A = (s + 1.0) * (s + 2.0) / denom;
  // At n = 0 the factor (s+1)/s collapses; use the P_1 closed form instead.
  if (n == 0) {
    c.A = 0.5 * (a + b + 2.0);
    c.B = 0.5 * (a - b);
    c.C = 0.0;
    return c;
  }
  c.B = (a * a - b * b) * (s + 1.0) / (denom * s);
  c.C = -2.0 * (nn + a) * (nn + b) * (s + 2.0) / (denom * s);
  return c;
}

Recurrence::Recurrence(const JacobiParams& p, double x) : params_(p), x_(x) {
  check_point(x);
}

void Recurrence::advance() {
  const RecurrenceCoeffs c = recurrence_coeffs(params_, n_);
  const double next = (c.A * x_ + c.B) * curr_ + c.C * prev_;
  prev_ = curr_;
  curr_ = next;
  ++n_;
  rescale(prev_, curr_, exponent_);
}

RatioRecurrence::RatioRecurrence(const JacobiParams& p, double x) : params_(p), x_(x) {
  check_point(x);
}

void RatioRecurrence::advance() {
  // r_n = P_n(x)/P_n(1), d_n = P_n(1)/P_{n-1}(1) = (alpha+n)/n.
  const RecurrenceCoeffs c = recurrence_coeffs(params_, n_);
  const double alpha = params_.alpha();
  const double d_next = (alpha + n_ + 1.0) / (n_ + 1.0);
  double next = (c.A * x_ + c.B) * curr_ / d_next;
  if (n_ > 0) {
    const double d_curr = (alpha + n_) / n_;
    next += c.C * prev_ / (d_curr * d_next);
  }
  prev_ = curr_;
  curr_ = next;
  ++n_;
  rescale(prev_, curr_, exponent_);
}

ScaledValue eval_scaled(const JacobiParams& p, int n, double x) {
  check_degree(n);
  Recurrence rec(p, x);
  while (rec.degree() < n) {
    rec.advance();
  }
  return rec.current();
}

double eval(const JacobiParams& p, int n, double x) { return eval_scaled(p, n, x).value(); }

double value_at_one(const JacobiParams& p, int n) {
  check_degree(n);
  double v = 1.0;
  for (int k = 1; k <= n; ++k) {
    v *= (p.alpha() + k) / k;
  }
  return v;
}

ScaledValue ratio_to_one(const JacobiParams& p, int n, double x) {
  check_degree(n);
  RatioRecurrence rec(p, x);
  while (rec.degree() < n) {
    rec.advance();
  }
  return rec.current();
}

double log_norm_sq(const JacobiParams& p, int n) {
  check_degree(n);
  using special::log_gamma;
  const double a = p.alpha();
  const double b = p.beta();
  const double log2 = std::numbers::ln2;
  if (n == 0) {
    // 2^{a+b+1} Gamma(a+1) Gamma(b+1) / Gamma(a+b+2)
    return (a + b + 1.0) * log2 + log_gamma(a + 1.0) + log_gamma(b + 1.0) -
           log_gamma(a + b + 2.0);
  }
  const double nn = n;
  return (a + b + 1.0) * log2 - std::log(2.0 * nn + a + b + 1.0) +
         log_gamma(nn + a + 1.0) + log_gamma(nn + b + 1.0) - log_gamma(nn + a + b + 1.0) -
         log_gamma(nn + 1.0);
}

double norm_sq(const JacobiParams& p, int n) { return std::exp(log_norm_sq(p, n)); }

double norm_sq_ratio(const JacobiParams& p, int n) {
  check_degree(n);
  const double a = p.alpha();
  const double b = p.beta();
  const double nn = n;
  const double s = nn + a + b + 1.0;
  if (n == 0 && std::abs(s) < 1e-12) {
    return std::exp(log_norm_sq(p, 1) - log_norm_sq(p, 0));
  }
  return (2.0 * nn + a + b + 1.0) / (2.0 * nn + a + b + 3.0) * (nn + a + 1.0) * (nn + b + 1.0) /
         (s * (nn + 1.0));
}

double orthonormal_eval(const JacobiParams& p, int n, double x) {
  const ScaledValue v = eval_scaled(p, n, x);
  if (v.mantissa == 0.0) {
    return 0.0;
  }
  const double log_mag = std::log(std::abs(v.mantissa)) +
                         static_cast<double>(v.exponent) * std::numbers::ln2 -
                         0.5 * log_norm_sq(p, n);
  return std::copysign(std::exp(log_mag), v.mantissa);
}

MultiplicationCoeffs multiplication_coeffs(const JacobiParams& p, int n) {
  check_degree(n);
  // x P_n = (1/A_n) P_{n+1} - (B_n/A_n) P_n - (C_n/A_n) P_{n-1}, then
  // rescale each term by the ratio of norms.
  const RecurrenceCoeffs c = recurrence_coeffs(p, n);
  MultiplicationCoeffs m{};
  m.a = -c.B / c.A;
  m.b = std::sqrt(norm_sq_ratio(p, n)) / c.A;
  m.c = n == 0 ? 0.0 : -c.C / c.A / std::sqrt(norm_sq_ratio(p, n - 1));
  return m;
}

double a_tilde(int ell, double n) {
  const double r = ell / (2.0 * n + ell + 3.0);
  return r * r;
}

double b_tilde(int ell, double n) {
  const double d = 2.0 * n + ell + 3.0;
  return (1.0 - ell / d) * (1.0 - n / d);
}

ThreeTermCoeffs three_term_coeffs(int ell, int n) {
  check_degree(n);
  if (ell < 0) {
    throw DomainError("three_term_coeffs: negative angular index");
  }
  const double l = ell;
  const double nn = n;
  const double s = 2.0 * nn + l;
  ThreeTermCoeffs t{};
  t.n = n;
  t.ell = ell;
  t.a = l * (l + 1.0) / ((s + 1.0) * (s + 3.0));
  const double radicand = (nn + 1.0) * (nn + 1.5) * (nn + l + 1.5) * (nn + l + 2.0) /
                          ((s + 2.0) * (s + 3.0) * (s + 3.0) * (s + 4.0));
  t.b = 2.0 * std::sqrt(radicand);
  t.a_tilde = a_tilde(ell, nn);
  t.b_tilde = b_tilde(ell, nn);
  t.a_tilde_binding = ell >= 4;
  return t;
}

}  // namespace kacgap::jacobi
