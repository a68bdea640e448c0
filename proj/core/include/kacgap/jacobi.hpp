#pragma once

#include <optional>

namespace kacgap::jacobi {

/// Exponents (alpha, beta) of the weight (1-x)^alpha (1+x)^beta on [-1, 1].
/// Sector parameters for the three-particle problem are alpha = 1/2,
/// beta = ell + 1/2.
class JacobiParams {
 public:
  /// Throws DomainError unless alpha > -1 and beta > -1.
  JacobiParams(double alpha, double beta);

  /// alpha = 1/2, beta = ell + 1/2. Throws DomainError for ell < 0.
  static JacobiParams sector(int ell);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  std::optional<int> ell() const noexcept { return ell_; }

 private:
  double alpha_;
  double beta_;
  std::optional<int> ell_;
};

/// A double carrying an extra binary exponent: value() == mantissa * 2^exponent.
/// Rescaling by powers of two is exact, so recurrences can run to high degree
/// without overflow and without perturbing the result.
struct ScaledValue {
  double mantissa = 0.0;
  long exponent = 0;

  double value() const;
  /// mantissa * 2^(exponent + shift)
  double value_shifted(long shift) const;
};

/// Coefficients of P_{n+1} = (A_n x + B_n) P_n + C_n P_{n-1} (Rodrigues normalization).
struct RecurrenceCoeffs {
  double A;
  double B;
  double C;
};

RecurrenceCoeffs recurrence_coeffs(const JacobiParams& p, int n);

/// Steps through P_n(x) for n = 0, 1, 2, ... at fixed x, rescaling by 2^-512
/// whenever |P_n| exceeds 1e150.
class Recurrence {
 public:
  Recurrence(const JacobiParams& p, double x);

  int degree() const noexcept { return n_; }
  ScaledValue current() const noexcept { return {curr_, exponent_}; }
  void advance();

 private:
  JacobiParams params_;
  double x_;
  int n_ = 0;
  double prev_ = 0.0;
  double curr_ = 1.0;
  long exponent_ = 0;
};

/// Steps through P_n(x) / P_n(1). Uses P_{n+1}(1) / P_n(1) = (alpha+n+1)/(n+1),
/// so the denominator never goes through the x-recurrence.
class RatioRecurrence {
 public:
  RatioRecurrence(const JacobiParams& p, double x);

  int degree() const noexcept { return n_; }
  ScaledValue current() const noexcept { return {curr_, exponent_}; }
  void advance();

 private:
  JacobiParams params_;
  double x_;
  int n_ = 0;
  double prev_ = 0.0;
  double curr_ = 1.0;
  long exponent_ = 0;
};

/// P_n^{(alpha,beta)}(x). Throws DomainError for n < 0 or x outside [-1, 1].
double eval(const JacobiParams& p, int n, double x);
ScaledValue eval_scaled(const JacobiParams& p, int n, double x);

/// P_n(1) = prod_{k=1..n} (alpha+k)/k.
double value_at_one(const JacobiParams& p, int n);

/// P_n(x) / P_n(1).
ScaledValue ratio_to_one(const JacobiParams& p, int n, double x);

/// ||P_n||^2 with respect to the Jacobi weight, via log-Gamma.
double log_norm_sq(const JacobiParams& p, int n);
double norm_sq(const JacobiParams& p, int n);
/// ||P_{n+1}||^2 / ||P_n||^2 as a product of rational factors (no gamma functions).
double norm_sq_ratio(const JacobiParams& p, int n);

/// p_n(x) = P_n(x) / ||P_n||.
double orthonormal_eval(const JacobiParams& p, int n, double x);

/// Coefficients of x p_n = b_{n-1} p_{n-1} + a_n p_n + b_n p_{n+1} computed
/// from the Rodrigues recurrence and the norm ratios (valid for any alpha, beta).
struct MultiplicationCoeffs {
  double a;
  double b;
  double c;  ///< coefficient of p_{n-1}; equals b_{n-1}
};
MultiplicationCoeffs multiplication_coeffs(const JacobiParams& p, int n);

/// Closed-form coefficients for the sector (alpha = 1/2, beta = ell + 1/2),
/// with the monotone envelopes a~ <= a (for ell >= 4) and b <= b~.
struct ThreeTermCoeffs {
  int n;
  int ell;
  double a;
  double b;
  double a_tilde;
  double b_tilde;
  /// a >= a~ is only claimed for ell >= 4.
  bool a_tilde_binding;
};

ThreeTermCoeffs three_term_coeffs(int ell, int n);

double a_tilde(int ell, double n);
double b_tilde(int ell, double n);

}  // namespace kacgap::jacobi
