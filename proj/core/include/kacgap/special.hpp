#pragma once

namespace kacgap::special {

/// log|Gamma(x)| from a Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula for x < 1/2. Relative error is below 1e-13 away from
/// the zeros of log-Gamma; x = 1 and x = 2 return exactly 0.
/// Throws DomainError at the poles (x a non-positive integer) and for NaN/inf.
double log_gamma(double x);

/// log(Gamma(a) / Gamma(b)), evaluated without forming either Gamma value.
double log_gamma_ratio(double a, double b);

}  // namespace kacgap::special
