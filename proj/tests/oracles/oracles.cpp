#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

Rational binomial(const Rational& a, int k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (int i = 0; i < k; ++i) {
    r *= (a - i);
    r /= (i + 1);
  }
  return r;
}

Rational jacobi_sum(const Rational& alpha, const Rational& beta, int n, const Rational& x) {
  const Rational lo = (x - 1) / 2;
  const Rational hi = (x + 1) / 2;
  Rational sum = 0;
  for (int s = 0; s <= n; ++s) {
    Rational term = binomial(alpha + n, n - s) * binomial(beta + n, s);
    for (int i = 0; i < s; ++i) term *= lo;
    for (int i = 0; i < n - s; ++i) term *= hi;
    sum += term;
  }
  return sum;
}

Rational kappa(int n, int ell) {
  const Rational alpha(1, 2);
  const Rational beta(2 * ell + 1, 2);
  Rational scale = 1;
  for (int i = 0; i < ell; ++i) scale *= Rational(-1, 2);
  return jacobi_sum(alpha, beta, n, Rational(-1, 2)) / jacobi_sum(alpha, beta, n, Rational(1)) * scale;
}

double kappa_double(int n, int ell) { return kappa(n, ell).convert_to<double>(); }

double weighted_integral(const std::function<double(double)>& f, double alpha, double beta, int m) {
  const double h = std::numbers::pi / m;
  double sum = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double th = i * h;
    const double x = std::cos(th);
    const double w = std::pow(1.0 - x, alpha) * std::pow(1.0 + x, beta) * std::sin(th);
    sum += (i == 0 || i == m ? 0.5 : 1.0) * f(x) * w;
  }
  return sum * h;
}

namespace {

double continuant(const std::vector<double>& d, const std::vector<double>& e, double lambda) {
  // det of the leading k x k block of T - lambda I, scaled to stay finite
  double p_prev = 1.0;
  double p = d[0] - lambda;
  for (std::size_t k = 1; k < d.size(); ++k) {
    const double next = (d[k] - lambda) * p - e[k - 1] * e[k - 1] * p_prev;
    p_prev = p;
    p = next;
    const double s = std::max(std::abs(p), std::abs(p_prev));
    if (s > 1e100) {
      p /= s;
      p_prev /= s;
    }
  }
  return p;
}

}  // namespace

double charpoly_top_root(const std::vector<double>& d, const std::vector<double>& e) {
  double hi = -1e300;
  double lo = 1e300;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < d.size()) r += std::abs(e[i]);
    hi = std::max(hi, d[i] + r);
    lo = std::min(lo, d[i] - r);
  }
  hi += 1e-9;
  lo -= 1e-9;
  const int steps = 200'000;
  const double h = (hi - lo) / steps;
  // det(T - lambda I) has sign (-1)^n above the top root.
  double a = hi;
  double fa = continuant(d, e, a);
  for (int i = 1; i <= steps; ++i) {
    const double b = hi - i * h;
    const double fb = continuant(d, e, b);
    if (fb == 0.0) return b;
    if ((fa > 0) != (fb > 0)) {
      double x0 = b, x1 = a;
      double f0 = fb;
      for (int it = 0; it < 200 && x1 - x0 > 1e-15 * (1.0 + std::abs(x1)); ++it) {
        const double mid = 0.5 * (x0 + x1);
        const double fm = continuant(d, e, mid);
        if ((fm > 0) == (f0 > 0)) {
          x0 = mid;
          f0 = fm;
        } else {
          x1 = mid;
        }
      }
      return 0.5 * (x0 + x1);
    }
    a = b;
    fa = fb;
  }
  return lo;
}

std::vector<double> dense_jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace oracle
