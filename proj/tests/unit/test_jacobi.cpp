#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "kacgap/error.hpp"
#include "kacgap/exact.hpp"
#include "kacgap/jacobi.hpp"
#include "oracles.hpp"

using namespace kacgap::jacobi;

namespace {

double oracle_eval(double alpha_num2, double beta_num2, int n, oracle::Rational x) {
  // alpha, beta given as twice their value so they stay exact
  const oracle::Rational a(static_cast<long long>(alpha_num2), 2);
  const oracle::Rational b(static_cast<long long>(beta_num2), 2);
  return oracle::jacobi_sum(a, b, n, x).convert_to<double>();
}

}  // namespace

TEST(JacobiParams, Validation) {
  EXPECT_THROW(JacobiParams(-1.0, 0.0), kacgap::DomainError);
  EXPECT_THROW(JacobiParams(0.0, -1.5), kacgap::DomainError);
  EXPECT_THROW(JacobiParams::sector(-1), kacgap::DomainError);
  const auto p = JacobiParams::sector(3);
  EXPECT_EQ(p.alpha(), 0.5);
  EXPECT_EQ(p.beta(), 3.5);
  ASSERT_TRUE(p.ell().has_value());
  EXPECT_EQ(*p.ell(), 3);
  EXPECT_FALSE(JacobiParams(0.5, 0.5).ell().has_value());
}

TEST(JacobiEval, Examples) {
  const JacobiParams p(0.5, 1.5);
  EXPECT_EQ(eval(p, 0, -0.5), 1.0);
  EXPECT_DOUBLE_EQ(eval(p, 1, 1.0), 1.5);
  EXPECT_NEAR(eval(JacobiParams(0.5, 0.5), 2, -0.5), 0.0, 1e-15);
}

TEST(JacobiEval, DomainErrors) {
  const JacobiParams p(0.5, 0.5);
  EXPECT_THROW(eval(p, -1, 0.0), kacgap::DomainError);
  EXPECT_THROW(eval(p, 2, 1.5), kacgap::DomainError);
  EXPECT_THROW(eval(p, 2, -1.0001), kacgap::DomainError);
}

TEST(JacobiEval, MatchesExplicitSumOracle) {
  const std::vector<oracle::Rational> xs{{-1}, {-3, 4}, {-1, 2}, {0}, {1, 3}, {7, 8}, {1}};
  for (int a2 : {1, -1, 3}) {
    for (int b2 : {1, 3, 9, 21}) {
      const JacobiParams p(a2 / 2.0, b2 / 2.0);
      for (int n = 0; n <= 20; ++n) {
        for (const auto& x : xs) {
          const double ref = oracle_eval(a2, b2, n, x);
          const double got = eval(p, n, x.convert_to<double>());
          EXPECT_NEAR(got, ref, 1e-12 * std::max(1.0, std::abs(ref)))
              << "alpha=" << a2 / 2.0 << " beta=" << b2 / 2.0 << " n=" << n;
        }
      }
    }
  }
}

TEST(JacobiEval, ScaledValueSurvivesHighDegree) {
  const auto p = JacobiParams::sector(40);
  const ScaledValue v = eval_scaled(p, 3000, -1.0);
  // |P_n(-1)| = C(n+beta, n): finite only through the exponent
  const double log_expected = std::lgamma(3000 + 40.5 + 1) - std::lgamma(3001) - std::lgamma(41.5);
  const double log_got = std::log(std::abs(v.mantissa)) + v.exponent * std::log(2.0);
  EXPECT_NEAR(log_got, log_expected, 1e-9 * log_expected);
}

TEST(JacobiValueAtOne, Examples) {
  const JacobiParams p(0.5, 1.5);
  EXPECT_EQ(value_at_one(p, 0), 1.0);
  EXPECT_DOUBLE_EQ(value_at_one(p, 1), 1.5);
  EXPECT_DOUBLE_EQ(value_at_one(p, 2), 15.0 / 8.0);
}

TEST(JacobiValueAtOne, AgreesWithRecurrenceAtOne) {
  for (int ell : {0, 3, 10}) {
    const auto p = JacobiParams::sector(ell);
    for (int n = 0; n <= 60; ++n) {
      EXPECT_NEAR(eval(p, n, 1.0) / value_at_one(p, n), 1.0, 1e-12);
    }
  }
}

TEST(JacobiNorm, Examples) {
  EXPECT_NEAR(norm_sq(JacobiParams(0.5, 0.5), 0), std::numbers::pi / 2.0, 1e-14);
  const auto p0 = JacobiParams::sector(0);
  EXPECT_NEAR(norm_sq(p0, 0) / norm_sq(p0, 1), 16.0 / 9.0, 1e-13);
}

TEST(JacobiNorm, MatchesQuadrature) {
  for (int ell : {0, 2, 7}) {
    const auto p = JacobiParams::sector(ell);
    for (int n : {0, 1, 5, 12}) {
      const double q = oracle::weighted_integral(
          [&](double x) {
            const double v = eval(p, n, x);
            return v * v;
          },
          p.alpha(), p.beta(), 4000);
      EXPECT_NEAR(norm_sq(p, n) / q, 1.0, 1e-9) << "ell=" << ell << " n=" << n;
    }
  }
}

TEST(JacobiNorm, LogNormLargeDegreeFinite) {
  const auto p = JacobiParams::sector(500);
  EXPECT_TRUE(std::isfinite(log_norm_sq(p, 5000)));
}

TEST(Orthonormality, TrapezoidOracle) {
  for (int ell = 0; ell <= 10; ++ell) {
    const auto p = JacobiParams::sector(ell);
    for (int i = 0; i <= 20; ++i) {
      for (int j = i; j <= 20; ++j) {
        const double v = oracle::weighted_integral(
            [&](double x) { return orthonormal_eval(p, i, x) * orthonormal_eval(p, j, x); }, p.alpha(),
            p.beta(), 400);
        EXPECT_NEAR(v, i == j ? 1.0 : 0.0, 1e-8) << "ell=" << ell << " i=" << i << " j=" << j;
      }
    }
  }
}

TEST(ThreeTerm, Examples) {
  for (int n : {0, 1, 7, 500}) {
    const auto c = three_term_coeffs(0, n);
    EXPECT_EQ(c.a, 0.0);
    EXPECT_NEAR(c.b, 0.5, 1e-15);
  }
  EXPECT_DOUBLE_EQ(three_term_coeffs(1, 0).a, 0.25);
  const auto c4 = three_term_coeffs(4, 0);
  EXPECT_DOUBLE_EQ(c4.a_tilde, 16.0 / 49.0);
  EXPECT_DOUBLE_EQ(c4.a, 4.0 / 7.0);
  EXPECT_TRUE(c4.a_tilde_binding);
  EXPECT_FALSE(three_term_coeffs(3, 0).a_tilde_binding);
}

TEST(ThreeTerm, ExactRationalAgreement) {
  for (int ell = 0; ell <= 12; ++ell) {
    for (int n = 0; n <= 40; ++n) {
      const auto c = three_term_coeffs(ell, n);
      EXPECT_NEAR(c.a, kacgap::exact::to_double(kacgap::exact::a_coeff(ell, n)), 1e-15);
      EXPECT_NEAR(c.b * c.b, kacgap::exact::to_double(kacgap::exact::b_squared(ell, n)), 1e-14);
    }
  }
}

TEST(ThreeTerm, ClosedFormMatchesGeneralMultiplicationCoefficients) {
  for (int ell : {0, 1, 4, 30, 70}) {
    const auto p = JacobiParams::sector(ell);
    for (int n = 0; n <= 300; ++n) {
      const auto m = multiplication_coeffs(p, n);
      const auto c = three_term_coeffs(ell, n);
      EXPECT_NEAR(c.a, m.a, 1e-12) << "ell=" << ell << " n=" << n;
      EXPECT_NEAR(c.b, m.b, 1e-12) << "ell=" << ell << " n=" << n;
    }
  }
}

TEST(ThreeTerm, SymmetryCEqualsPreviousB) {
  for (double a : {0.5, -0.3, 2.0}) {
    for (double b : {0.5, 3.5, 10.0}) {
      const JacobiParams p(a, b);
      for (int n = 1; n <= 60; ++n) {
        EXPECT_NEAR(multiplication_coeffs(p, n).c, multiplication_coeffs(p, n - 1).b, 1e-13);
      }
    }
  }
  EXPECT_EQ(multiplication_coeffs(JacobiParams(0.5, 0.5), 0).c, 0.0);
}

TEST(ThreeTerm, IdentityResidualOnGrid) {
  std::vector<double> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(-1.0 + 2.0 * i / 99.0);
  double worst = 0.0;
  for (int ell = 0; ell <= 70; ++ell) {
    const auto p = JacobiParams::sector(ell);
    std::vector<MultiplicationCoeffs> mc;
    std::vector<double> log_norm;
    for (int n = 0; n <= 201; ++n) {
      mc.push_back(multiplication_coeffs(p, n));
      // chained ratios keep neighbouring norms consistent to a few ulps
      log_norm.push_back(n == 0 ? 0.5 * log_norm_sq(p, 0)
                                : log_norm.back() + 0.5 * std::log(norm_sq_ratio(p, n - 1)));
    }
    for (double x : xs) {
      Recurrence rec(p, x);
      std::vector<double> pn;
      for (int n = 0; n <= 201; ++n) {
        const ScaledValue v = rec.current();
        pn.push_back(std::ldexp(v.mantissa, static_cast<int>(v.exponent)) * std::exp(-log_norm[static_cast<std::size_t>(n)]));
        rec.advance();
      }
      for (int n = 0; n <= 200; ++n) {
        const auto u = static_cast<std::size_t>(n);
        const double prev = n == 0 ? 0.0 : mc[u - 1].b * pn[u - 1];
        const double rhs = prev + mc[u].a * pn[u] + mc[u].b * pn[u + 1];
        const double res = std::abs(x * pn[u] - rhs) / std::max(1.0, std::abs(pn[u + 1]));
        worst = std::max(worst, res);
      }
    }
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(ThreeTerm, BoundDominance) {
  for (int ell = 0; ell <= 1000; ++ell) {
    for (int n = 0; n <= 10000; ++n) {
      const double dn = n;
      const double s = 2.0 * dn + ell;
      const double b2 = 4.0 * (dn + 1) * (dn + 1.5) * (dn + ell + 1.5) * (dn + ell + 2) /
                        ((s + 2) * (s + 3) * (s + 3) * (s + 4));
      const double bt = b_tilde(ell, dn);
      ASSERT_LE(std::sqrt(b2), bt + 1e-15) << "ell=" << ell << " n=" << n;
      ASSERT_LE(b2, 0.25 + 1e-15) << "ell=" << ell << " n=" << n;
      if (ell >= 4) {
        const double a = static_cast<double>(ell) * (ell + 1) / ((s + 1) * (s + 3));
        ASSERT_GE(a + 1e-15, a_tilde(ell, dn)) << "ell=" << ell << " n=" << n;
      }
    }
  }
}

TEST(ThreeTerm, BTildeMonotonicity) {
  for (int n = 0; n <= 200; ++n) {
    for (int ell = 0; ell < 300; ++ell) {
      EXPECT_LE(b_tilde(ell + 1, n), b_tilde(ell, n) + 1e-15);
    }
  }
  for (int ell = 1; ell <= 200; ++ell) {
    const double limit = (2.0 * ell * ell + 3.0 * ell - 9.0) / 6.0;
    for (int n = 0; n + 1 <= limit; ++n) {
      EXPECT_GE(b_tilde(ell, n + 1), b_tilde(ell, n) - 1e-15) << "ell=" << ell << " n=" << n;
    }
  }
}

TEST(ThreeTerm, AssertedRangesOfCoefficients) {
  for (int ell = 0; ell <= 200; ell += 7) {
    for (int n = 0; n <= 2000; n += 13) {
      const auto c = three_term_coeffs(ell, n);
      EXPECT_GE(c.a, 0.0);
      EXPECT_LT(c.a, 1.0);
      EXPECT_GT(c.b, 0.0);
      EXPECT_LT(c.b, 1.0);
    }
  }
}

TEST(ThreeTerm, DeterministicPure) {
  const auto a = three_term_coeffs(17, 123);
  const auto b = three_term_coeffs(17, 123);
  EXPECT_EQ(a.a, b.a);
  EXPECT_EQ(a.b, b.b);
}

TEST(JacobiNorm, RatioMatchesGammaForm) {
  for (int ell : {0, 3, 40}) {
    const auto p = JacobiParams::sector(ell);
    for (int n = 0; n <= 200; ++n) {
      const double via_gamma = std::exp(log_norm_sq(p, n + 1) - log_norm_sq(p, n));
      EXPECT_NEAR(norm_sq_ratio(p, n), via_gamma, 1e-12 * via_gamma) << "ell=" << ell << " n=" << n;
    }
  }
  EXPECT_NEAR(norm_sq_ratio(JacobiParams::sector(0), 0), 9.0 / 16.0, 1e-15);
}
