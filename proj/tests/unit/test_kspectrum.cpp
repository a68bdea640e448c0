#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "kacgap/error.hpp"
#include "kacgap/kspectrum.hpp"
#include "oracles.hpp"

using namespace kacgap::kspectrum;

TEST(Kappa, Examples) {
  EXPECT_EQ(kappa(0, 1), -0.5);
  EXPECT_NEAR(kappa(1, 0), -0.5, 1e-15);
  EXPECT_NEAR(kappa(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(kappa(1, 2), -0.375, 1e-15);
  EXPECT_NEAR(kappa(2, 0), 0.0, 1e-15);
}

TEST(Kappa, ZeroDegreeIsExactPowerOfMinusHalf) {
  double expected = 1.0;
  for (int ell = 0; ell <= 60; ++ell) {
    EXPECT_EQ(kappa(0, ell), expected);
    expected *= -0.5;
  }
}

TEST(Kappa, NegativeIndicesThrow) {
  EXPECT_THROW(kappa(-1, 0), kacgap::DomainError);
  EXPECT_THROW(kappa(0, -1), kacgap::DomainError);
}

TEST(Kappa, MatchesRationalOracle) {
  for (int ell = 0; ell <= 10; ++ell) {
    for (int n = 0; n <= 30; ++n) {
      EXPECT_NEAR(kappa(n, ell), oracle::kappa_double(n, ell), 1e-13) << "n=" << n << " ell=" << ell;
    }
  }
}

TEST(Kappa, ZeroSectorMod3Pattern) {
  for (int n = 0; n <= 2000; ++n) {
    const double expected = std::array<double, 3>{1.0, -1.0, 0.0}[static_cast<std::size_t>(n % 3)] / (n + 1.0);
    EXPECT_NEAR(kappa(n, 0), expected, 1e-13) << n;
  }
}

TEST(Kappa, RowMatchesPointwise) {
  for (int ell : {0, 3, 25}) {
    const auto row = kappa_row(ell, 150);
    for (int n = 0; n <= 150; ++n) {
      EXPECT_EQ(row[static_cast<std::size_t>(n)], kappa(n, ell));
    }
  }
}

TEST(Kappa, DeterministicBitIdentical) {
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(kappa(1234, 17), kappa(1234, 17));
  }
}

TEST(Majorants, Examples) {
  EXPECT_NEAR(kappa_hat(151, 0), 0.2182, 1e-4);
  EXPECT_LE(kappa_hat(151, 0), 0.23);
  EXPECT_NEAR(kappa_hat(151, 6), 0.21610, 1e-5);
  EXPECT_NEAR(kappa_tilde(0, 4), std::sqrt(8.0 * std::exp(1.0) / 3.0) / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(kappa_tilde(0, 4), 1.904, 1e-3);
  EXPECT_LE(kappa_hat(10, 9), kappa_tilde(10, 9));
  EXPECT_GE(kappa_uniform(37.0), kappa_hat(37, 0));
}

TEST(Majorants, HatBelowTildeForEllAtLeastFour) {
  for (int ell = 4; ell <= 400; ++ell) {
    for (int n = 0; n <= 2000; n += 7) {
      EXPECT_LE(kappa_hat(n, ell), kappa_tilde(n, ell) * (1.0 + 1e-15));
    }
  }
}

TEST(Majorants, UniformDominatesHat) {
  for (int ell = 0; ell <= 200; ++ell) {
    for (int n = 0; n <= 500; n += 3) {
      EXPECT_LE(kappa_hat(n, ell), kappa_uniform(n) * (1.0 + 1e-15));
    }
  }
}

TEST(Majorants, NamedDispatch) {
  EXPECT_EQ(majorant(Majorant::Hat, 12, 5), kappa_hat(12, 5));
  EXPECT_EQ(majorant(Majorant::Tilde, 12, 5), kappa_tilde(12, 5));
  EXPECT_EQ(majorant(Majorant::Uniform, 12, 5), kappa_uniform(12));
  EXPECT_EQ(to_string(Majorant::Tilde), "tilde");
}

TEST(KappaTable, FirstRowExample) {
  const auto t = kappa_table(0, 3);
  EXPECT_EQ(t.value(0, 0), 1.0);
  EXPECT_EQ(t.value(0, 1), -0.5);
  EXPECT_EQ(t.value(0, 2), 0.25);
  EXPECT_EQ(t.value(0, 3), -0.125);
}

TEST(KappaTable, CellBudget) {
  EXPECT_THROW(kappa_table(1000, 1000, 1000), kacgap::ConfigError);
  EXPECT_NO_THROW(kappa_table(10, 10, 121));
}

TEST(KappaTable, GridProperties) {
  const auto t = kappa_table(300, 70);
  double min_v = 1.0;
  int min_n = -1, min_ell = -1;
  for (int ell = 0; ell <= 70; ++ell) {
    for (int n = 0; n <= 300; ++n) {
      const double v = t.value(n, ell);
      EXPECT_EQ(v, kappa(n, ell));
      EXPECT_LE(std::abs(v), 1.0);
      EXPECT_LE(std::abs(v), t.hat(n, ell) + 1e-12) << "n=" << n << " ell=" << ell;
      if (ell >= 4) EXPECT_LE(t.hat(n, ell), t.tilde(n, ell) * (1.0 + 1e-15));
      if (n == 0 && ell == 0) continue;
      EXPECT_GE(v, -0.5 - 1e-15);
      EXPECT_LE(v, 0.5 + 1e-15);
      if ((n == 1 && ell == 0) || (n == 0 && ell == 1)) continue;
      if (v < min_v) {
        min_v = v;
        min_n = n;
        min_ell = ell;
      }
    }
  }
  EXPECT_NEAR(min_v, -0.375, 1e-12);
  EXPECT_EQ(min_n, 1);
  EXPECT_EQ(min_ell, 2);
}

TEST(KappaTable, IndependentOfThreadCount) {
  setenv("KACGAP_THREADS", "1", 1);
  const auto serial = kappa_table(200, 40);
  setenv("KACGAP_THREADS", "4", 1);
  const auto parallel = kappa_table(200, 40);
  unsetenv("KACGAP_THREADS");
  for (int ell = 0; ell <= 40; ++ell) {
    for (int n = 0; n <= 200; ++n) {
      EXPECT_EQ(serial.value(n, ell), parallel.value(n, ell));
    }
  }
}

TEST(Mod3, ZeroSectorResidueTwoIsConstant) {
  const auto r = mod3_monotonicity_check(0, 0, 300);
  EXPECT_EQ(r.by_residue[2], Monotonicity::Monotone);
  EXPECT_TRUE(r.all_monotone());
}

TEST(Mod3, EllFiveMonotoneOnWindow) {
  EXPECT_TRUE(mod3_monotonicity_check(5, 100, 300).all_monotone());
}

TEST(Mod3, EllFifteenOnlyEventuallyMonotone) {
  // kappa_{3k+1,15} has an interior minimum at n = 181.
  const auto early = mod3_monotonicity_check(15, 100, 300);
  EXPECT_EQ(early.by_residue[0], Monotonicity::Monotone);
  EXPECT_EQ(early.by_residue[1], Monotonicity::NotMonotone);
  EXPECT_EQ(early.by_residue[2], Monotonicity::Monotone);
  EXPECT_LT(oracle::kappa_double(181, 15), oracle::kappa_double(178, 15));
  EXPECT_LT(oracle::kappa_double(181, 15), oracle::kappa_double(184, 15));
  EXPECT_TRUE(mod3_monotonicity_check(15, 190, 400).all_monotone());
}

TEST(Mod3, NarrowWindowInconclusive) {
  const auto r = mod3_monotonicity_check(5, 100, 120);
  for (auto m : r.by_residue) EXPECT_EQ(m, Monotonicity::Inconclusive);
  EXPECT_FALSE(r.all_monotone());
}

TEST(Audit, Examples) {
  EXPECT_NEAR(-(kappa(0, 0) + kappa(1, 0)), kappa(0, 1), 1e-15);
  EXPECT_NEAR(kappa_n0_closed_form_printed(1), -std::sqrt(3.0) / 4.0, 1e-15);
  EXPECT_NEAR(std::abs(kappa_n0_closed_form_printed(1) - kappa(1, 0)), 0.067, 1e-3);
  EXPECT_NEAR(ell_recurrence_printed(0, 1, kappa(0, 0), kappa(1, 0)), -1.25, 1e-15);
}

TEST(Audit, ReportVerdicts) {
  const auto rep = audit_identities(100, 10);
  EXPECT_EQ(rep.rows.size(), 8u);
  EXPECT_FALSE(rep.find(identity::kZeroClosedForm).consistent);
  EXPECT_EQ(rep.find(identity::kZeroClosedForm).verdict(), "inconsistent as printed");
  EXPECT_TRUE(rep.find(identity::kZeroShifted).consistent);
  EXPECT_FALSE(rep.find(identity::kEllRecurrence).consistent);
  EXPECT_TRUE(rep.find(identity::kEllRecurrenceCorrected).consistent);
  EXPECT_TRUE(rep.find(identity::kEllOneExpansion).consistent);
  EXPECT_FALSE(rep.find(identity::kEllTwoExpansion).consistent);
  EXPECT_NEAR(rep.find(identity::kEllTwoExpansion).max_discrepancy, 0.5, 1e-12);
  EXPECT_TRUE(rep.find(identity::kEllTwoExpansionCorrected).consistent);
  EXPECT_TRUE(rep.find(identity::kBinomialClosedForm).consistent);
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.consistent, r.max_discrepancy <= kAuditTolerance) << r.name;
    EXPECT_EQ(r.verdict(), r.consistent ? "consistent" : "inconsistent as printed");
  }
  EXPECT_THROW(rep.find("nope"), std::out_of_range);
}

TEST(Audit, TwoExpansionAtZero) {
  // printed middle coefficient 1 gives 0.75 where the oracle has 0.25
  const double printed = 2.5 / 2.0 * kappa(0, 0) + kappa(1, 0) + 1.5 / 2.0 * kappa(2, 0);
  EXPECT_NEAR(printed, 0.75, 1e-15);
  EXPECT_NEAR(kappa(0, 2), 0.25, 1e-15);
}
