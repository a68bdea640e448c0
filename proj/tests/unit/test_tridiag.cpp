#include <random>

#include <gtest/gtest.h>

#include "kacgap/error.hpp"
#include "kacgap/tridiag.hpp"
#include "oracles.hpp"

using kacgap::TridiagMatrix;

TEST(Tridiag, Examples) {
  EXPECT_NEAR(kacgap::tridiag_top_eigenvalue(TridiagMatrix({1.0, 1.0, 1.0}, {0.0, 0.0})), 1.0, 1e-12);
  EXPECT_NEAR(kacgap::tridiag_top_eigenvalue(TridiagMatrix({2.0, 2.0}, {-1.0})), 3.0, 1e-12);
  EXPECT_NEAR(kacgap::tridiag_top_eigenvalue(TridiagMatrix({-4.0}, {})), -4.0, 1e-12);
}

TEST(Tridiag, Validation) {
  EXPECT_THROW(TridiagMatrix({1.0, 2.0}, {}), kacgap::DomainError);
  EXPECT_THROW(TridiagMatrix({1.0, std::nan("")}, {0.0}), kacgap::DomainError);
  EXPECT_THROW(kacgap::tridiag_top_eigenvalue(TridiagMatrix()), kacgap::DomainError);
  EXPECT_THROW(kacgap::tridiag_top_eigenvalue(TridiagMatrix({1.0}, {}), 0.0), kacgap::DomainError);
}

TEST(Tridiag, SturmCount) {
  const TridiagMatrix m({2.0, 2.0}, {-1.0});  // eigenvalues 1, 3
  EXPECT_EQ(kacgap::sturm_count(m, 0.5), 0u);
  EXPECT_EQ(kacgap::sturm_count(m, 2.0), 1u);
  EXPECT_EQ(kacgap::sturm_count(m, 3.5), 2u);
}

TEST(Tridiag, ZeroSectorBlock) {
  const TridiagMatrix z({0.5, 0.75, 0.3, 0.5, 9.0 / 14.0}, {-5.0 / 16.0, -21.0 / 80.0, -0.2, -2.0 / 7.0});
  const double top = kacgap::tridiag_top_eigenvalue(z);
  EXPECT_LT(top, 1.0412);
  EXPECT_GT(top, 1.04);
}

TEST(Tridiag, MatchesOraclesOnRandomMatrices) {
  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> size(1, 6);
  for (int c = 0; c < 1000; ++c) {
    const int n = size(gen);
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n - 1));
    for (auto& x : d) x = u(gen);
    for (auto& x : e) x = u(gen);
    const double got = kacgap::tridiag_top_eigenvalue(TridiagMatrix(d, e));

    std::vector<std::vector<double>> dense(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (std::size_t i = 0; i < d.size(); ++i) dense[i][i] = d[i];
    for (std::size_t i = 0; i < e.size(); ++i) dense[i][i + 1] = dense[i + 1][i] = e[i];
    const double jacobi_top = oracle::dense_jacobi_eigenvalues(dense).back();
    const double charpoly_top = oracle::charpoly_top_root(d, e);

    EXPECT_NEAR(got, charpoly_top, 1e-9) << "case " << c;
    EXPECT_NEAR(got, jacobi_top, 1e-9) << "case " << c;
  }
}
