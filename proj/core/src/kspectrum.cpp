#include "kacgap/kspectrum.hpp"

#include <cmath>
#include <numbers>

#include "kacgap/error.hpp"
#include "kacgap/jacobi.hpp"
#include "kacgap/parallel.hpp"

namespace kacgap::kspectrum {

namespace {

// Evaluation point -1 + 2/(N-1)^2 for N = 3.
constexpr double kEvalPoint = -0.5;

const double kMajorantScale = std::sqrt(8.0 * std::numbers::e / 3.0);

void check_indices(int n, int ell) {
  if (n < 0 || ell < 0) {
    throw DomainError("kappa: indices must be non-negative");
  }
}

double kappa_from_ratio(const jacobi::ScaledValue& r, int ell) {
  const double v = r.value_shifted(-ell);
  return (ell % 2 == 0) ? v : -v;
}

}  // namespace

double kappa(int n, int ell) {
  check_indices(n, ell);
  return kappa_from_ratio(jacobi::ratio_to_one(jacobi::JacobiParams::sector(ell), n, kEvalPoint),
                          ell);
}

std::vector<double> kappa_row(int ell, int n_max) {
  check_indices(n_max, ell);
  std::vector<double> row;
  row.reserve(static_cast<std::size_t>(n_max) + 1);
  jacobi::RatioRecurrence rec(jacobi::JacobiParams::sector(ell), kEvalPoint);
  row.push_back(kappa_from_ratio(rec.current(), ell));
  while (rec.degree() < n_max) {
    rec.advance();
    row.push_back(kappa_from_ratio(rec.current(), ell));
  }
  return row;
}

double kappa_hat(int n, int ell) {
  check_indices(n, ell);
  return kMajorantScale * std::pow(n + 1.0, -0.25) * std::pow(n + ell + 1.5, -0.25);
}

double kappa_tilde(double n, int ell) {
  if (n < 0 || ell < 0) {
    throw DomainError("kappa_tilde: indices must be non-negative");
  }
  return kMajorantScale / std::sqrt(n + std::sqrt(static_cast<double>(ell)));
}

double kappa_uniform(double n) {
  if (n < 0) {
    throw DomainError("kappa_uniform: negative index");
  }
  return kMajorantScale / std::sqrt(n + 1.0);
}

double majorant(Majorant which, double n, int ell) {
  switch (which) {
    case Majorant::Hat:
      return kMajorantScale * std::pow(n + 1.0, -0.25) * std::pow(n + ell + 1.5, -0.25);
    case Majorant::Tilde:
      return kappa_tilde(n, ell);
    case Majorant::Uniform:
      return kappa_uniform(n);
  }
  return 0.0;
}

std::string to_string(Majorant which) {
  switch (which) {
    case Majorant::Hat:
      return "hat";
    case Majorant::Tilde:
      return "tilde";
    case Majorant::Uniform:
      return "uniform";
  }
  return "?";
}

KappaTable::KappaTable(int n_max, int ell_max) : n_max_(n_max), ell_max_(ell_max) {
  check_indices(n_max, ell_max);
  const std::size_t cells =
      (static_cast<std::size_t>(n_max) + 1) * (static_cast<std::size_t>(ell_max) + 1);
  values_.resize(cells);
  hat_.resize(cells);
  tilde_.resize(cells);
}

std::size_t KappaTable::index(int n, int ell) const {
  if (n < 0 || n > n_max_ || ell < 0 || ell > ell_max_) {
    throw DomainError("KappaTable: index out of range");
  }
  return static_cast<std::size_t>(ell) * (static_cast<std::size_t>(n_max_) + 1) +
         static_cast<std::size_t>(n);
}

KappaTable kappa_table(int n_max, int ell_max, std::size_t cell_budget) {
  check_indices(n_max, ell_max);
  const double cells = (n_max + 1.0) * (ell_max + 1.0);
  if (cells > static_cast<double>(cell_budget)) {
    throw ConfigError("kappa_table: grid of " + std::to_string(static_cast<long long>(cells)) +
                      " cells exceeds budget " + std::to_string(cell_budget));
  }
  KappaTable table(n_max, ell_max);
  parallel_for(static_cast<std::size_t>(ell_max) + 1,
               [&](std::size_t begin, std::size_t end, unsigned /*worker*/) {
                 for (std::size_t l = begin; l < end; ++l) {
                   const int ell = static_cast<int>(l);
                   const std::vector<double> row = kappa_row(ell, n_max);
                   for (int n = 0; n <= n_max; ++n) {
                     const std::size_t i = table.index(n, ell);
                     table.values_[i] = row[static_cast<std::size_t>(n)];
                     table.hat_[i] = kappa_hat(n, ell);
                     table.tilde_[i] = kappa_tilde(n, ell);
                   }
                 }
               });
  return table;
}

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::Monotone:
      return "monotone";
    case Monotonicity::NotMonotone:
      return "not-monotone";
    case Monotonicity::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

bool Mod3Report::all_monotone() const {
  for (Monotonicity m : by_residue) {
    if (m != Monotonicity::Monotone) {
      return false;
    }
  }
  return true;
}

Mod3Report mod3_monotonicity_check(int ell, int n_min, int n_max) {
  Mod3Report report{ell, n_min, n_max, {}};
  report.by_residue.fill(Monotonicity::Inconclusive);
  if (n_min < 0 || ell < 0 || n_max - n_min < 30) {
    return report;
  }
  const std::vector<double> row = kappa_row(ell, n_max);
  for (int r = 0; r < 3; ++r) {
    int first = n_min;
    while (first % 3 != r) {
      ++first;
    }
    int sign = 0;
    bool monotone = true;
    for (int n = first; n + 3 <= n_max; n += 3) {
      const double a = row[static_cast<std::size_t>(n)];
      const double b = row[static_cast<std::size_t>(n + 3)];
      const double diff = b - a;
      // Differences at round-off level count as flat.
      if (std::abs(diff) <= 1e-15 * std::max({1.0, std::abs(a), std::abs(b)})) {
        continue;
      }
      const int s = diff > 0 ? 1 : -1;
      if (sign == 0) {
        sign = s;
      } else if (s != sign) {
        monotone = false;
        break;
      }
    }
    report.by_residue[static_cast<std::size_t>(r)] =
        monotone ? Monotonicity::Monotone : Monotonicity::NotMonotone;
  }
  return report;
}

}  // namespace kacgap::kspectrum
