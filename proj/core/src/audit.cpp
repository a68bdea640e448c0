#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "kacgap/kspectrum.hpp"

namespace kacgap::kspectrum {

double kappa_n0_closed_form_printed(int n) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sin(n * std::numbers::pi / 3.0) / (n + 1.0);
}

double kappa_n0_closed_form_shifted(int n) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return 2.0 / std::sqrt(3.0) * sign * std::sin((n + 1.0) * std::numbers::pi / 3.0) / (n + 1.0);
}

double ell_recurrence_printed(int n, int ell, double k_n_prev, double k_n1_prev) {
  const double d = 2.0 * n + ell + 1.0;
  return -2.0 * ((n + ell + 0.5) / d * k_n_prev + (n + 0.5) / d * k_n1_prev);
}

double ell_recurrence_corrected(int n, int ell, double k_n_prev, double k_n1_prev) {
  const double d = 2.0 * n + ell + 2.0;
  return -2.0 * ((n + ell + 0.5) * k_n_prev + (n + 1.5) * k_n1_prev) / d;
}

double binomial_coefficient_c(int n, int ell, int j) {
  double num = 1.0;
  for (int i = 1; i <= ell; ++i) {
    num *= n + i + 0.5;
  }
  double den = 1.0;
  for (int i = 0; i <= ell; ++i) {
    if (i != j) {
      den *= 2.0 * n + i + j + 2.0;
    }
  }
  return num / den;
}

std::string IdentityAudit::verdict() const {
  return consistent ? "consistent" : "inconsistent as printed";
}

const IdentityAudit& IdentityAuditReport::find(const std::string& name) const {
  for (const auto& row : rows) {
    if (row.name == name) {
      return row;
    }
  }
  throw std::out_of_range("identity audit: no row named " + name);
}

namespace {

class Tracker {
 public:
  Tracker(std::string name, std::string range) {
    row_.name = std::move(name);
    row_.range = std::move(range);
  }

  void observe(double predicted, double reference, int n, int ell) {
    const double d = std::abs(predicted - reference);
    if (d > row_.max_discrepancy || std::isnan(d)) {
      row_.max_discrepancy = d;
      row_.worst_n = n;
      row_.worst_ell = ell;
    }
  }

  IdentityAudit finish() {
    row_.consistent = row_.max_discrepancy <= kAuditTolerance;
    return row_;
  }

 private:
  IdentityAudit row_;
};

std::string range_label(int n_max, int ell_lo, int ell_hi) {
  return "n in [0," + std::to_string(n_max) + "], ell in [" + std::to_string(ell_lo) + "," +
         std::to_string(ell_hi) + "]";
}

}  // namespace

IdentityAuditReport audit_identities(int n_max, int ell_max) {
  if (n_max < 0 || ell_max < 2) {
    throw std::invalid_argument("audit_identities: need n_max >= 0 and ell_max >= 2");
  }
  // Oracle rows, long enough for the n+j shifts of the binomial form.
  const int row_len = n_max + ell_max + 2;
  std::vector<std::vector<double>> k;
  k.reserve(static_cast<std::size_t>(ell_max) + 1);
  for (int ell = 0; ell <= ell_max; ++ell) {
    k.push_back(kappa_row(ell, row_len));
  }
  auto K = [&](int n, int ell) { return k[static_cast<std::size_t>(ell)][static_cast<std::size_t>(n)]; };

  IdentityAuditReport report;

  {
    Tracker printed(identity::kZeroClosedForm, range_label(n_max, 0, 0));
    Tracker shifted(identity::kZeroShifted, range_label(n_max, 0, 0));
    for (int n = 0; n <= n_max; ++n) {
      printed.observe(kappa_n0_closed_form_printed(n), K(n, 0), n, 0);
      shifted.observe(kappa_n0_closed_form_shifted(n), K(n, 0), n, 0);
    }
    report.rows.push_back(printed.finish());
    report.rows.push_back(shifted.finish());
  }
  {
    Tracker printed(identity::kEllRecurrence, range_label(n_max, 1, ell_max));
    Tracker corrected(identity::kEllRecurrenceCorrected, range_label(n_max, 1, ell_max));
    for (int ell = 1; ell <= ell_max; ++ell) {
      for (int n = 0; n <= n_max; ++n) {
        printed.observe(ell_recurrence_printed(n, ell, K(n, ell - 1), K(n + 1, ell - 1)),
                        K(n, ell), n, ell);
        corrected.observe(ell_recurrence_corrected(n, ell, K(n, ell - 1), K(n + 1, ell - 1)),
                          K(n, ell), n, ell);
      }
    }
    report.rows.push_back(printed.finish());
    report.rows.push_back(corrected.finish());
  }
  {
    Tracker one(identity::kEllOneExpansion, range_label(n_max, 1, 1));
    Tracker two(identity::kEllTwoExpansion, range_label(n_max, 2, 2));
    Tracker two_fixed(identity::kEllTwoExpansionCorrected, range_label(n_max, 2, 2));
    for (int n = 0; n <= n_max; ++n) {
      one.observe(-(K(n, 0) + K(n + 1, 0)), K(n, 1), n, 1);
      const double w0 = (n + 2.5) / (n + 2.0);
      const double w2 = (n + 1.5) / (n + 2.0);
      two.observe(w0 * K(n, 0) + K(n + 1, 0) + w2 * K(n + 2, 0), K(n, 2), n, 2);
      two_fixed.observe(w0 * K(n, 0) + 2.0 * K(n + 1, 0) + w2 * K(n + 2, 0), K(n, 2), n, 2);
    }
    report.rows.push_back(one.finish());
    report.rows.push_back(two.finish());
    report.rows.push_back(two_fixed.finish());
  }
  {
    Tracker binom(identity::kBinomialClosedForm, range_label(n_max, 0, ell_max));
    for (int ell = 0; ell <= ell_max; ++ell) {
      for (int n = 0; n <= n_max; ++n) {
        double sum = 0.0;
        double choose = 1.0;
        for (int j = 0; j <= ell; ++j) {
          sum += choose * binomial_coefficient_c(n, ell, j) * K(n + j, 0);
          choose = choose * (ell - j) / (j + 1.0);
        }
        binom.observe(std::pow(-2.0, ell) * sum, K(n, ell), n, ell);
      }
    }
    report.rows.push_back(binom.finish());
  }
  return report;
}

}  // namespace kacgap::kspectrum
