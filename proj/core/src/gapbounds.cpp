#include "kacgap/gapbounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "kacgap/error.hpp"
#include "kacgap/jacobi.hpp"

namespace kacgap::gapbounds {

std::string to_string(Sector s) {
  switch (s) {
    case Sector::AntiSymmetric: return "antisymmetric";
    case Sector::SymLargeEll: return "symmetric_large_ell";
    case Sector::SymMidEll: return "symmetric_mid_ell";
    case Sector::SymSmallEll: return "symmetric_small_ell";
  }
  return "unknown";
}

double Evidence::at(const std::string& key) const {
  for (const auto& [k, v] : items_) {
    if (k == key) return v;
  }
  throw std::out_of_range("evidence: no key " + key);
}

bool Evidence::contains(const std::string& key) const {
  return std::any_of(items_.begin(), items_.end(), [&](const auto& kv) { return kv.first == key; });
}

std::string SectorBound::label() const {
  std::string s = to_string(sector);
  if (ell) s += "(ell=" + std::to_string(*ell) + ")";
  return s;
}

// ---- anti-symmetric ----------------------------------------------------------

double antisym_bound(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw DomainError("antisym_bound: t must lie in (0, 1)");
  }
  return std::max(11.0 / (16.0 * t), 0.375 * (1.0 + t));
}

AntisymOptimum antisym_optimize() {
  const auto [t, value] = boost::math::tools::brent_find_minima(
      [](double x) { return antisym_bound(x); }, 0.5, 1.0 - 1e-9, 50);
  return {t, value, (-3.0 + std::sqrt(75.0)) / 6.0};
}

SectorBound antisym_sector() {
  const AntisymOptimum opt = antisym_optimize();
  SectorBound sb{Sector::AntiSymmetric, std::nullopt, opt.bound, {}};
  sb.evidence.add("t_star", opt.t_star);
  sb.evidence.add("t_closed_form", opt.t_closed_form);
  sb.evidence.add("bound_at_0.943", antisym_bound(0.943));
  return sb;
}

// ---- large ell ---------------------------------------------------------------

int default_n_cut(int ell) {
  const int scaled = static_cast<int>(std::ceil(4.0 * std::pow(static_cast<double>(ell), 1.5)));
  return std::max(scaled, 2000);
}

namespace {

struct Scan {
  double sup = -1.0;
  int argmax = 0;
};

template <class F>
Scan scan_sequence(F&& f, int n_cut, int tail_check, const char* name, int ell) {
  Scan s;
  std::vector<double> values(static_cast<std::size_t>(n_cut) + 1);
  for (int n = 0; n <= n_cut; ++n) {
    const double v = f(n);
    values[static_cast<std::size_t>(n)] = v;
    if (v > s.sup) {
      s.sup = v;
      s.argmax = n;
    }
  }
  const int first = n_cut - tail_check + 1;
  if (first <= s.argmax) {
    throw TailNotDecreasing(std::string(name) + ": maximum inside the checked tail at ell=" +
                            std::to_string(ell));
  }
  for (int n = std::max(first, 1); n <= n_cut; ++n) {
    if (!(values[static_cast<std::size_t>(n)] < values[static_cast<std::size_t>(n) - 1])) {
      throw TailNotDecreasing(std::string(name) + ": tail not strictly decreasing at n=" +
                              std::to_string(n) + ", ell=" + std::to_string(ell));
    }
  }
  return s;
}

}  // namespace

SectorBound large_ell_bound(int ell, const LargeEllOptions& options) {
  if (ell < 4) {
    throw DomainError("large_ell_bound: requires ell >= 4");
  }
  const int n_cut = options.n_cut > 0 ? options.n_cut : default_n_cut(ell);
  if (options.tail_check < 2 || options.tail_check > n_cut) {
    throw ConfigError("large_ell_bound: tail_check must be in [2, n_cut]");
  }
  const Scan diag = scan_sequence(
      [&](int n) {
        const double k = kspectrum::majorant(options.diagonal, n, ell);
        return (1.0 - jacobi::a_tilde(ell, n)) * (1.0 + 2.0 * k);
      },
      n_cut, options.tail_check, "diagonal sequence", ell);
  const Scan off = scan_sequence(
      [&](int n) {
        const double k = kspectrum::majorant(options.offdiagonal, n, ell);
        return 2.0 * jacobi::b_tilde(ell, n) * (1.0 + 2.0 * k);
      },
      n_cut, options.tail_check, "off-diagonal sequence", ell);

  SectorBound sb{Sector::SymLargeEll, ell, 0.25 * (diag.sup + off.sup), {}};
  sb.evidence.add("n_cut", n_cut);
  sb.evidence.add("diag_sup", diag.sup);
  sb.evidence.add("diag_argmax", diag.argmax);
  sb.evidence.add("offdiag_sup", off.sup);
  sb.evidence.add("offdiag_argmax", off.argmax);
  return sb;
}

// ---- mid ell -----------------------------------------------------------------

SectorBound mid_ell_check(int ell_lo, int ell_hi, int n_boundary, double threshold) {
  if (ell_lo < 0 || ell_hi < ell_lo || n_boundary < 0) {
    throw DomainError("mid_ell_check: empty or negative range");
  }
  const double hat_boundary = kspectrum::kappa_hat(n_boundary, ell_lo);
  if (hat_boundary > threshold + kSlack) {
    throw BoundViolated("mid_ell_check: kappa_hat above threshold at the boundary", n_boundary,
                        ell_lo);
  }
  double worst = 0.0;
  int worst_n = 0;
  int worst_ell = ell_lo;
  for (int ell = ell_lo; ell <= ell_hi; ++ell) {
    const std::vector<double> row = kspectrum::kappa_row(ell, n_boundary);
    for (int n = 0; n <= n_boundary; ++n) {
      const double v = std::abs(row[static_cast<std::size_t>(n)]);
      if (v > worst) {
        worst = v;
        worst_n = n;
        worst_ell = ell;
      }
    }
  }
  if (worst > threshold + kSlack) {
    throw BoundViolated("mid_ell_check: |kappa| above threshold", worst_n, worst_ell);
  }
  SectorBound sb{Sector::SymMidEll, std::nullopt, 0.5 * (1.0 + 2.0 * threshold), {}};
  sb.evidence.add("ell_lo", ell_lo);
  sb.evidence.add("ell_hi", ell_hi);
  sb.evidence.add("n_boundary", n_boundary);
  sb.evidence.add("kappa_hat_boundary", hat_boundary);
  sb.evidence.add("max_abs_kappa", worst);
  sb.evidence.add("max_abs_kappa_n", worst_n);
  sb.evidence.add("max_abs_kappa_ell", worst_ell);
  sb.evidence.add("tight_bound", 0.5 * (1.0 + 2.0 * worst));
  return sb;
}

// ---- small ell ---------------------------------------------------------------

std::string to_string(IndexConvention c) {
  return c == IndexConvention::Shifted ? "shifted" : "aligned";
}

IndexConvention parse_convention(const std::string& s) {
  if (s == "shifted") return IndexConvention::Shifted;
  if (s == "aligned") return IndexConvention::Aligned;
  throw ConfigError("unknown index convention: " + s);
}

IndexOffsets index_offsets(int ell, IndexConvention c) {
  if (c == IndexConvention::Shifted) {
    return {0, 2};
  }
  const int start = ell == 0 ? 2 : (ell == 1 ? 1 : 0);
  return {start, start};
}

TridiagMatrix build_Z(int ell, int size, IndexConvention c) {
  if (ell < 0 || size < 2) {
    throw DomainError("build_Z: need ell >= 0 and size >= 2");
  }
  const IndexOffsets off = index_offsets(ell, c);
  const std::vector<double> k = kspectrum::kappa_row(ell, off.y_start + size);
  std::vector<double> y(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    y[static_cast<std::size_t>(i)] = 1.0 + 2.0 * k[static_cast<std::size_t>(off.y_start + i)];
  }
  std::vector<double> d(static_cast<std::size_t>(size));
  std::vector<double> e(static_cast<std::size_t>(size) - 1);
  for (int i = 0; i < size; ++i) {
    const auto cf = jacobi::three_term_coeffs(ell, off.x_start + i);
    const auto u = static_cast<std::size_t>(i);
    d[u] = 0.5 * (1.0 - cf.a) * y[u];
    if (i + 1 < size) {
      e[u] = -0.5 * cf.b * 0.5 * (y[u] + y[u + 1]);
    }
  }
  return TridiagMatrix(std::move(d), std::move(e));
}

std::pair<double, int> tail_kappa_max(int ell, int m_start) {
  if (ell < 0 || m_start < 0) {
    throw DomainError("tail_kappa_max: negative index");
  }
  // kappa_hat decreases in m and dominates |kappa|, so once it drops below the
  // running maximum no later index can beat it.
  constexpr int kMaxScan = 1'000'000;
  const jacobi::JacobiParams p = jacobi::JacobiParams::sector(ell);
  jacobi::RatioRecurrence rec(p, -0.5);
  while (rec.degree() < m_start) rec.advance();
  double best = -1.0;
  int best_m = m_start;
  for (int m = m_start; m < kMaxScan; ++m) {
    const double v = rec.current().value_shifted(-ell) * (ell % 2 == 0 ? 1.0 : -1.0);
    if (v > best) {
      best = v;
      best_m = m;
    }
    if (kspectrum::kappa_hat(m, ell) < best) {
      return {best, best_m};
    }
    rec.advance();
  }
  throw TailNotDecreasing("tail_kappa_max: scan did not terminate");
}

double two_by_two_bound(double block, double remainder, double tail) {
  const double mean = 0.5 * (block + tail);
  const double half_diff = 0.5 * (block - tail);
  return 0.5 * (mean + std::sqrt(half_diff * half_diff + remainder * remainder));
}

SectorBound small_ell_bound(int ell, const SmallEllOptions& options) {
  if (ell < 0 || ell > 5) {
    throw DomainError("small_ell_bound: requires 0 <= ell <= 5");
  }
  if (options.block < 2) {
    throw ConfigError("small_ell_bound: block must be >= 2");
  }
  const IndexOffsets off = index_offsets(ell, options.convention);
  const TridiagMatrix z_ext = build_Z(ell, options.block + 1, options.convention);
  const TridiagMatrix z_block(
      std::vector<double>(z_ext.diag.begin(), z_ext.diag.end() - 1),
      std::vector<double>(z_ext.offdiag.begin(), z_ext.offdiag.end() - 1));
  const double block_top = tridiag_top_eigenvalue(z_block, 1e-12);
  const double remainder = z_ext.offdiag.back();
  const auto [tail_kappa, tail_n] = tail_kappa_max(ell, off.y_start + options.block);
  // Gershgorin on the tail of X: 1/2(1 - a) + 1/2 b + 1/2 b <= 1 since a >= 0, b <= 1/2.
  constexpr double tail_norm = 1.0;
  const double tail = (1.0 + 2.0 * tail_kappa) * tail_norm;
  const double result = two_by_two_bound(block_top, remainder, tail);
  if (result >= kTrivialBound) {
    throw BoundViolated("small_ell_bound: bound reaches 3/4", -1, ell);
  }
  SectorBound sb{Sector::SymSmallEll, ell, result, {}};
  sb.evidence.add("block_size", options.block);
  sb.evidence.add("x_start", off.x_start);
  sb.evidence.add("y_start", off.y_start);
  sb.evidence.add("block_top", block_top);
  sb.evidence.add("remainder", remainder);
  sb.evidence.add("tail_kappa", tail_kappa);
  sb.evidence.add("tail_kappa_n", tail_n);
  sb.evidence.add("tail_norm", tail_norm);
  sb.evidence.add("tail", tail);
  sb.evidence.add("coupled_top", 2.0 * result);
  return sb;
}

// ---- assembly ----------------------------------------------------------------

GapReport assemble_gap(std::span<const SectorBound> sectors) {
  if (sectors.empty()) {
    throw DomainError("assemble_gap: no sector bounds");
  }
  GapReport r;
  r.sectors.assign(sectors.begin(), sectors.end());
  r.mu3 = -1.0;
  for (const auto& s : r.sectors) {
    if (s.lambda_bound >= kTrivialBound) {
      throw BoundViolated("assemble_gap: sector " + s.label() + " reaches 3/4", -1, s.ell.value_or(-1));
    }
    if (s.lambda_bound > r.mu3) {
      r.mu3 = s.lambda_bound;
      r.binding = s.label();
    }
  }
  r.gap = kTrivialBound - r.mu3;
  r.large_ell_monotone = true;
  return r;
}

GapReport assemble_gap(const GapOptions& options) {
  std::vector<SectorBound> sectors;
  sectors.push_back(antisym_sector());
  for (int ell = 0; ell <= 5; ++ell) {
    sectors.push_back(small_ell_bound(ell, options.small));
  }
  sectors.push_back(mid_ell_check());
  sectors.push_back(large_ell_bound(options.large_ell, options.large));
  GapReport r = assemble_gap(std::span<const SectorBound>(sectors));
  double prev = 0.0;
  for (std::size_t i = 0; i < options.trend_ells.size(); ++i) {
    const int ell = options.trend_ells[i];
    const double v = large_ell_bound(ell, options.large).lambda_bound;
    r.large_ell_trend.emplace_back(ell, v);
    if (i > 0 && v > prev) r.large_ell_monotone = false;
    prev = v;
  }
  return r;
}

// ---- entropy production ------------------------------------------------------

EntropyProductionResult entropy_production_constant(int N, int alpha) {
  if (N < 2) {
    throw DomainError("entropy_production_constant: N must be >= 2");
  }
  using Q = boost::rational<long long>;
  Q c;
  if (alpha == 2) {
    c = Q(1) - Q(2LL * N, static_cast<long long>(N - 1) * (N - 1));
  } else if (alpha == 0) {
    c = Q(N - 3, N - 1);
  } else {
    throw DomainError("entropy_production_constant: alpha must be 0 or 2");
  }
  return {N, alpha, c, c / Q(2), c <= Q(0)};
}

}  // namespace kacgap::gapbounds
