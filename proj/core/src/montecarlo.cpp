#include "kacgap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kacgap/error.hpp"
#include "kacgap/parallel.hpp"

namespace kacgap::montecarlo {

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

double ParticleState::momentum_residual() const {
  Vec3 p{};
  for (const auto& vk : v) {
    for (int c = 0; c < 3; ++c) p[c] += vk[c];
  }
  return std::sqrt(dot(p, p));
}

double ParticleState::energy_residual() const {
  double e = 0.0;
  for (const auto& vk : v) e += dot(vk, vk);
  return std::abs(e - kEnergy);
}

bool ParticleState::valid(double tol) const {
  return momentum_residual() <= tol && energy_residual() <= tol;
}

double ParticleState::radius(int k) const {
  return std::sqrt(dot(v[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)]) / 2.0);
}

ParticleState reproject(const ParticleState& s) {
  ParticleState out = s;
  Vec3 mean{};
  for (const auto& vk : out.v) {
    for (int c = 0; c < 3; ++c) mean[c] += vk[c] / kParticles;
  }
  double e = 0.0;
  for (auto& vk : out.v) {
    for (int c = 0; c < 3; ++c) vk[c] -= mean[c];
    e += dot(vk, vk);
  }
  const double scale = std::sqrt(kEnergy / e);
  for (auto& vk : out.v) {
    for (auto& c : vk) c *= scale;
  }
  return out;
}

ParticleState factorized_state(const Vec3& v, const Vec3& y, int fixed_index) {
  if (fixed_index < 0 || fixed_index >= kParticles) {
    throw DomainError("factorized_state: fixed index out of range");
  }
  const double r2 = dot(v, v);
  if (r2 > 1.0 + 1e-12) {
    throw DomainError("factorized_state: |v| must not exceed 1");
  }
  const double beta = std::sqrt(1.5 * std::max(0.0, 1.0 - r2));
  const auto i = static_cast<std::size_t>(fixed_index);
  const std::size_t j = (i + 1) % kParticles;
  const std::size_t k = (i + 2) % kParticles;
  ParticleState s;
  for (int c = 0; c < 3; ++c) {
    s.v[i][c] = std::numbers::sqrt2 * v[c];
    s.v[j][c] = beta * y[c] - v[c] / std::numbers::sqrt2;
    s.v[k][c] = -beta * y[c] - v[c] / std::numbers::sqrt2;
  }
  return s;
}

ParticleState factorized_state(const Vec3& v, const Vec3& y) { return factorized_state(v, y, 0); }

std::string to_string(InitialDensity d) {
  return d == InitialDensity::Linear ? "linear" : "equilibrium";
}

InitialDensity parse_initial_density(const std::string& s) {
  if (s == "linear") return InitialDensity::Linear;
  if (s == "equilibrium") return InitialDensity::Equilibrium;
  throw ConfigError("unknown initial density: " + s);
}

double equilibrium_radial_density(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("equilibrium_radial_density: r outside [0, 1]");
  }
  return 16.0 / std::numbers::pi * r * r * std::sqrt(1.0 - r * r);
}

double equilibrium_radial_cdf(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("equilibrium_radial_cdf: r outside [0, 1]");
  }
  const double s = std::sqrt(1.0 - r * r);
  return 2.0 / std::numbers::pi * (std::asin(r) - r * s * (1.0 - 2.0 * r * r));
}

double initial_radial_density(InitialDensity d, double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("initial_radial_density: r outside [0, 1]");
  }
  return d == InitialDensity::Linear ? 2.0 * (1.0 - r) : equilibrium_radial_density(r);
}

void SimConfig::validate() const {
  if (alpha != 0 && alpha != 2) throw ConfigError("alpha must be 0 or 2");
  if (replicas < 1) throw ConfigError("replicas must be >= 1");
  if (bins < 10) throw ConfigError("bins must be >= 10");
  if (frames.empty()) throw ConfigError("frames must not be empty");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (!std::isfinite(frames[i]) || frames[i] < 0.0) throw ConfigError("frames must be finite and >= 0");
    if (i > 0 && !(frames[i] > frames[i - 1])) throw ConfigError("frames must be strictly increasing");
  }
}

std::vector<double> SimConfig::default_frames(int alpha) {
  if (alpha == 0) return {0.0, 0.5, 2.0, 3.5, 5.0, 10.0};
  std::vector<double> f;
  for (int t = 0; t <= 24; t += 2) f.push_back(t);
  return f;
}

SimConfig SimConfig::defaults(int alpha) {
  SimConfig cfg;
  cfg.alpha = alpha;
  cfg.frames = default_frames(alpha);
  return cfg;
}

double sample_radius(InitialDensity d, Rng& rng, int max_attempts) {
  // Both densities are bounded by 2 on [0, 1].
  constexpr double kEnvelope = 2.0;
  for (int i = 0; i < max_attempts; ++i) {
    const double r = rng.uniform01();
    if (kEnvelope * rng.uniform01() < initial_radial_density(d, r)) {
      return r;
    }
  }
  throw ConfigError("sample_radius: rejection sampling exceeded the attempt cap");
}

ParticleState sample_initial(const SimConfig& cfg, Rng& rng) {
  const double r = sample_radius(cfg.initial, rng);
  Vec3 v = rng.unit_vector();
  for (auto& c : v) c *= r;
  return factorized_state(v, rng.unit_vector(), 0);
}

std::array<double, 3> jump_rates(const ParticleState& s, double alpha) {
  std::array<double, 3> rates{};
  for (int k = 0; k < kParticles; ++k) {
    const auto& vk = s.v[static_cast<std::size_t>(k)];
    double base = (9.0 - 3.0 * (1.0 + dot(vk, vk))) / 4.0;
    if (base < -kInvariantTolerance) {
      throw NegativeRate("jump_rates: particle energy exceeds 2");
    }
    base = std::max(base, 0.0);
    rates[static_cast<std::size_t>(k)] = (alpha == 0.0 ? 1.0 : std::pow(base, alpha / 2.0)) / 3.0;
  }
  return rates;
}

StepResult step(const ParticleState& s, double alpha, Rng& rng) {
  const auto rates = jump_rates(s, alpha);
  double dt = std::numeric_limits<double>::infinity();
  int k = -1;
  for (int i = 0; i < kParticles; ++i) {
    const double t = rng.exponential(rates[static_cast<std::size_t>(i)]);
    if (t < dt) {
      dt = t;
      k = i;
    }
  }
  if (k < 0) {
    throw NegativeRate("step: every jump rate is zero");
  }
  Vec3 v = s.v[static_cast<std::size_t>(k)];
  for (auto& c : v) c /= std::numbers::sqrt2;
  ParticleState next = factorized_state(v, rng.unit_vector(), k);
  if (next.momentum_residual() > kReprojectThreshold || next.energy_residual() > kReprojectThreshold) {
    next = reproject(next);
  }
  return {next, dt, k};
}

namespace {

/// Advances one replica through every frame, calling record(frame, state).
template <class Record>
void run_replica(const SimConfig& cfg, std::int64_t replica, const StepObserver& observer,
                 Record&& record) {
  Rng rng(cfg.seed, static_cast<std::uint64_t>(replica));
  ParticleState s = sample_initial(cfg, rng);
  double t = 0.0;
  for (std::size_t f = 0; f < cfg.frames.size(); ++f) {
    while (t < cfg.frames[f]) {
      const StepResult r = step(s, cfg.alpha, rng);
      s = r.state;
      t += r.dt;
      if (observer) observer(s);
    }
    record(f, s);
  }
}

}  // namespace

FrameSamples simulate(const SimConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  FrameSamples out;
  out.times = cfg.frames;
  out.radii.resize(cfg.frames.size());
  for (auto& frame : out.radii) {
    for (auto& p : frame) p.resize(static_cast<std::size_t>(cfg.replicas));
  }
  const auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t rep = begin; rep < end; ++rep) {
      run_replica(cfg, static_cast<std::int64_t>(rep), observer, [&](std::size_t f, const ParticleState& s) {
        for (int k = 0; k < kParticles; ++k) {
          out.radii[f][static_cast<std::size_t>(k)][rep] = s.radius(k);
        }
      });
    }
  };
  if (observer) {
    fill(0, static_cast<std::size_t>(cfg.replicas));  // observers need not be thread safe
  } else {
    parallel_for(static_cast<std::size_t>(cfg.replicas),
                 [&](std::size_t b, std::size_t e, unsigned) { fill(b, e); });
  }
  return out;
}

RadialHistogram::RadialHistogram(int bins) {
  if (bins < 1) throw ConfigError("RadialHistogram: bins must be >= 1");
  weights_.assign(static_cast<std::size_t>(bins), 0.0);
}

RadialHistogram RadialHistogram::from_samples(const std::vector<double>& samples, int bins) {
  RadialHistogram h(bins);
  for (double r : samples) h.add(r);
  return h;
}

RadialHistogram RadialHistogram::from_masses(std::vector<double> masses) {
  RadialHistogram h(static_cast<int>(masses.size()));
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] < 0.0) throw DomainError("RadialHistogram: negative mass");
    h.weights_[i] = masses[i];
    h.total_ += masses[i];
  }
  return h;
}

void RadialHistogram::add(double r, double weight) {
  if (!(r >= 0.0 && r <= 1.0 + 1e-12)) {
    throw DomainError("RadialHistogram: sample outside [0, 1]");
  }
  const int b = std::min(bins() - 1, static_cast<int>(r * bins()));
  weights_[static_cast<std::size_t>(b)] += weight;
  total_ += weight;
}

void RadialHistogram::merge(const RadialHistogram& other) {
  if (other.bins() != bins()) throw ConfigError("RadialHistogram: bin count mismatch");
  for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] += other.weights_[i];
  total_ += other.total_;
}

double RadialHistogram::density(int i) const {
  if (total_ <= 0.0) return 0.0;
  return weights_[static_cast<std::size_t>(i)] / (total_ * width());
}

FrameHistograms simulate_histograms(const SimConfig& cfg) {
  cfg.validate();
  const std::size_t frames = cfg.frames.size();
  const auto empty_frames = [&] {
    std::vector<std::array<RadialHistogram, kParticles>> h;
    h.reserve(frames);
    for (std::size_t f = 0; f < frames; ++f) {
      h.push_back({RadialHistogram(cfg.bins), RadialHistogram(cfg.bins), RadialHistogram(cfg.bins)});
    }
    return h;
  };
  const unsigned workers = thread_count();
  std::vector<std::vector<std::array<RadialHistogram, kParticles>>> partial(workers);
  parallel_for(static_cast<std::size_t>(cfg.replicas),
               [&](std::size_t b, std::size_t e, unsigned w) {
                 auto local = empty_frames();
                 for (std::size_t rep = b; rep < e; ++rep) {
                   run_replica(cfg, static_cast<std::int64_t>(rep), {},
                               [&](std::size_t f, const ParticleState& s) {
                                 for (int k = 0; k < kParticles; ++k) {
                                   local[f][static_cast<std::size_t>(k)].add(s.radius(k));
                                 }
                               });
                 }
                 partial[w] = std::move(local);
               },
               workers);
  FrameHistograms out;
  out.times = cfg.frames;
  out.hist = empty_frames();
  for (const auto& local : partial) {
    if (local.empty()) continue;
    for (std::size_t f = 0; f < frames; ++f) {
      for (std::size_t k = 0; k < kParticles; ++k) out.hist[f][k].merge(local[f][k]);
    }
  }
  return out;
}

double relative_entropy(const RadialHistogram& hist, QConvention q) {
  if (hist.total() <= 0.0) {
    throw DomainError("relative_entropy: empty histogram");
  }
  const int first = q == QConvention::LeftEdge ? 1 : 0;
  double h = 0.0;
  for (int i = first; i < hist.bins(); ++i) {
    const double p = hist.density(i);
    if (p <= 0.0) continue;
    const double x = q == QConvention::LeftEdge ? hist.left(i) : 0.5 * (hist.left(i) + hist.right(i));
    h += p * std::log(p / equilibrium_radial_density(x)) * hist.width();
  }
  return h;
}

double binned_relative_entropy(const std::vector<double>& p_mass, const std::vector<double>& q_mass,
                               int skip_first) {
  if (p_mass.size() != q_mass.size()) {
    throw DomainError("binned_relative_entropy: size mismatch");
  }
  double h = 0.0;
  for (std::size_t i = static_cast<std::size_t>(std::max(skip_first, 0)); i < p_mass.size(); ++i) {
    if (p_mass[i] > 0.0) h += p_mass[i] * std::log(p_mass[i] / q_mass[i]);
  }
  return h;
}

DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values, double floor) {
  if (times.size() != values.size()) {
    throw DomainError("fit_decay_rate: size mismatch");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (values[i] > floor) {
      xs.push_back(times[i]);
      ys.push_back(std::log(values[i]));
    }
  }
  if (xs.size() < 3) {
    throw InsufficientData("fit_decay_rate: fewer than 3 points above the floor");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx <= 0.0) {
    throw InsufficientData("fit_decay_rate: all usable points share one time");
  }
  return {-sxy / sxx, static_cast<int>(xs.size()), xs.front(), xs.back()};
}

SimulationReport run_simulation(const SimConfig& cfg) {
  SimulationReport rep{cfg, simulate_histograms(cfg), {}};
  for (int k = 0; k < kParticles; ++k) {
    auto& series = rep.entropy[static_cast<std::size_t>(k)];
    series.times = cfg.frames;
    for (const auto& frame : rep.histograms.hist) {
      series.values.push_back(relative_entropy(frame[static_cast<std::size_t>(k)]));
    }
    try {
      series.fit = fit_decay_rate(series.times, series.values);
    } catch (const InsufficientData&) {
      series.fit.reset();
    }
  }
  return rep;
}

}  // namespace kacgap::montecarlo
