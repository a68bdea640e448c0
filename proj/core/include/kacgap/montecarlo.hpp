#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kacgap/rng.hpp"

namespace kacgap::montecarlo {

using Vec3 = std::array<double, 3>;

inline constexpr int kParticles = 3;
inline constexpr double kEnergy = 3.0;
inline constexpr double kInvariantTolerance = 1e-9;
/// Residual above which a state is re-projected onto the constraint sphere.
inline constexpr double kReprojectThreshold = 1e-12;
inline constexpr double kEquilibriumConstant = 5.09295817894;  // 16 / pi
inline constexpr int kMaxRejectionAttempts = 1'000'000;

/// Three velocities with zero total momentum and total energy 3.
struct ParticleState {
  std::array<Vec3, kParticles> v{};

  double momentum_residual() const;
  double energy_residual() const;
  bool valid(double tol = kInvariantTolerance) const;
  /// |v_k| / sqrt(2), in [0, 1] on the constraint sphere.
  double radius(int k) const;
};

/// Subtracts the mean velocity and rescales to energy 3.
ParticleState reproject(const ParticleState& s);

/// T_1(y, v) = (sqrt2 v, beta y - v/sqrt2, -beta y - v/sqrt2),
/// beta = sqrt(3/2 (1 - |v|^2)); needs |v| <= 1 and |y| = 1.
ParticleState factorized_state(const Vec3& v, const Vec3& y);

/// Same map with the fixed particle placed at `fixed_index`.
ParticleState factorized_state(const Vec3& v, const Vec3& y, int fixed_index);

enum class InitialDensity { Linear, Equilibrium };
std::string to_string(InitialDensity d);
InitialDensity parse_initial_density(const std::string& s);

/// (16/pi) r^2 sqrt(1 - r^2). Throws DomainError outside [0, 1].
double equilibrium_radial_density(double r);
/// Integral of the equilibrium density over [0, r].
double equilibrium_radial_cdf(double r);
/// 2(1 - r) or the equilibrium density.
double initial_radial_density(InitialDensity d, double r);

struct SimConfig {
  int alpha = 2;
  std::int64_t replicas = 100'000;
  std::vector<double> frames;
  std::uint64_t seed = 0;
  int bins = 100;
  InitialDensity initial = InitialDensity::Linear;

  /// Throws ConfigError on alpha outside {0, 2}, replicas < 1, bins < 10,
  /// empty, negative or non-increasing frames.
  void validate() const;

  /// Frames {0, 2, ..., 24} for alpha = 2 and {0, 0.5, 2, 3.5, 5, 10} for alpha = 0.
  static std::vector<double> default_frames(int alpha);
  static SimConfig defaults(int alpha);
};

/// Rejection sample of a radius from the configured density.
double sample_radius(InitialDensity d, Rng& rng, int max_attempts = kMaxRejectionAttempts);
ParticleState sample_initial(const SimConfig& cfg, Rng& rng);

/// lambda_k = (1/3) [ (9 - 3(1 + |v_k|^2)) / 4 ]^{alpha/2}. Throws NegativeRate
/// when the bracket is below -1e-9; tiny negatives are clamped to zero.
std::array<double, 3> jump_rates(const ParticleState& s, double alpha);

struct StepResult {
  ParticleState state;
  double dt;
  int fixed_index;
};

/// One jump: the particle whose exponential clock rings first is held, the
/// other two are re-sampled on the conditional sphere.
StepResult step(const ParticleState& s, double alpha, Rng& rng);

/// Radii |v_k|/sqrt2 at each frame: radii[frame][particle][replica].
/// Particle 0 is the sampled one; 1 and 2 are implied by T_1.
struct FrameSamples {
  std::vector<double> times;
  std::vector<std::array<std::vector<double>, kParticles>> radii;
};

/// Calls observer(state) after every jump when set (used by invariant tests).
using StepObserver = std::function<void(const ParticleState&)>;

FrameSamples simulate(const SimConfig& cfg, const StepObserver& observer = {});

/// Normalized histogram of radial samples on [0, 1].
class RadialHistogram {
 public:
  explicit RadialHistogram(int bins);

  static RadialHistogram from_samples(const std::vector<double>& samples, int bins);
  /// Weights proportional to the given per-bin masses.
  static RadialHistogram from_masses(std::vector<double> masses);

  void add(double r, double weight = 1.0);
  void merge(const RadialHistogram& other);

  int bins() const noexcept { return static_cast<int>(weights_.size()); }
  double width() const noexcept { return 1.0 / bins(); }
  double total() const noexcept { return total_; }
  double left(int i) const { return i * width(); }
  double right(int i) const { return (i + 1) * width(); }
  /// weight_i / (total * width); zero for an empty histogram.
  double density(int i) const;
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// Histograms per frame and particle; each replica's contributions are
/// integer counts so the merge is exact and schedule independent.
struct FrameHistograms {
  std::vector<double> times;
  std::vector<std::array<RadialHistogram, kParticles>> hist;
};

FrameHistograms simulate_histograms(const SimConfig& cfg);

enum class QConvention { LeftEdge, Midpoint };

/// sum_i p_i log(p_i / q_i) dr over bins with p_i > 0. LeftEdge evaluates q at
/// the left bin edge and skips bin 0 (q(0) = 0); Midpoint uses bin centres.
/// Throws DomainError for an empty histogram.
double relative_entropy(const RadialHistogram& hist, QConvention q = QConvention::LeftEdge);

/// Binned KL of two known densities given by their per-bin masses; used as
/// the reference for estimator cross-checks.
double binned_relative_entropy(const std::vector<double>& p_mass,
                               const std::vector<double>& q_mass, int skip_first = 0);

inline const double kEntropyFloor = 0.0024787521766663585;  // e^-6

struct DecayFit {
  double rate;
  int points;
  double t_first;
  double t_last;
};

struct EntropySeries {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<DecayFit> fit;
};

/// Least-squares slope of log H against t over points with H > floor; the
/// negated slope. Throws InsufficientData with fewer than 3 usable points.
DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                        double floor = kEntropyFloor);

struct SimulationReport {
  SimConfig config;
  FrameHistograms histograms;
  /// sampled, implied1, implied2
  std::array<EntropySeries, kParticles> entropy;
};

/// simulate_histograms, then entropy per frame and decay fits where possible.
SimulationReport run_simulation(const SimConfig& cfg);

}  // namespace kacgap::montecarlo
