#pragma once

#include <cstdint>
#include <vector>

#include "seqlevy/char_func.hpp"
#include "seqlevy/levy_measure.hpp"
#include "seqlevy/rng.hpp"

namespace seqlevy {

struct SimConfig {
  double horizon = 1.0;       // T
  double grid_dt = 1.0;       // Brownian grid step, 0 < grid_dt <= T
  std::size_t shells = 1;     // K, number of dyadic small-jump shells
  std::size_t truncation = 1; // D
  std::uint64_t master_seed = 0;
  std::size_t replicas = 1;   // N

  void check() const;
};

/// One recorded jump. Small jumps carry the dyadic shell index they were
/// drawn from; tail jumps carry kLarge.
struct JumpRecord {
  static constexpr int kLarge = -1;

  double time = 0.0;
  DualPoint mark;
  int shell = kLarge;

  bool is_large() const { return shell == kLarge; }
};

/// Brownian component on the time grid: cumulative dual coordinates at the
/// grid nodes (cumulative[0] is the zero vector at time 0).
struct WienerComponent {
  std::vector<double> node_times;
  std::vector<std::vector<double>> cumulative;
};

enum class PathComponent { Drift, Wiener, SmallJumps, LargeJumps };

/// Everything needed to evaluate one cadlag replica path: grid Brownian
/// motion, time-stamped jumps, the drift, the shell compensators and the
/// L2 truncation budget res(K).
struct PathSkeleton {
  double horizon = 0.0;
  SeminormIndex r;
  DualPoint drift;
  WienerComponent wiener;
  std::vector<JumpRecord> jumps;  // sorted by time
  std::vector<DualPoint> shell_compensators;
  DualPoint total_compensator;
  double residual = 0.0;
};

/// Mean-zero Gaussian increments with covariance grid_dt * Q per cell,
/// independent across cells. A zero form produces an identically zero
/// component without consuming randomness.
WienerComponent sample_wiener(const CovarianceForm& cov, const SimConfig& cfg,
                              Rng& rng);

/// Compound-Poisson tail jumps: count ~ Poisson(T nu(rho' > 1)), times
/// uniform on (0, T], marks from the normalized restriction.
std::vector<JumpRecord> sample_large_jumps(const LevyMeasure& nu, SeminormIndex r,
                                           const SimConfig& cfg, Rng& rng);

struct SmallJumpsResult {
  std::vector<JumpRecord> jumps;
  std::vector<DualPoint> compensators;  // b_k per shell
  double residual = 0.0;
};

/// Shell-truncated small-jump part: an independent compound Poisson per
/// dyadic shell (consumed in ascending shell order from the given stream),
/// with per-shell compensators. The martingale value at t is
/// sum_k (shell-k jump sum up to t) - t b_k, and the reported residual
/// bounds the L2 truncation error by t p_r(phi)^2 res(K).
SmallJumpsResult sample_small_jumps(const LevyMeasure& nu, SeminormIndex r,
                                    const SimConfig& cfg, Rng& rng);

/// Prepared simulator for one triplet/config: shell decomposition and the
/// restricted samplers are built once and shared across replicas. Each
/// replica derives one substream per (context, replica, component, shell),
/// so outputs are bitwise reproducible regardless of execution order.
class LevySimulator {
 public:
  LevySimulator(CharTriplet triplet, SimConfig cfg);

  PathSkeleton replica(std::uint64_t replica_index, std::uint64_t context = 0) const;

  const CharTriplet& triplet() const { return triplet_; }
  const SimConfig& config() const { return cfg_; }
  const ShellDecomposition& shells() const { return shells_; }
  double residual() const { return shells_.residual; }
  double tail_mass() const { return tail_mass_; }

 private:
  CharTriplet triplet_;
  SimConfig cfg_;
  ShellDecomposition shells_;
  std::vector<RestrictedJumpSampler> shell_samplers_;
  RestrictedJumpSampler tail_sampler_;
  double tail_mass_ = 0.0;
  DualPoint total_compensator_;
};

/// One replica of the decomposition path for the given triplet.
PathSkeleton assemble_levy(const CharTriplet& triplet, const SimConfig& cfg,
                           std::uint64_t replica_index, std::uint64_t context = 0);

/// Right-continuous evaluation L_t[phi]; jumps count iff their time <= t,
/// the Brownian part is interpolated linearly between grid nodes. Throws
/// std::domain_error for t outside [0, T].
double evaluate_path(const PathSkeleton& path, double t, const TestFunction& phi);

double evaluate_component(const PathSkeleton& path, PathComponent component,
                          double t, const TestFunction& phi);

/// N(t, A): number of recorded jumps with time <= t and mark in A.
/// A must be bounded below (mirrors the ring of admissible jump sets).
std::size_t count_jumps(const PathSkeleton& path, const Region& a, double t);

struct ComponentSample {
  double drift = 0.0;
  double wiener = 0.0;
  double small = 0.0;
  double large = 0.0;

  double total() const { return drift + wiener + small + large; }
};

/// All components at a (times x phis) grid in one pass over the path.
/// Result is indexed [time][phi].
std::vector<std::vector<ComponentSample>> evaluate_components(
    const PathSkeleton& path, const std::vector<double>& times,
    const std::vector<TestFunction>& phis);

}  // namespace seqlevy
