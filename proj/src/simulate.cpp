#include "seqlevy/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqlevy {

namespace {

std::vector<double> grid_nodes(const SimConfig& cfg) {
  std::vector<double> nodes{0.0};
  const std::size_t full =
      static_cast<std::size_t>(std::floor(cfg.horizon / cfg.grid_dt + 1e-12));
  for (std::size_t i = 1; i <= full; ++i)
    nodes.push_back(static_cast<double>(i) * cfg.grid_dt);
  if (cfg.horizon - nodes.back() > 1e-12 * cfg.horizon) nodes.push_back(cfg.horizon);
  nodes.back() = cfg.horizon;
  return nodes;
}

// Compound Poisson over [0, T]: Poisson count, uniform times, marks from
// the restricted sampler. Consumption order: count, then (time, mark) per
// jump.
void compound_poisson(const RestrictedJumpSampler& sampler, double rate,
                      double horizon, int shell_tag, Rng& rng,
                      std::vector<JumpRecord>& out) {
  if (rate <= 0.0) return;
  const std::uint64_t count = rng.poisson(rate * horizon);
  for (std::uint64_t j = 0; j < count; ++j) {
    JumpRecord rec;
    rec.time = rng.uniform_open01() * horizon;
    rec.mark = sampler.sample(rng);
    rec.shell = shell_tag;
    out.push_back(std::move(rec));
  }
}

void sort_jumps(std::vector<JumpRecord>& jumps) {
  std::stable_sort(jumps.begin(), jumps.end(),
                   [](const JumpRecord& a, const JumpRecord& b) { return a.time < b.time; });
}

}  // namespace

void SimConfig::check() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("SimConfig: horizon must be positive");
  if (!(grid_dt > 0.0) || grid_dt > horizon)
    throw std::invalid_argument("SimConfig: need 0 < grid_dt <= horizon");
  if (shells == 0) throw std::invalid_argument("SimConfig: need at least one shell");
  if (truncation == 0) throw std::invalid_argument("SimConfig: truncation must be >= 1");
  if (replicas == 0) throw std::invalid_argument("SimConfig: need at least one replica");
}

WienerComponent sample_wiener(const CovarianceForm& cov, const SimConfig& cfg,
                              Rng& rng) {
  cfg.check();
  WienerComponent w;
  w.node_times = grid_nodes(cfg);
  const std::size_t dim = cov.dim();
  w.cumulative.assign(w.node_times.size(), std::vector<double>(dim, 0.0));
  if (cov.is_zero()) return w;

  const Eigen::MatrixXd& factor = cov.sampling_factor();
  Eigen::VectorXd z(static_cast<Eigen::Index>(dim));
  for (std::size_t cell = 1; cell < w.node_times.size(); ++cell) {
    const double width = w.node_times[cell] - w.node_times[cell - 1];
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.gaussian();
    const Eigen::VectorXd inc = std::sqrt(width) * (factor * z);
    for (std::size_t n = 0; n < dim; ++n)
      w.cumulative[cell][n] = w.cumulative[cell - 1][n] + inc(static_cast<Eigen::Index>(n));
  }
  return w;
}

std::vector<JumpRecord> sample_large_jumps(const LevyMeasure& nu, SeminormIndex r,
                                           const SimConfig& cfg, Rng& rng) {
  cfg.check();
  std::vector<JumpRecord> jumps;
  const RestrictedJumpSampler sampler(nu, Region::complement(1.0, r));
  compound_poisson(sampler, sampler.total_mass(), cfg.horizon, JumpRecord::kLarge,
                   rng, jumps);
  sort_jumps(jumps);
  return jumps;
}

SmallJumpsResult sample_small_jumps(const LevyMeasure& nu, SeminormIndex r,
                                    const SimConfig& cfg, Rng& rng) {
  cfg.check();
  const ShellDecomposition decomp = shell_decomposition(nu, r, cfg.shells);
  SmallJumpsResult out;
  out.residual = decomp.residual;
  for (std::size_t k = 0; k < decomp.shells.size(); ++k) {
    const Shell& sh = decomp.shells[k];
    out.compensators.push_back(sh.compensator);
    const RestrictedJumpSampler sampler(nu, sh.region);
    compound_poisson(sampler, sh.mass, cfg.horizon, static_cast<int>(k), rng,
                     out.jumps);
  }
  sort_jumps(out.jumps);
  return out;
}

LevySimulator::LevySimulator(CharTriplet triplet, SimConfig cfg)
    : triplet_(std::move(triplet)),
      cfg_(cfg),
      shells_(shell_decomposition(triplet_.levy, triplet_.r, cfg.shells)),
      tail_sampler_(triplet_.levy, Region::complement(1.0, triplet_.r)) {
  cfg_.check();
  if (cfg_.truncation != triplet_.dim())
    throw std::invalid_argument("LevySimulator: config truncation disagrees with triplet");
  for (const Shell& sh : shells_.shells)
    shell_samplers_.emplace_back(triplet_.levy, sh.region);
  tail_mass_ = tail_sampler_.total_mass();
  total_compensator_.coords.assign(triplet_.dim(), 0.0);
  for (const Shell& sh : shells_.shells)
    for (std::size_t n = 0; n < triplet_.dim(); ++n)
      total_compensator_.coords[n] += sh.compensator.coords[n];
}

PathSkeleton LevySimulator::replica(std::uint64_t replica_index,
                                    std::uint64_t context) const {
  PathSkeleton path;
  path.horizon = cfg_.horizon;
  path.r = triplet_.r;
  path.drift = triplet_.mean;
  path.residual = shells_.residual;
  path.total_compensator = total_compensator_;
  for (const Shell& sh : shells_.shells)
    path.shell_compensators.push_back(sh.compensator);

  {
    Rng rng(stream_seed(cfg_.master_seed, context, replica_index,
                        StreamComponent::Wiener));
    path.wiener = sample_wiener(triplet_.cov, cfg_, rng);
  }
  {
    Rng rng(stream_seed(cfg_.master_seed, context, replica_index,
                        StreamComponent::LargeJumps));
    compound_poisson(tail_sampler_, tail_mass_, cfg_.horizon, JumpRecord::kLarge,
                     rng, path.jumps);
  }
  for (std::size_t k = 0; k < shell_samplers_.size(); ++k) {
    Rng rng(stream_seed(cfg_.master_seed, context, replica_index,
                        StreamComponent::SmallJumps, k));
    compound_poisson(shell_samplers_[k], shells_.shells[k].mass, cfg_.horizon,
                     static_cast<int>(k), rng, path.jumps);
  }
  sort_jumps(path.jumps);
  return path;
}

PathSkeleton assemble_levy(const CharTriplet& triplet, const SimConfig& cfg,
                           std::uint64_t replica_index, std::uint64_t context) {
  return LevySimulator(triplet, cfg).replica(replica_index, context);
}

namespace {

void check_time(const PathSkeleton& path, double t) {
  if (!(t >= 0.0) || t > path.horizon)
    throw std::domain_error("evaluate: time outside [0, horizon]");
}

double wiener_at(const PathSkeleton& path, double t, const TestFunction& phi) {
  const auto& nodes = path.wiener.node_times;
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
  const std::size_t hi = std::min(static_cast<std::size_t>(it - nodes.begin()),
                                  nodes.size() - 1);
  const std::size_t lo = hi - (hi > 0 ? 1 : 0);
  const auto value_at = [&](std::size_t idx) {
    double s = 0.0;
    for (std::size_t n = 0; n < phi.dim(); ++n)
      s += path.wiener.cumulative[idx][n] * phi.coords[n];
    return s;
  };
  if (t >= nodes[hi]) return value_at(hi);
  if (t <= nodes[lo]) return value_at(lo);
  const double frac = (t - nodes[lo]) / (nodes[hi] - nodes[lo]);
  return value_at(lo) + frac * (value_at(hi) - value_at(lo));
}

}  // namespace

double evaluate_component(const PathSkeleton& path, PathComponent component,
                          double t, const TestFunction& phi) {
  check_time(path, t);
  if (phi.dim() != path.drift.dim())
    throw std::invalid_argument("evaluate: dimension mismatch");
  switch (component) {
    case PathComponent::Drift:
      return t * pairing(path.drift, phi);
    case PathComponent::Wiener:
      return wiener_at(path, t, phi);
    case PathComponent::SmallJumps: {
      double s = -t * pairing(path.total_compensator, phi);
      for (const JumpRecord& j : path.jumps) {
        if (j.time > t) break;
        if (!j.is_large()) s += pairing(j.mark, phi);
      }
      return s;
    }
    case PathComponent::LargeJumps: {
      double s = 0.0;
      for (const JumpRecord& j : path.jumps) {
        if (j.time > t) break;
        if (j.is_large()) s += pairing(j.mark, phi);
      }
      return s;
    }
  }
  throw std::logic_error("evaluate_component: unknown component");
}

double evaluate_path(const PathSkeleton& path, double t, const TestFunction& phi) {
  check_time(path, t);
  double s = evaluate_component(path, PathComponent::Drift, t, phi);
  s += evaluate_component(path, PathComponent::Wiener, t, phi);
  s += evaluate_component(path, PathComponent::SmallJumps, t, phi);
  s += evaluate_component(path, PathComponent::LargeJumps, t, phi);
  return s;
}

std::size_t count_jumps(const PathSkeleton& path, const Region& a, double t) {
  check_time(path, t);
  if (!a.bounded_below())
    throw std::domain_error("count_jumps: region must be bounded below");
  std::size_t n = 0;
  for (const JumpRecord& j : path.jumps) {
    if (j.time > t) break;
    if (a.contains(j.mark)) ++n;
  }
  return n;
}

std::vector<std::vector<ComponentSample>> evaluate_components(
    const PathSkeleton& path, const std::vector<double>& times,
    const std::vector<TestFunction>& phis) {
  std::vector<std::vector<ComponentSample>> out(
      times.size(), std::vector<ComponentSample>(phis.size()));
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times[ti];
    check_time(path, t);
    for (std::size_t pi = 0; pi < phis.size(); ++pi) {
      ComponentSample& cs = out[ti][pi];
      cs.drift = t * pairing(path.drift, phis[pi]);
      cs.wiener = wiener_at(path, t, phis[pi]);
      cs.small = -t * pairing(path.total_compensator, phis[pi]);
    }
  }
  for (const JumpRecord& j : path.jumps) {
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      if (j.time > times[ti]) continue;
      for (std::size_t pi = 0; pi < phis.size(); ++pi) {
        const double v = pairing(j.mark, phis[pi]);
        if (j.is_large())
          out[ti][pi].large += v;
        else
          out[ti][pi].small += v;
      }
    }
  }
  return out;
}

}  // namespace seqlevy
