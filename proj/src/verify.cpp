#include "seqlevy/verify.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "seqlevy/parallel.hpp"
#include "seqlevy/stats.hpp"

namespace seqlevy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Context words keeping the sampling passes of different tests (and the
// independent arms within one test) on disjoint substreams.
namespace ctx {
constexpr std::uint64_t kEcf = 101;
constexpr std::uint64_t kMoments = 102;
constexpr std::uint64_t kIndependence = 103;
constexpr std::uint64_t kSemigroupWhole = 104;
constexpr std::uint64_t kSemigroupS = 105;
constexpr std::uint64_t kSemigroupT = 106;
constexpr std::uint64_t kJumpCount = 107;
constexpr std::uint64_t kInfdivRef = 108;
constexpr std::uint64_t kInfdivBase = 1000;  // + root index j
}  // namespace ctx

double ratio(double deviation, double allowed) {
  if (allowed > 0.0) return deviation / allowed;
  return deviation == 0.0 ? 0.0 : kInf;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

TestReport finish(TestReport rep) {
  rep.pass = !rep.inconclusive && rep.statistic <= rep.threshold;
  return rep;
}

// Evaluation times must sit on grid nodes for the Brownian part to be
// exact; snap away the rounding of sums like 0.3 + 0.7.
double snap_to_grid(const SimConfig& cfg, double t) {
  const double tol = 1e-9 * std::max(1.0, cfg.horizon);
  if (std::abs(t - cfg.horizon) <= tol) return cfg.horizon;
  const double snapped = std::round(t / cfg.grid_dt) * cfg.grid_dt;
  if (std::abs(snapped - t) <= tol && snapped <= cfg.horizon) return snapped;
  return t;
}

}  // namespace

int summary_exit_code(const std::vector<TestReport>& reports) {
  bool any_fail = false, any_inconclusive = false;
  for (const TestReport& r : reports) {
    if (r.inconclusive)
      any_inconclusive = true;
    else if (!r.pass)
      any_fail = true;
  }
  if (any_fail) return 1;
  if (any_inconclusive) return 2;
  return 0;
}

std::vector<TestFunction> probe_ball(SeminormIndex p, std::size_t dim,
                                     std::size_t count, double radius) {
  if (dim == 0 || count == 0 || !(radius > 0.0))
    throw std::invalid_argument("probe_ball: bad arguments");
  // Additive-recurrence lattice in dim+1 coordinates: the extra coordinate
  // drives the radial factor.
  const std::size_t d = dim + 1;
  double gamma = 1.5;
  for (int it = 0; it < 64; ++it)
    gamma = std::pow(1.0 + gamma, 1.0 / (static_cast<double>(d) + 1.0));
  std::vector<double> alpha(d);
  for (std::size_t j = 0; j < d; ++j)
    alpha[j] = std::fmod(std::pow(1.0 / gamma, static_cast<double>(j + 1)), 1.0);

  std::vector<TestFunction> out;
  out.reserve(count);
  std::vector<double> u(d);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      u[j] = std::fmod(0.5 + static_cast<double>(i + 1) * alpha[j], 1.0);
    std::vector<double> v(dim);
    for (std::size_t n = 0; n < dim; ++n) v[n] = 2.0 * u[n] - 1.0;
    TestFunction direction{};
    direction.coords = v;
    double norm = seminorm(direction, p);
    if (norm <= 1e-12) {
      direction.coords.assign(dim, 0.0);
      direction.coords[0] = 1.0;
      norm = seminorm(direction, p);
    }
    const double radial = std::max(u[dim], 0.05);
    const double scale = radius * radial / norm;
    for (double& x : direction.coords) x *= scale;
    out.push_back(std::move(direction));
  }
  return out;
}

TestReport ecf_test(const CharTriplet& triplet, double t,
                    const std::vector<TestFunction>& phis, const SimConfig& cfg,
                    std::size_t threads, const CharTriplet* theory) {
  cfg.check();
  if (!(t >= 0.0) || t > cfg.horizon)
    throw std::domain_error("ecf_test: t outside [0, horizon]");
  if (phis.empty()) throw std::invalid_argument("ecf_test: empty probe list");
  const CharTriplet& th = theory ? *theory : triplet;

  const LevySimulator sim(triplet, cfg);
  const double t_eval = snap_to_grid(cfg, t);
  const std::size_t P = phis.size();
  const std::vector<double> times{t_eval};

  std::vector<std::vector<double>> slots(cfg.replicas);
  parallel_for(cfg.replicas, threads, [&](std::size_t i) {
    const PathSkeleton path = sim.replica(i, ctx::kEcf);
    const auto vals = evaluate_components(path, times, phis);
    std::vector<double> row(2 * P);
    for (std::size_t pi = 0; pi < P; ++pi) {
      const double x = vals[0][pi].total();
      row[2 * pi] = std::cos(x);
      row[2 * pi + 1] = std::sin(x);
    }
    slots[i] = std::move(row);
  });

  std::vector<double> re(P, 0.0), im(P, 0.0);
  for (std::size_t i = 0; i < cfg.replicas; ++i)
    for (std::size_t pi = 0; pi < P; ++pi) {
      re[pi] += slots[i][2 * pi];
      im[pi] += slots[i][2 * pi + 1];
    }

  const double n = static_cast<double>(cfg.replicas);
  double worst = 0.0;
  double worst_dev = 0.0;
  std::size_t worst_phi = 0;
  for (std::size_t pi = 0; pi < P; ++pi) {
    const std::complex<double> ecf(re[pi] / n, im[pi] / n);
    const std::complex<double> target = cf_levy(th, t_eval, phis[pi]);
    const double dev = std::abs(ecf - target);
    const double pphi = seminorm(phis[pi], triplet.r);
    const double tol = 5.0 / std::sqrt(n) + t_eval * pphi * pphi * sim.residual();
    const double rr = ratio(dev, tol);
    if (rr > worst) {
      worst = rr;
      worst_dev = dev;
      worst_phi = pi;
    }
  }

  TestReport rep;
  rep.name = "ecf";
  rep.statistic = worst;
  rep.threshold = 1.0;
  rep.sample_size = cfg.replicas;
  rep.seed = cfg.master_seed;
  rep.notes = "max |ecf - cf| = " + fmt(worst_dev) + " at phi#" +
              std::to_string(worst_phi) + ", res(K) = " + fmt(sim.residual());
  return finish(rep);
}

TestReport moment_tests(const CharTriplet& triplet, double t,
                        const std::vector<TestFunction>& phis, const SimConfig& cfg,
                        std::size_t threads, double theory_scale) {
  cfg.check();
  if (!(t >= 0.0) || t > cfg.horizon)
    throw std::domain_error("moment_tests: t outside [0, horizon]");
  if (phis.empty()) throw std::invalid_argument("moment_tests: empty probe list");

  const LevySimulator sim(triplet, cfg);
  const double t_eval = snap_to_grid(cfg, t);
  const std::size_t P = phis.size();
  const std::vector<double> times{t_eval};
  const Region tail = Region::complement(1.0, triplet.r);

  // slots[i] holds (J_t[phi], M_t[phi]) per phi.
  std::vector<std::vector<double>> slots(cfg.replicas);
  parallel_for(cfg.replicas, threads, [&](std::size_t i) {
    const PathSkeleton path = sim.replica(i, ctx::kMoments);
    const auto vals = evaluate_components(path, times, phis);
    std::vector<double> row(2 * P);
    for (std::size_t pi = 0; pi < P; ++pi) {
      row[2 * pi] = vals[0][pi].large;
      row[2 * pi + 1] = vals[0][pi].small;
    }
    slots[i] = std::move(row);
  });

  double worst = 0.0;
  std::string worst_what = "none";
  auto consider = [&](double dev, double allowed, const std::string& what) {
    const double rr = ratio(dev, allowed);
    if (rr > worst) {
      worst = rr;
      worst_what = what + " dev=" + fmt(dev) + " allowed=" + fmt(allowed);
    }
  };

  std::vector<double> j_vals(cfg.replicas), m_vals(cfg.replicas);
  for (std::size_t pi = 0; pi < P; ++pi) {
    for (std::size_t i = 0; i < cfg.replicas; ++i) {
      j_vals[i] = slots[i][2 * pi];
      m_vals[i] = slots[i][2 * pi + 1];
    }
    const SampleMoments js = sample_moments(j_vals);
    const SampleMoments ms = sample_moments(m_vals);
    const PoissonMoments theo = moments_poisson_integral(triplet.levy, tail,
                                                         t_eval, phis[pi]);
    const double m2 = second_moment_small_jumps(triplet.levy, triplet.r, t_eval,
                                                phis[pi]);
    const double pphi = seminorm(phis[pi], triplet.r);
    const double res_slack = t_eval * pphi * pphi * sim.residual();
    const std::string tag = "phi#" + std::to_string(pi);
    consider(std::abs(js.mean - theory_scale * theo.mean), 4.0 * js.se_mean,
             tag + " J mean");
    consider(std::abs(js.variance - theory_scale * theo.variance),
             4.0 * js.se_variance, tag + " J var");
    consider(std::abs(ms.mean), 4.0 * ms.se_mean, tag + " M mean");
    consider(std::abs(ms.variance - theory_scale * m2),
             4.0 * ms.se_variance + res_slack, tag + " M var");
  }

  TestReport rep;
  rep.name = "moments";
  rep.statistic = worst;
  rep.threshold = 1.0;
  rep.sample_size = cfg.replicas;
  rep.seed = cfg.master_seed;
  rep.notes = "worst: " + worst_what;
  return finish(rep);
}

TestReport independence_test(const CharTriplet& triplet, const TestFunction& phi,
                             const TestFunction& psi, const SimConfig& cfg,
                             std::size_t threads, bool shared_streams) {
  cfg.check();
  const LevySimulator sim(triplet, cfg);
  const double t_eval = snap_to_grid(cfg, std::min(1.0, cfg.horizon));
  const std::vector<double> times{t_eval};
  const std::vector<TestFunction> both{phi, psi};

  // Per replica: W[phi], M[phi], J[psi], (L-J)[phi], and a duplicate
  // Wiener draw from the same substream for the negative control.
  std::vector<std::array<double, 5>> slots(cfg.replicas);
  parallel_for(cfg.replicas, threads, [&](std::size_t i) {
    const PathSkeleton path = sim.replica(i, ctx::kIndependence);
    const auto vals = evaluate_components(path, times, both);
    const ComponentSample& cphi = vals[0][0];
    const ComponentSample& cpsi = vals[0][1];
    double dup = cphi.wiener;
    if (shared_streams) {
      Rng rng(stream_seed(cfg.master_seed, ctx::kIndependence, i,
                          StreamComponent::Wiener));
      const WienerComponent w = sample_wiener(triplet.cov, cfg, rng);
      PathSkeleton copy;
      copy.horizon = path.horizon;
      copy.r = path.r;
      copy.drift = path.drift;
      copy.wiener = w;
      copy.total_compensator = path.total_compensator;
      dup = evaluate_component(copy, PathComponent::Wiener, t_eval, phi);
    }
    slots[i] = {cphi.wiener, cphi.small, cpsi.large,
                cphi.drift + cphi.wiener + cphi.small, dup};
  });

  const std::size_t n = cfg.replicas;
  auto column = [&](std::size_t c) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = slots[i][c];
    return v;
  };
  const std::vector<double> w = column(0), m = column(1), j = column(2),
                            lmj = column(3), dup = column(4);

  struct Pair {
    const std::vector<double>* a;
    const std::vector<double>* b;
    const char* name;
  };
  std::vector<Pair> pairs;
  if (shared_streams) {
    pairs.push_back({&w, &dup, "W vs W(shared stream)"});
  } else {
    pairs.push_back({&w, &m, "W vs M"});
    pairs.push_back({&w, &j, "W vs J"});
    pairs.push_back({&m, &j, "M vs J"});
    pairs.push_back({&lmj, &j, "(L-J) vs J"});
  }

  const double bound = 4.0 / std::sqrt(static_cast<double>(n));
  double worst = 0.0;
  std::string notes;
  std::size_t tested = 0;
  for (const Pair& p : pairs) {
    bool degenerate = false;
    const double corr = pearson_correlation(*p.a, *p.b, &degenerate);
    if (degenerate) {
      notes += std::string(p.name) + ": skipped (degenerate); ";
      continue;
    }
    ++tested;
    worst = std::max(worst, ratio(std::abs(corr), bound));
    notes += std::string(p.name) + ": corr=" + fmt(corr) + "; ";
  }

  TestReport rep;
  rep.name = shared_streams ? "independence(negative-control)" : "independence";
  rep.statistic = worst;
  rep.threshold = 1.0;
  rep.sample_size = n;
  rep.seed = cfg.master_seed;
  if (tested == 0) notes += "all pairs degenerate: trivially pass";
  rep.notes = notes + "bound=" + fmt(bound);
  return finish(rep);
}

TestReport semigroup_test(const CharTriplet& triplet, double s, double t,
                          const std::vector<TestFunction>& phis,
                          const SimConfig& cfg, std::size_t threads,
                          double mismatch) {
  cfg.check();
  if (!(s > 0.0) || !(t > 0.0))
    throw std::domain_error("semigroup_test: need s, t > 0");
  if (s + t > cfg.horizon + 1e-12)
    throw std::domain_error("semigroup_test: s + t exceeds the horizon");
  if (phis.empty()) throw std::invalid_argument("semigroup_test: empty probe list");

  // (a) exact convolution identity of the characteristic function.
  double exact_worst = 0.0;
  for (const TestFunction& phi : phis) {
    const std::complex<double> eta = lk_exponent(triplet, phi);
    const double dev =
        std::abs(std::exp((s + t) * eta) - std::exp(s * eta) * std::exp(t * eta));
    exact_worst = std::max(exact_worst, dev);
  }

  // (b) two-sample KS per phi: L_{s+t} vs independent L_s + L'_{t~}.
  const LevySimulator sim(triplet, cfg);
  const std::size_t P = phis.size();
  const double t_whole = snap_to_grid(cfg, s + t);
  const double t_s = snap_to_grid(cfg, s);
  const double t_t = snap_to_grid(cfg, t * mismatch);
  if (t_t > cfg.horizon)
    throw std::domain_error("semigroup_test: mismatched time exceeds horizon");

  std::vector<std::vector<double>> whole(cfg.replicas), sum(cfg.replicas);
  parallel_for(cfg.replicas, threads, [&](std::size_t i) {
    const PathSkeleton pw = sim.replica(i, ctx::kSemigroupWhole);
    const auto vw = evaluate_components(pw, {t_whole}, phis);
    const PathSkeleton ps = sim.replica(i, ctx::kSemigroupS);
    const auto vs = evaluate_components(ps, {t_s}, phis);
    const PathSkeleton pt = sim.replica(i, ctx::kSemigroupT);
    const auto vt = evaluate_components(pt, {t_t}, phis);
    std::vector<double> a(P), b(P);
    for (std::size_t pi = 0; pi < P; ++pi) {
      a[pi] = vw[0][pi].total();
      b[pi] = vs[0][pi].total() + vt[0][pi].total();
    }
    whole[i] = std::move(a);
    sum[i] = std::move(b);
  });

  const double crit = ks_two_sample_critical(0.01, cfg.replicas, cfg.replicas);
  double ks_worst = 0.0;
  double ks_stat_worst = 0.0;
  for (std::size_t pi = 0; pi < P; ++pi) {
    std::vector<double> a(cfg.replicas), b(cfg.replicas);
    for (std::size_t i = 0; i < cfg.replicas; ++i) {
      a[i] = whole[i][pi];
      b[i] = sum[i][pi];
    }
    // Degenerate-equal samples (e.g. drift only) have D = 0 and pass.
    const double d = ks_two_sample(a, b);
    if (ratio(d, crit) > ks_worst) {
      ks_worst = ratio(d, crit);
      ks_stat_worst = d;
    }
  }

  TestReport rep;
  rep.name = "semigroup";
  rep.statistic = std::max(exact_worst / 1e-12, ks_worst);
  rep.threshold = 1.0;
  rep.sample_size = cfg.replicas;
  rep.seed = cfg.master_seed;
  rep.notes = "exact dev " + fmt(exact_worst) + " (tol 1e-12); worst KS D = " +
              fmt(ks_stat_worst) + " (crit " + fmt(crit) + ")";
  return finish(rep);
}

TestReport infdiv_test(const CharTriplet& triplet, unsigned n,
                       const std::vector<TestFunction>& phis, const SimConfig& cfg,
                       std::size_t threads, bool negative_control) {
  cfg.check();
  if (n < 1) throw std::domain_error("infdiv_test: n must be >= 1");
  if (phis.empty()) throw std::invalid_argument("infdiv_test: empty probe list");
  if (cfg.horizon < 1.0)
    throw std::domain_error("infdiv_test: horizon must cover t = 1");

  const CharTriplet root = nth_root_triplet(triplet, n);

  // Exact CF identity cf_root^n = cf.
  double exact_worst = 0.0;
  for (const TestFunction& phi : phis) {
    const std::complex<double> lhs = std::pow(cf_levy(root, 1.0, phi), n);
    const std::complex<double> rhs = cf_levy(triplet, 1.0, phi);
    exact_worst = std::max(exact_worst, std::abs(lhs - rhs));
  }

  const LevySimulator ref_sim(triplet, cfg);
  const LevySimulator root_sim(root, cfg);
  const std::size_t P = phis.size();
  const double t_eval = snap_to_grid(cfg, 1.0);
  const unsigned copies = negative_control ? n - 1 : n;

  std::vector<std::vector<double>> ref(cfg.replicas), sum(cfg.replicas);
  parallel_for(cfg.replicas, threads, [&](std::size_t i) {
    const PathSkeleton pr = ref_sim.replica(i, ctx::kInfdivRef);
    const auto vr = evaluate_components(pr, {t_eval}, phis);
    std::vector<double> a(P), b(P, 0.0);
    for (std::size_t pi = 0; pi < P; ++pi) a[pi] = vr[0][pi].total();
    for (unsigned j = 0; j < copies; ++j) {
      const PathSkeleton pj = root_sim.replica(i, ctx::kInfdivBase + j);
      const auto vj = evaluate_components(pj, {t_eval}, phis);
      for (std::size_t pi = 0; pi < P; ++pi) b[pi] += vj[0][pi].total();
    }
    ref[i] = std::move(a);
    sum[i] = std::move(b);
  });

  const double crit = ks_two_sample_critical(0.01, cfg.replicas, cfg.replicas);
  double ks_worst = 0.0;
  for (std::size_t pi = 0; pi < P; ++pi) {
    std::vector<double> a(cfg.replicas), b(cfg.replicas);
    for (std::size_t i = 0; i < cfg.replicas; ++i) {
      a[i] = ref[i][pi];
      b[i] = sum[i][pi];
    }
    ks_worst = std::max(ks_worst, ratio(ks_two_sample(a, b), crit));
  }

  TestReport rep;
  rep.name = negative_control ? "infdiv(negative-control)" : "infdiv";
  rep.statistic = std::max(exact_worst / 1e-10, ks_worst);
  rep.threshold = 1.0;
  rep.sample_size = cfg.replicas;
  rep.seed = cfg.master_seed;
  rep.notes = "n=" + std::to_string(n) + ", exact dev " + fmt(exact_worst) +
              " (tol 1e-10), copies summed: " + std::to_string(copies);
  return finish(rep);
}

TestReport jump_count_test(const CharTriplet& triplet, const Region& a, double t,
                           const SimConfig& cfg, std::size_t threads,
                           double rate_scale) {
  cfg.check();
  if (!a.bounded_below())
    throw std::domain_error("jump_count_test: region must be bounded below");
  if (!(t >= 0.0) || t > cfg.horizon)
    throw std::domain_error("jump_count_test: t outside [0, horizon]");

  const double lambda = region_mass(triplet.levy, a) * rate_scale;
  TestReport rep;
  rep.name = "jump_count";
  rep.sample_size = cfg.replicas;
  rep.seed = cfg.master_seed;
  if (lambda == 0.0 && rate_scale == 1.0) {
    rep.statistic = 0.0;
    rep.threshold = 1.0;
    rep.notes = "region mass 0: trivially pass";
    return finish(rep);
  }

  const LevySimulator sim(triplet, cfg);
  std::vector<std::size_t> counts(cfg.replicas);
  parallel_for(cfg.replicas, threads, [&](std::size_t i) {
    const PathSkeleton path = sim.replica(i, ctx::kJumpCount);
    counts[i] = count_jumps(path, a, t);
  });

  std::vector<double> as_double(counts.begin(), counts.end());
  const SampleMoments sm = sample_moments(as_double);
  const double mean_ratio = ratio(std::abs(sm.mean - t * lambda), 4.0 * sm.se_mean);
  const ChiSquareResult gof = poisson_gof(counts, t * lambda);
  const double gof_ratio = gof.pvalue > 0.0 ? 0.01 / gof.pvalue : kInf;

  rep.statistic = std::max(mean_ratio, gof_ratio);
  rep.threshold = 1.0;
  rep.notes = "empirical mean " + fmt(sm.mean) + " vs " + fmt(t * lambda) +
              "; chi2 p = " + fmt(gof.pvalue) + " (" + std::to_string(gof.bins) +
              " bins)";
  return finish(rep);
}

TestReport fernique_check(const CharTriplet& triplet, SeminormIndex p, double eps,
                          const std::vector<unsigned>& n_list,
                          const std::vector<TestFunction>& phis) {
  if (!(eps > 0.0) || eps > 0.25)
    throw std::invalid_argument("fernique_check: eps must lie in (0, 1/4]");
  if (n_list.empty() || phis.empty())
    throw std::invalid_argument("fernique_check: empty probe lists");

  TestReport rep;
  rep.name = "fernique";
  rep.sample_size = 0;
  rep.seed = 0;

  // Premise probe over the p-unit ball (finite grid; a pass means the
  // premise plausibly holds, flagged as such in the notes).
  const auto probes = probe_ball(p, triplet.dim(), 256, 1.0);
  double premise_worst = 0.0;
  for (const TestFunction& phi : probes)
    premise_worst = std::max(premise_worst, std::abs(1.0 - cf_levy(triplet, 1.0, phi)));
  if (premise_worst >= eps) {
    rep.inconclusive = true;
    rep.statistic = premise_worst;
    rep.threshold = eps;
    rep.notes = "premise fails on probe grid: max |1 - cf| = " + fmt(premise_worst) +
                " >= eps";
    return rep;
  }

  double worst_gap = -kInf;
  double min_slack = kInf;
  for (const TestFunction& phi : phis) {
    const std::complex<double> eta = lk_exponent(triplet, phi);
    const double pphi = seminorm(phi, p);
    const double rhs = 8.0 * eps * (1.0 + pphi * pphi);
    for (unsigned n : n_list) {
      if (n == 0) throw std::invalid_argument("fernique_check: n must be >= 1");
      const double lhs =
          static_cast<double>(n) *
          (1.0 - std::real(std::exp(eta / static_cast<double>(n))));
      worst_gap = std::max(worst_gap, lhs - rhs);
      min_slack = std::min(min_slack, rhs - lhs);
    }
  }

  rep.statistic = worst_gap;
  rep.threshold = 0.0;
  rep.notes = "premise plausibly holds (grid max " + fmt(premise_worst) +
              " < eps); min slack " + fmt(min_slack);
  return finish(rep);
}

TestReport minlos_check(const LevyMeasure& mu, SeminormIndex p, SeminormIndex q,
                        double eps, std::size_t dim) {
  if (!(eps > 0.0)) throw std::invalid_argument("minlos_check: eps must be > 0");
  if (!(q.r > p.r + 0.5))
    throw std::invalid_argument(
        "minlos_check: requires q > p + 1/2 (Hilbert-Schmidt embedding)");
  if (mu.dim() != dim)
    throw std::invalid_argument("minlos_check: dimension mismatch");
  if (!std::isfinite(mu.total_mass()))
    throw std::invalid_argument("minlos_check: measure must be finite");

  TestReport rep;
  rep.name = "minlos";
  rep.sample_size = 0;
  rep.seed = 0;

  // Premise quantity mu_hat(0) - Re mu_hat(phi): reduces to 1 - Re mu_hat
  // for probability measures and is what the capped-moment bound controls
  // for general bounded measures.
  const double total = mu.total_mass();
  double premise_worst = -kInf;
  for (const double radius : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (const TestFunction& phi : probe_ball(p, dim, 256, radius)) {
      const double lhs = total - std::real(finite_measure_cf(mu, phi));
      const double pphi = seminorm(phi, p);
      premise_worst = std::max(premise_worst, lhs - eps * (1.0 + pphi * pphi));
    }
  }
  if (premise_worst > 0.0) {
    rep.inconclusive = true;
    rep.statistic = premise_worst;
    rep.threshold = 0.0;
    rep.notes = "premise fails on probe grid by " + fmt(premise_worst);
    return rep;
  }

  const double lhs = integrability_functional(mu, q).value;
  const double rhs = eps * (1.0 + hs_norm_sq(p, q, dim).value);
  rep.statistic = lhs - rhs;
  rep.threshold = 0.0;
  rep.notes = "premise plausibly holds (grid); capped moment " + fmt(lhs) +
              " vs bound " + fmt(rhs);
  return finish(rep);
}

}  // namespace seqlevy
