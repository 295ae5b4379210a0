#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqlevy/char_func.hpp"
#include "seqlevy/simulate.hpp"

namespace seqlevy {

/// Outcome of one verification test. For conclusive tests pass is exactly
/// statistic <= threshold. Inconclusive reports (a premise probe failed)
/// are neither passes nor failures.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool inconclusive = false;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  std::string notes;
};

/// 0 when every report passes, 1 when any fails, 2 when the only
/// non-passes are inconclusive.
int summary_exit_code(const std::vector<TestReport>& reports);

/// Deterministic quasi-random probe functions with p(phi) <= radius
/// (additive-recurrence lattice mapped into the seminorm ball).
std::vector<TestFunction> probe_ball(SeminormIndex p, std::size_t dim,
                                     std::size_t count, double radius);

/// Empirical characteristic function of L_t against exp(t eta) on a list
/// of probe functions. Per-phi tolerance 5/sqrt(N) + t p_r(phi)^2 res(K);
/// the statistic is the worst deviation/tolerance ratio. A different
/// `theory` triplet substitutes deliberately wrong targets (negative
/// control).
TestReport ecf_test(const CharTriplet& triplet, double t,
                    const std::vector<TestFunction>& phis, const SimConfig& cfg,
                    std::size_t threads = 1, const CharTriplet* theory = nullptr);

/// Mean/variance of the large-jump integral and the compensated small-jump
/// martingale against their closed-form targets, within 4 standard errors
/// (plus the res(K) slack for the truncated martingale variance).
/// theory_scale != 1 corrupts the targets (negative control).
TestReport moment_tests(const CharTriplet& triplet, double t,
                        const std::vector<TestFunction>& phis, const SimConfig& cfg,
                        std::size_t threads = 1, double theory_scale = 1.0);

/// Pairwise correlations of the decomposition components
/// (W_1[phi], M_1[phi]), (W_1[phi], J_1[psi]), (M_1[phi], J_1[psi]) and
/// (L-J)_1[phi] vs J_1[psi], each bounded by 4/sqrt(N). With
/// shared_streams the Wiener component is sampled twice from one
/// substream, a designed failure with correlation 1.
TestReport independence_test(const CharTriplet& triplet, const TestFunction& phi,
                             const TestFunction& psi, const SimConfig& cfg,
                             std::size_t threads = 1, bool shared_streams = false);

/// (a) exact semigroup law cf(s+t) = cf(s) cf(t) to 1e-12 and (b) a
/// two-sample KS test of L_{s+t}[phi] against independent L_s[phi] +
/// L'_t[phi] at level 0.01. mismatch scales the second arm's time
/// (negative control).
TestReport semigroup_test(const CharTriplet& triplet, double s, double t,
                          const std::vector<TestFunction>& phis,
                          const SimConfig& cfg, std::size_t threads = 1,
                          double mismatch = 1.0);

/// Exact n-th root CF identity to 1e-10 plus a KS test of the sum of n
/// independent root-triplet copies against L_1. With negative_control only
/// n-1 copies are summed (designed failure).
TestReport infdiv_test(const CharTriplet& triplet, unsigned n,
                       const std::vector<TestFunction>& phis, const SimConfig& cfg,
                       std::size_t threads = 1, bool negative_control = false);

/// Jump counts N(t, A) against Poisson(t nu(A)): mean within 4 standard
/// errors and a chi-square goodness-of-fit p-value >= 0.01. rate_scale
/// corrupts the target rate (negative control).
TestReport jump_count_test(const CharTriplet& triplet, const Region& a, double t,
                           const SimConfig& cfg, std::size_t threads = 1,
                           double rate_scale = 1.0);

/// Deterministic check of the infinite-divisibility tail inequality: if
/// |1 - cf(1, phi)| < eps <= 1/4 on a probe set of the p-unit ball, then
/// n (1 - Re cf(1, phi)^{1/n}) <= 8 eps (1 + p(phi)^2) for the given n and
/// phi. A failed premise yields an inconclusive report, never a failure.
TestReport fernique_check(const CharTriplet& triplet, SeminormIndex p, double eps,
                          const std::vector<unsigned>& n_list,
                          const std::vector<TestFunction>& phis);

/// Deterministic check of the capped-moment bound for a finite measure mu:
/// premise mu_hat(0) - Re mu_hat(phi) <= eps (1 + p(phi)^2) on a probe
/// grid (the probability-measure form 1 - Re mu_hat, extended to bounded
/// measures), and conclusion int (q'(f)^2 ∧ 1) mu(df) <=
/// eps (1 + ||i_{p,q}||_HS^2). Requires q > p + 1/2 so the untruncated
/// embedding is Hilbert-Schmidt.
TestReport minlos_check(const LevyMeasure& mu, SeminormIndex p, SeminormIndex q,
                        double eps, std::size_t dim);

}  // namespace seqlevy
