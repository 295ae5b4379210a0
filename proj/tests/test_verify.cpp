#include "seqlevy/verify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "seqlevy/stats.hpp"

using namespace seqlevy;

namespace {

const SeminormIndex r0{0.0};

TestFunction tf(std::vector<double> c) { return TestFunction(std::move(c)); }
DualPoint dp(std::vector<double> c) { return DualPoint(std::move(c)); }

CovarianceForm diag_form(std::vector<double> d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return CovarianceForm(std::move(m));
}

CharTriplet mixed_triplet() {
  LevyMeasure levy(2, {Atom{dp({0.0, 1.5}), 0.8}},
                   {PowerLawAxis{0, 1.0, 0.5, 1.0}}, {});
  return CharTriplet(dp({0.4, -0.1}), diag_form({0.6, 0.15}), std::move(levy), r0);
}

CharTriplet zero_triplet() {
  return CharTriplet(dp({0.0, 0.0}), CovarianceForm::zero(2), LevyMeasure(2), r0);
}

SimConfig cfg_n(std::size_t n, std::uint64_t seed, std::size_t shells = 8) {
  SimConfig cfg;
  cfg.horizon = 1.0;
  cfg.grid_dt = 0.1;
  cfg.shells = shells;
  cfg.truncation = 2;
  cfg.master_seed = seed;
  cfg.replicas = n;
  return cfg;
}

const std::vector<TestFunction> probe_phis{tf({1.0, 0.0}), tf({0.0, 1.0}),
                                           tf({0.7, -0.4})};

}  // namespace

TEST_CASE("probe_ball stays in the ball and is deterministic") {
  const auto a = probe_ball(SeminormIndex{0.5}, 3, 64, 2.0);
  const auto b = probe_ball(SeminormIndex{0.5}, 3, 64, 2.0);
  REQUIRE(a.size() == 64);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].coords == b[i].coords);
    CHECK(seminorm(a[i], SeminormIndex{0.5}) <= 2.0 + 1e-9);
    CHECK(seminorm(a[i], SeminormIndex{0.5}) > 0.0);
  }
}

TEST_CASE("ecf: zero and drift-only triplets have zero deviation") {
  const SimConfig cfg = cfg_n(500, 7);
  const TestReport zero = ecf_test(zero_triplet(), 1.0, probe_phis, cfg);
  CHECK(zero.pass);
  CHECK(zero.statistic <= 1e-10);

  const CharTriplet drift(dp({1.0, 2.0}), CovarianceForm::zero(2), LevyMeasure(2),
                          r0);
  const TestReport dr = ecf_test(drift, 1.0, probe_phis, cfg);
  CHECK(dr.pass);
  CHECK(dr.statistic <= 1e-8);
}

TEST_CASE("ecf: mixed triplet passes; corrupted theory fails") {
  const SimConfig cfg = cfg_n(20000, 11);
  const CharTriplet t = mixed_triplet();
  const TestReport ok = ecf_test(t, 1.0, probe_phis, cfg, 2);
  CHECK(ok.pass);

  const CharTriplet wrong(t.mean, t.cov.scaled(2.0), t.levy, t.r);
  const TestReport bad = ecf_test(t, 1.0, probe_phis, cfg, 2, &wrong);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("ecf is deterministic across thread counts") {
  const SimConfig cfg = cfg_n(4000, 13);
  const CharTriplet t = mixed_triplet();
  const TestReport one = ecf_test(t, 1.0, probe_phis, cfg, 1);
  const TestReport eight = ecf_test(t, 1.0, probe_phis, cfg, 8);
  CHECK(one.statistic == eight.statistic);
  CHECK(one.notes == eight.notes);
}

TEST_CASE("moments: pass at the stated N, fail under scaled theory") {
  const SimConfig cfg = cfg_n(20000, 17);
  const CharTriplet t = mixed_triplet();
  const TestReport ok = moment_tests(t, 1.0, probe_phis, cfg, 2);
  CHECK(ok.pass);
  const TestReport bad = moment_tests(t, 1.0, probe_phis, cfg, 2, 1.5);
  CHECK_FALSE(bad.pass);

  // t = 0: everything is exactly zero.
  const TestReport zero = moment_tests(t, 0.0, probe_phis, cfg_n(200, 17), 1);
  CHECK(zero.pass);
  CHECK(zero.statistic == 0.0);
}

TEST_CASE("independence: passes, and the shared-stream control fails") {
  const SimConfig cfg = cfg_n(20000, 23);
  const CharTriplet t = mixed_triplet();
  const TestReport ok =
      independence_test(t, probe_phis[0], probe_phis[1], cfg, 2);
  CHECK(ok.pass);
  const TestReport bad =
      independence_test(t, probe_phis[0], probe_phis[1], cfg, 2, true);
  CHECK_FALSE(bad.pass);
  CHECK(bad.statistic > 10.0);  // corr = 1 against a 4/sqrt(N) bound

  // Zero triplet: every component degenerate, skipped with a note.
  const TestReport zero =
      independence_test(zero_triplet(), probe_phis[0], probe_phis[1],
                        cfg_n(100, 23), 1);
  CHECK(zero.pass);
  CHECK(zero.notes.find("degenerate") != std::string::npos);
}

TEST_CASE("semigroup: exact law and two-sample KS") {
  const SimConfig cfg = cfg_n(20000, 29);
  const CharTriplet t = mixed_triplet();
  const TestReport ok = semigroup_test(t, 0.3, 0.7, probe_phis, cfg, 2);
  CHECK(ok.pass);

  // Drift-only: degenerate-equal samples, D = 0.
  const CharTriplet drift(dp({1.0, 0.0}), CovarianceForm::zero(2), LevyMeasure(2),
                          r0);
  const TestReport dr = semigroup_test(drift, 0.3, 0.7, probe_phis,
                                       cfg_n(500, 29), 1);
  CHECK(dr.pass);

  // Mismatched second arm is a designed failure.
  const TestReport bad = semigroup_test(t, 0.3, 0.7, probe_phis, cfg, 2, 0.5);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("infdiv: root sums reproduce the law") {
  const SimConfig cfg = cfg_n(20000, 31);
  const CharTriplet t = mixed_triplet();
  CHECK(infdiv_test(t, 1, probe_phis, cfg_n(2000, 31), 2).pass);
  CHECK(infdiv_test(t, 4, probe_phis, cfg, 2).pass);

  // Gaussian-only n = 4 and atomic-only n = 2.
  const CharTriplet gauss(dp({0.0, 0.0}), diag_form({1.0, 0.25}), LevyMeasure(2),
                          r0);
  CHECK(infdiv_test(gauss, 4, probe_phis, cfg, 2).pass);
  const CharTriplet atomic(dp({0.0, 0.0}), CovarianceForm::zero(2),
                           LevyMeasure(2, {Atom{dp({0.6, 0.0}), 1.2}}, {}, {}), r0);
  CHECK(infdiv_test(atomic, 2, probe_phis, cfg, 2).pass);

  // Summing only n-1 roots is a designed failure.
  CHECK_FALSE(infdiv_test(t, 4, probe_phis, cfg, 2, true).pass);
}

TEST_CASE("jump counts: Poisson mean and GOF") {
  const SimConfig cfg = cfg_n(20000, 37);
  const CharTriplet t = mixed_triplet();
  const Region tail = Region::complement(1.0, r0);
  CHECK(jump_count_test(t, tail, 1.0, cfg, 2).pass);

  // Empty tail: trivially pass with a note.
  const CharTriplet no_tail(dp({0.0, 0.0}), CovarianceForm::zero(2),
                            LevyMeasure(2, {Atom{dp({0.3, 0.0}), 1.0}}, {}, {}),
                            r0);
  const TestReport trivial = jump_count_test(no_tail, tail, 1.0, cfg_n(100, 37), 1);
  CHECK(trivial.pass);
  CHECK(trivial.notes.find("trivially") != std::string::npos);

  // Corrupted rate fails.
  CHECK_FALSE(jump_count_test(t, tail, 1.0, cfg, 2, 1.5).pass);

  CHECK_THROWS_AS(jump_count_test(t, Region::ball(1.0, r0), 1.0, cfg, 1),
                  std::domain_error);
}

TEST_CASE("jump counts on disjoint regions are uncorrelated") {
  const CharTriplet t = mixed_triplet();
  const std::size_t n = 20000;
  const LevySimulator sim(t, cfg_n(n, 41));
  const Region s1 = Region::shell(0.25, 0.5, r0);
  const Region s2 = Region::shell(0.5, 1.0, r0);
  std::vector<double> c1(n), c2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PathSkeleton p = sim.replica(i, 900);
    c1[i] = double(count_jumps(p, s1, 1.0));
    c2[i] = double(count_jumps(p, s2, 1.0));
  }
  CHECK(std::abs(pearson_correlation(c1, c2)) <= 4.0 / std::sqrt(double(n)));
}

TEST_CASE("fernique: zero triplet, small Gaussian, and the premise gate") {
  const std::vector<unsigned> ns{1, 2, 4, 8, 16};
  // Zero triplet: LHS = 0 <= RHS.
  const TestReport zero =
      fernique_check(zero_triplet(), r0, 0.05, ns, probe_phis);
  CHECK(zero.pass);

  // Small Gaussian: Q(phi)^2 = 2 eps at the p-unit sphere keeps the
  // premise (1 - e^{-eps} < eps) and the conclusion has slack.
  const double eps = 0.1;
  const CharTriplet small(dp({0.0, 0.0}), diag_form({2.0 * eps, 2.0 * eps}),
                          LevyMeasure(2), r0);
  const TestReport ok = fernique_check(small, r0, eps, ns, probe_phis);
  CHECK(ok.pass);
  CHECK_FALSE(ok.inconclusive);

  // A large triplet violates the premise: inconclusive, never false-pass.
  const CharTriplet large(dp({0.0, 0.0}), diag_form({50.0, 50.0}), LevyMeasure(2),
                          r0);
  const TestReport gate = fernique_check(large, r0, 0.25, ns, probe_phis);
  CHECK(gate.inconclusive);
  CHECK_FALSE(gate.pass);

  CHECK_THROWS_AS(fernique_check(small, r0, 0.3, ns, probe_phis),
                  std::invalid_argument);
}

TEST_CASE("minlos: empty measure, small atom, and the premise gate") {
  const SeminormIndex q{1.0};
  // mu = 0: conclusion 0 <= rhs.
  const TestReport zero = minlos_check(LevyMeasure(2), r0, q, 0.05, 2);
  CHECK(zero.pass);

  // Single small atom: premise 1 - Re mu_hat <= mass (1 - cos) <= ...
  // holds for a light atom; conclusion is closed form on both sides.
  const LevyMeasure small(2, {Atom{dp({0.3, 0.0}), 0.02}}, {}, {});
  const TestReport ok = minlos_check(small, r0, q, 0.05, 2);
  CHECK(ok.pass);
  CHECK_FALSE(ok.inconclusive);

  // Heavy measure: premise fails on the probe grid -> inconclusive.
  const LevyMeasure heavy(2, {Atom{dp({3.0, 0.0}), 50.0}}, {}, {});
  const TestReport gate = minlos_check(heavy, r0, q, 0.01, 2);
  CHECK(gate.inconclusive);
  CHECK_FALSE(gate.pass);

  // q must exceed p by more than 1/2.
  CHECK_THROWS_AS(minlos_check(small, r0, SeminormIndex{0.4}, 0.05, 2),
                  std::invalid_argument);
  // Infinite-mass measure rejected.
  const LevyMeasure pw(2, {}, {PowerLawAxis{0, 1.0, 0.5, 1.0}}, {});
  CHECK_THROWS_AS(minlos_check(pw, r0, q, 0.05, 2), std::invalid_argument);
}

TEST_CASE("reports are seed-deterministic") {
  const SimConfig cfg = cfg_n(3000, 53);
  const CharTriplet t = mixed_triplet();
  const TestReport a = moment_tests(t, 1.0, probe_phis, cfg, 1);
  const TestReport b = moment_tests(t, 1.0, probe_phis, cfg, 4);
  CHECK(a.statistic == b.statistic);
  CHECK(a.notes == b.notes);
}

TEST_CASE("summary exit codes") {
  TestReport pass;
  pass.pass = true;
  TestReport fail;
  fail.pass = false;
  TestReport inc;
  inc.inconclusive = true;
  CHECK(summary_exit_code({pass, pass}) == 0);
  CHECK(summary_exit_code({pass, fail}) == 1);
  CHECK(summary_exit_code({pass, inc}) == 2);
  CHECK(summary_exit_code({fail, inc}) == 1);
  CHECK(summary_exit_code({}) == 0);
}
