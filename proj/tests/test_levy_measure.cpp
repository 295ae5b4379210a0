#include "seqlevy/levy_measure.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <map>

#include "doctest.h"

using namespace seqlevy;

namespace {

DualPoint dp(std::vector<double> c) { return DualPoint(std::move(c)); }

LevyMeasure atom_only(std::vector<double> point, double mass) {
  const std::size_t d = point.size();
  return LevyMeasure(d, {Atom{dp(std::move(point)), mass}}, {}, {});
}

// Reference one-sided power law on axis 0: c x^{-1-alpha} on (0, xmax].
LevyMeasure power_axis(std::size_t dim, std::size_t axis, double c, double alpha,
                       double xmax) {
  return LevyMeasure(dim, {}, {PowerLawAxis{axis, c, alpha, xmax}}, {});
}

const SeminormIndex r0{0.0};

// In-test Simpson oracle with dyadic refinement, independent of GSL.
double simpson_oracle(const std::function<double(double)>& f, double a, double b) {
  auto simpson = [&](int n) {
    const double h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x0 = a + i * h;
      s += h / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
    }
    return s;
  };
  return simpson(8192);
}

}  // namespace

TEST_CASE("structural validation at construction") {
  CHECK_THROWS_AS(atom_only({0, 0}, 1.0), std::invalid_argument);  // origin atom
  CHECK_THROWS_AS(atom_only({1, 0}, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(power_axis(2, 0, 1.0, 2.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(power_axis(2, 0, 1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(power_axis(2, 5, 1.0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(power_axis(2, 0, 1.0, 0.5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(LevyMeasure(2, {}, {PowerLawAxis{0, 1, 0.5, 1}},
                              {AtomAxis{0, {{0.5, 1.0}}}}),
                  std::invalid_argument);  // duplicate axis
  CHECK_THROWS_AS(LevyMeasure(2, {}, {}, {AtomAxis{1, {{0.0, 1.0}}}}),
                  std::invalid_argument);  // one-dim atom at 0
  CHECK_NOTHROW(LevyMeasure(2, {}, {PowerLawAxis{0, 1, 1.0, 1}}, {}));  // alpha = 1
}

TEST_CASE("integrability functional") {
  // Atom outside the unit ball contributes its capped mass.
  CHECK(integrability_functional(atom_only({2, 0}, 3.0), r0).value ==
        doctest::Approx(3.0).epsilon(1e-10));
  // int_0^1 x^2 x^{-1.5} dx = 2/3.
  const auto q = integrability_functional(power_axis(2, 0, 1.0, 0.5, 1.0), r0);
  CHECK(q.value == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(q.abs_error <= 1e-6);
  CHECK(integrability_functional(LevyMeasure(2), r0).value == 0.0);
}

TEST_CASE("integrability functional with an off-axis weight and a tail") {
  // Axis 1 at r=1 has weight 1/2, so the cap activates at x=2; xmax=3
  // leaves a genuine tail piece. Frozen oracle: 1.4618350895697504.
  const LevyMeasure nu = power_axis(2, 1, 2.0, 0.5, 3.0);
  CHECK(integrability_functional(nu, SeminormIndex{1.0}).value ==
        doctest::Approx(1.4618350895697504).epsilon(1e-8));
}

TEST_CASE("validate reports the two defining integrals") {
  const auto rep1 = validate(atom_only({0.5, 0}, 2.0), r0);
  CHECK(rep1.valid);
  CHECK(rep1.small_ball_second_moment == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep1.tail_mass == 0.0);

  const auto rep2 = validate(power_axis(2, 0, 1.0, 0.5, 1.0), r0);
  CHECK(rep2.valid);
  CHECK(rep2.small_ball_second_moment == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(rep2.tail_mass == 0.0);
}

TEST_CASE("region mass") {
  const LevyMeasure nu = atom_only({2, 0}, 1.5);
  CHECK(region_mass(nu, Region::shell(1.0, 3.0, r0)) == doctest::Approx(1.5));
  CHECK(region_mass(nu, Region::shell(2.5, 3.0, r0)) == 0.0);

  // int_{0.25}^{1} x^{-1.5} dx = 2.
  const LevyMeasure pw = power_axis(2, 0, 1.0, 0.5, 1.0);
  CHECK(region_mass(pw, Region::shell(0.25, 1.0, r0)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(region_mass(LevyMeasure(2), Region::ball(1.0, r0)) == 0.0);
  // Not bounded below with a power axis: infinite mass signal.
  CHECK(std::isinf(region_mass(pw, Region::ball(1.0, r0))));
  CHECK(std::isfinite(region_mass(pw, Region::complement(0.25, r0))));
}

TEST_CASE("shell decomposition of a power-law axis") {
  const LevyMeasure nu = power_axis(2, 0, 1.0, 0.5, 1.0);
  const ShellDecomposition dec = shell_decomposition(nu, r0, 2);
  REQUIRE(dec.shells.size() == 2);
  // Frozen mpmath oracles for (0.5,1] and (0.25,0.5].
  CHECK(dec.shells[0].mass == doctest::Approx(0.8284271247461901).epsilon(1e-12));
  CHECK(dec.shells[0].compensator.coords[0] ==
        doctest::Approx(0.58578643762690495).epsilon(1e-12));
  CHECK(dec.shells[0].second_moment ==
        doctest::Approx(0.43096440627115083).epsilon(1e-12));
  CHECK(dec.shells[1].mass == doctest::Approx(1.1715728752538099).epsilon(1e-12));
  CHECK(dec.shells[1].compensator.coords[0] ==
        doctest::Approx(0.41421356237309505).epsilon(1e-12));
  CHECK(dec.shells[1].second_moment ==
        doctest::Approx(0.15236892706218251).epsilon(1e-12));
  CHECK(dec.residual == doctest::Approx(0.083333333333333333).epsilon(1e-12));
}

TEST_CASE("an atom lands in exactly one shell") {
  const LevyMeasure nu = atom_only({0.6, 0}, 2.0);
  const ShellDecomposition dec = shell_decomposition(nu, r0, 4);
  CHECK(dec.shells[0].mass == doctest::Approx(2.0));
  for (std::size_t k = 1; k < dec.shells.size(); ++k)
    CHECK(dec.shells[k].mass == 0.0);
  CHECK(dec.residual == 0.0);
}

TEST_CASE("partition additivity ties shells to the validator") {
  for (const double alpha : {0.5, 1.0, 1.7}) {
    const LevyMeasure nu = LevyMeasure(
        3, {Atom{dp({0.3, 0.1, 0}), 0.4}, Atom{dp({0, 1.7, 0}), 0.2}},
        {PowerLawAxis{0, 0.8, alpha, 1.5}}, {AtomAxis{2, {{0.05, 1.0}, {-2.0, 0.3}}}});
    for (const std::size_t K : {1u, 3u, 8u}) {
      const ShellDecomposition dec = shell_decomposition(nu, r0, K);
      double m2_sum = dec.residual;
      for (const Shell& sh : dec.shells) m2_sum += sh.second_moment;
      const auto rep = validate(nu, r0);
      CHECK(m2_sum ==
            doctest::Approx(rep.small_ball_second_moment).epsilon(1e-6));
      // Mass additivity against the punctured-ball shells.
      double mass_sum = 0.0;
      for (const Shell& sh : dec.shells) mass_sum += sh.mass;
      const double lo = std::ldexp(1.0, -int(K));
      CHECK(mass_sum == doctest::Approx(region_mass(
                            nu, Region::shell(lo, 1.0, r0))).epsilon(1e-9));
    }
  }
}

TEST_CASE("sigma-finiteness witness: every shell and complement is finite") {
  const LevyMeasure nu =
      LevyMeasure(2, {Atom{dp({0, 3}), 1.0}}, {PowerLawAxis{0, 2.0, 1.9, 4.0}}, {});
  for (int k = 0; k < 30; ++k) {
    const double hi = std::ldexp(1.0, -k);
    CHECK(std::isfinite(region_mass(nu, Region::shell(hi / 2, hi, r0))));
    CHECK(std::isfinite(region_mass(nu, Region::complement(hi, r0))));
  }
}

TEST_CASE("residual decays at the power-law rate") {
  const double alpha = 0.5;
  const LevyMeasure nu = power_axis(2, 0, 1.0, alpha, 1.0);
  double prev = shell_decomposition(nu, r0, 1).residual;
  for (std::size_t K = 2; K <= 14; ++K) {
    const double res = shell_decomposition(nu, r0, K).residual;
    CHECK(res < prev);
    // res(K)/res(K-1) = 2^{-(2-alpha)} exactly for the pure power law.
    CHECK(res / prev == doctest::Approx(std::pow(2.0, -(2.0 - alpha))).epsilon(1e-9));
    prev = res;
  }
}

TEST_CASE("quadrature agrees with an independent Simpson oracle") {
  // Random-ish parameters, both integrals over a shell band.
  for (const double alpha : {0.3, 1.0, 1.6}) {
    const LevyMeasure nu = power_axis(1, 0, 1.3, alpha, 2.0);
    const Region band = Region::shell(0.2, 1.8, r0);
    const double mass = region_mass(nu, band);
    const double oracle = simpson_oracle(
        [&](double x) { return 1.3 * std::pow(x, -1.0 - alpha); }, 0.2, 1.8);
    CHECK(mass == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("sample_jump: single atom is returned with probability one") {
  const LevyMeasure nu = atom_only({2, 0}, 0.7);
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    const DualPoint p = sample_jump(nu, Region::complement(1.0, r0), rng);
    CHECK(p.coords[0] == 2.0);
    CHECK(p.coords[1] == 0.0);
  }
}

TEST_CASE("sample_jump: two atoms at their mass ratio") {
  const LevyMeasure nu =
      LevyMeasure(1, {Atom{dp({2.0}), 1.0}, Atom{dp({3.0}), 3.0}}, {}, {});
  Rng rng(31);
  const int n = 10000;
  int second = 0;
  for (int i = 0; i < n; ++i)
    if (sample_jump(nu, Region::complement(1.0, r0), rng).coords[0] == 3.0) ++second;
  CHECK(std::abs(double(second) / n - 0.75) < 0.01);
}

TEST_CASE("sample_jump: power-law draws match the analytic CDF") {
  const double alpha = 0.5;
  const LevyMeasure nu = power_axis(1, 0, 1.0, alpha, 1.0);
  const Region band = Region::shell(0.1, 1.0, r0);
  const RestrictedJumpSampler sampler(nu, band);
  Rng rng(404);
  const int n = 100000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = sampler.sample(rng).coords[0];
  std::sort(xs.begin(), xs.end());
  // Analytic restricted CDF on (0.1, 1].
  const double A = std::pow(0.1, -alpha), B = 1.0;
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = (A - std::pow(xs[i], -alpha)) / (A - B);
    ks = std::max(ks, std::abs(cdf - double(i + 1) / n));
    ks = std::max(ks, std::abs(cdf - double(i) / n));
  }
  CHECK(ks < 0.01);
  for (double x : xs) {
    CHECK(x > 0.1);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("sample_jump error paths") {
  const LevyMeasure nu = power_axis(1, 0, 1.0, 0.5, 1.0);
  Rng rng(1);
  CHECK_THROWS_AS(sample_jump(nu, Region::shell(2.0, 3.0, r0), rng),
                  std::invalid_argument);  // zero mass
  CHECK_THROWS_AS(sample_jump(nu, Region::ball(1.0, r0), rng),
                  std::domain_error);  // infinite mass
}

TEST_CASE("scaled measure divides every intensity") {
  const LevyMeasure nu = LevyMeasure(2, {Atom{dp({1.5, 0}), 0.9}},
                                     {PowerLawAxis{1, 2.0, 0.7, 1.0}}, {});
  const LevyMeasure half = nu.scaled(0.5);
  CHECK(half.atoms()[0].mass == doctest::Approx(0.45));
  CHECK(half.power_axes()[0].c == doctest::Approx(1.0));
  CHECK(region_mass(half, Region::shell(0.25, 4.0, r0)) ==
        doctest::Approx(0.5 * region_mass(nu, Region::shell(0.25, 4.0, r0))));
}
