#include "seqlevy/stats.hpp"

#include <gsl/gsl_cdf.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqlevy {

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  // Values from the two arms can differ by rounding even when the laws
  // share lattice atoms (sums accumulated in different orders); merge
  // ties within a relative tolerance so such atoms stay aligned.
  double scale = 1.0;
  for (const auto* v : {&a, &b})
    scale = std::max({scale, std::abs(v->front()), std::abs(v->back())});
  const double tol = 1e-9 * scale;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]) + tol;
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  return c * std::sqrt(static_cast<double>(n + m) /
                       (static_cast<double>(n) * static_cast<double>(m)));
}

double ks_two_sample_pvalue(double d, std::size_t n, std::size_t m) {
  const double ne = static_cast<double>(n) * static_cast<double>(m) /
                    static_cast<double>(n + m);
  const double lambda = std::sqrt(ne) * d;
  if (lambda < 1e-12) return 1.0;
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::pow(-1.0, k - 1) *
                        std::exp(-2.0 * k * k * lambda * lambda);
    q += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

SampleMoments sample_moments(const std::vector<double>& xs) {
  SampleMoments out;
  out.n = xs.size();
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - out.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  m2 /= n;
  m4 /= n;
  out.variance = xs.size() > 1 ? m2 * n / (n - 1.0) : 0.0;
  out.se_mean = std::sqrt(m2 / n);
  out.se_variance = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  return out;
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b,
                           bool* degenerate) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson_correlation: size mismatch");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (degenerate) *degenerate = false;
  if (saa <= 0.0 || sbb <= 0.0) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return sab / std::sqrt(saa * sbb);
}

ChiSquareResult poisson_gof(const std::vector<std::size_t>& counts, double lambda) {
  ChiSquareResult out;
  if (counts.empty())
    throw std::invalid_argument("poisson_gof: empty sample");
  const double n = static_cast<double>(counts.size());
  std::size_t kmax = 0;
  for (std::size_t c : counts) kmax = std::max(kmax, c);

  // Expected cell mass under Poisson(lambda) for k = 0..kmax, final cell
  // absorbs the upper tail.
  std::vector<double> expected(kmax + 2, 0.0);
  if (lambda <= 0.0) {
    expected[0] = n;
  } else {
    double cum = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k) {
      const double logp = -lambda + static_cast<double>(k) * std::log(lambda) -
                          std::lgamma(static_cast<double>(k) + 1.0);
      expected[k] = n * std::exp(logp);
      cum += expected[k];
    }
    expected[kmax + 1] = std::max(0.0, n - cum);
  }

  std::vector<double> observed(kmax + 2, 0.0);
  for (std::size_t c : counts) observed[c] += 1.0;

  // Merge cells from the right until every expected count reaches 5.
  std::vector<double> obs_m, exp_m;
  double o_acc = 0.0, e_acc = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    o_acc += observed[k];
    e_acc += expected[k];
    if (e_acc >= 5.0) {
      obs_m.push_back(o_acc);
      exp_m.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (exp_m.empty()) {
      obs_m.push_back(o_acc);
      exp_m.push_back(e_acc);
    } else {
      obs_m.back() += o_acc;
      exp_m.back() += e_acc;
    }
  }

  out.bins = exp_m.size();
  if (out.bins < 2) {
    // Degenerate fit (e.g. lambda so small that everything lands in one
    // cell): nothing to test.
    out.pvalue = 1.0;
    return out;
  }
  for (std::size_t k = 0; k < exp_m.size(); ++k) {
    const double d = obs_m[k] - exp_m[k];
    out.statistic += d * d / exp_m[k];
  }
  out.dof = out.bins - 1;
  out.pvalue = gsl_cdf_chisq_Q(out.statistic, static_cast<double>(out.dof));
  return out;
}

}  // namespace seqlevy
