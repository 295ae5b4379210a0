#pragma once

#include <cstddef>
#include <vector>

namespace seqlevy {

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|; ties between
/// and within samples are handled by advancing both step functions past
/// every equal value before comparing.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical value for the two-sample KS statistic at level
/// alpha: c(alpha) sqrt((n+m)/(n m)) with c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m);

/// Kolmogorov distribution tail Q(lambda) = 2 sum (-1)^{k-1} e^{-2k^2
/// lambda^2}; asymptotic p-value of the two-sample statistic d.
double ks_two_sample_pvalue(double d, std::size_t n, std::size_t m);

struct SampleMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se_mean = 0.0;
  double se_variance = 0.0;  // sqrt((m4 - m2^2)/n) from central moments
};

SampleMoments sample_moments(const std::vector<double>& xs);

/// Pearson correlation; returns 0 with *degenerate=true when either side
/// has zero variance.
double pearson_correlation(const std::vector<double>& a,
                           const std::vector<double>& b, bool* degenerate = nullptr);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double pvalue = 1.0;
  std::size_t bins = 0;
};

/// Goodness of fit of observed nonnegative counts against Poisson(lambda):
/// cells are merged from the right until every expected count is >= 5.
ChiSquareResult poisson_gof(const std::vector<std::size_t>& counts, double lambda);

}  // namespace seqlevy
