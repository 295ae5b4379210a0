#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "seqlevy/levy_measure.hpp"
#include "seqlevy/sequence_space.hpp"

namespace seqlevy {

/// Continuous Hilbertian seminorm on test functions, Q(phi)^2 =
/// phi^T M phi with M symmetric positive semidefinite (smallest eigenvalue
/// allowed down to -1e-10 to tolerate rounding in user input).
class CovarianceForm {
 public:
  explicit CovarianceForm(Eigen::MatrixXd matrix);

  static CovarianceForm zero(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// Square root factor A with A A^T = M, used for Gaussian sampling.
  const Eigen::MatrixXd& sampling_factor() const { return factor_; }

  /// Q(phi)^2, clamped at zero against rounding.
  double quadratic(const TestFunction& phi) const;
  double bilinear(const TestFunction& phi, const TestFunction& psi) const;

  CovarianceForm scaled(double factor) const;
  bool is_zero() const { return zero_; }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd factor_;
  bool zero_ = false;
};

/// Characteristics (m, Q, nu, rho) of a Levy process on the truncated dual.
/// nu must be admissible at the reference index r and every member must
/// share the same truncation.
struct CharTriplet {
  DualPoint mean;
  CovarianceForm cov;
  LevyMeasure levy;
  SeminormIndex r;

  CharTriplet(DualPoint mean, CovarianceForm cov, LevyMeasure levy,
              SeminormIndex r);

  std::size_t dim() const { return mean.dim(); }
};

/// Levy-Khintchine exponent
///   eta(phi) = i m[phi] - Q(phi)^2 / 2
///              + int (e^{i f[phi]} - 1 - i f[phi] 1{rho'(f) <= 1}) nu(df).
/// Point masses contribute in closed form; power-law axes are integrated
/// adaptively with the domain split at the compensation radius.
std::complex<double> lk_exponent(const CharTriplet& triplet,
                                 const TestFunction& phi);

/// E e^{i L_t[phi]} = exp(t eta(phi)). Throws std::domain_error for t < 0.
std::complex<double> cf_levy(const CharTriplet& triplet, double t,
                             const TestFunction& phi);

/// exp(i t m[phi] - t Q(phi)^2 / 2).
std::complex<double> cf_wiener(const DualPoint& mean, const CovarianceForm& cov,
                               double t, const TestFunction& phi);

/// exp(t int_A (e^{i f[phi]} - 1) nu(df)); requires nu(A) < inf.
std::complex<double> cf_poisson_integral(const LevyMeasure& nu, const Region& a,
                                         double t, const TestFunction& phi);

/// exp(t int_A (e^{i f[phi]} - 1 - i f[phi]) nu(df)). The integrand is
/// O(f[phi]^2) near the origin, so regions reaching the origin are fine.
std::complex<double> cf_compensated(const LevyMeasure& nu, const Region& a,
                                    double t, const TestFunction& phi);

/// Characteristic function of the Poisson measure with finite exponent mu:
/// exp(-(mu_hat(0) - mu_hat(phi))). Throws std::domain_error when mu has
/// infinite total mass.
std::complex<double> cf_poisson_measure(const LevyMeasure& mu,
                                        const TestFunction& phi);

/// mu_hat(phi) = int e^{i f[phi]} mu(df) for a finite measure.
std::complex<double> finite_measure_cf(const LevyMeasure& mu,
                                       const TestFunction& phi);

/// Characteristics of the n-th convolution root: (m/n, Q^2/n, nu/n, r).
CharTriplet nth_root_triplet(const CharTriplet& triplet, unsigned n);

struct PoissonMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean t int_A f[phi] nu(df) and variance t int_A |f[phi]|^2 nu(df) of the
/// Poisson integral over A. Throws std::domain_error when the mean integral
/// diverges (region reaching the origin with alpha >= 1).
PoissonMoments moments_poisson_integral(const LevyMeasure& nu, const Region& a,
                                        double t, const TestFunction& phi);

/// t int_{rho' <= 1} |f[phi]|^2 nu(df).
double second_moment_small_jumps(const LevyMeasure& nu, SeminormIndex r,
                                 double t, const TestFunction& phi);

/// t int_{rho'_r <= 1} q'(f)^2 nu(df) for the dual norm at q_index.
double hilbert_second_moment(const LevyMeasure& nu, SeminormIndex r,
                             SeminormIndex q_index, double t);

}  // namespace seqlevy
