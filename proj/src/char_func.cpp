#include "seqlevy/char_func.hpp"

#include <cmath>
#include <stdexcept>

#include "seqlevy/quadrature.hpp"

namespace seqlevy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e^{iu} - 1, with the real part written as -2 sin^2(u/2) to avoid
// cancellation for small u.
std::complex<double> expi_m1(double u) {
  const double h = std::sin(0.5 * u);
  return {-2.0 * h * h, std::sin(u)};
}

std::complex<double> point_term(const PointMass& p, double pu, bool compensated) {
  std::complex<double> v = expi_m1(pu);
  if (compensated) v -= std::complex<double>(0.0, pu);
  return p.mass * v;
}

// int over the band of (e^{i f[phi]} - 1 [- i f[phi]]) nu(df).
std::complex<double> jump_integral(const BandDecomposition& bd,
                                   const TestFunction& phi, bool compensated,
                                   std::size_t dim) {
  if (phi.dim() != dim)
    throw std::invalid_argument("jump integral: test function dimension mismatch");
  std::complex<double> total = 0.0;
  for (const PointMass& p : bd.points)
    total += point_term(p, pairing(p.point, phi), compensated);
  for (const PowerSlice& s : bd.slices) {
    const double a = phi.coords[s.axis];
    if (a == 0.0) continue;  // jump invisible to phi
    // The intensity constant multiplies outside the quadrature so the
    // integral is exactly linear in the measure (convolution roots).
    const double alpha = s.alpha;
    const auto density = [alpha](double x) { return std::pow(x, -1.0 - alpha); };
    const QuadResult re = integrate(
        [&](double x) {
          const double h = std::sin(0.5 * a * x);
          return -2.0 * h * h * density(x);
        },
        s.xlo, s.xhi);
    QuadResult im;
    if (compensated) {
      im = integrate([&](double x) { return (std::sin(a * x) - a * x) * density(x); },
                     s.xlo, s.xhi);
    } else {
      im = integrate([&](double x) { return std::sin(a * x) * density(x); }, s.xlo,
                     s.xhi);
    }
    total += s.c * std::complex<double>(re.value, im.value);
  }
  return total;
}

}  // namespace

CovarianceForm::CovarianceForm(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("CovarianceForm: matrix must be square, D >= 1");
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("CovarianceForm: matrix must be symmetric");
  matrix_ = ((matrix_ + matrix_.transpose()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix_);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("CovarianceForm: eigendecomposition failed");
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("CovarianceForm: matrix is not positive semidefinite");
  const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
  factor_ = es.eigenvectors() * clamped.cwiseSqrt().asDiagonal() *
            es.eigenvectors().transpose();
  zero_ = clamped.maxCoeff() == 0.0;
}

CovarianceForm CovarianceForm::zero(std::size_t dim) {
  return CovarianceForm(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim)));
}

double CovarianceForm::quadratic(const TestFunction& phi) const {
  return std::max(0.0, bilinear(phi, phi));
}

double CovarianceForm::bilinear(const TestFunction& phi, const TestFunction& psi) const {
  if (phi.dim() != dim() || psi.dim() != dim())
    throw std::invalid_argument("CovarianceForm: dimension mismatch");
  const Eigen::Map<const Eigen::VectorXd> a(phi.coords.data(),
                                            static_cast<Eigen::Index>(phi.dim()));
  const Eigen::Map<const Eigen::VectorXd> b(psi.coords.data(),
                                            static_cast<Eigen::Index>(psi.dim()));
  return a.dot(matrix_ * b);
}

CovarianceForm CovarianceForm::scaled(double factor) const {
  if (!(factor >= 0.0))
    throw std::invalid_argument("CovarianceForm::scaled: factor must be >= 0");
  return CovarianceForm(matrix_ * factor);
}

CharTriplet::CharTriplet(DualPoint mean_in, CovarianceForm cov_in,
                         LevyMeasure levy_in, SeminormIndex r_in)
    : mean(std::move(mean_in)),
      cov(std::move(cov_in)),
      levy(std::move(levy_in)),
      r(r_in) {
  if (mean.dim() != cov.dim() || mean.dim() != levy.dim())
    throw std::invalid_argument("CharTriplet: members disagree on the truncation D");
  if (!(r.r >= 0.0) || !std::isfinite(r.r))
    throw std::invalid_argument("CharTriplet: reference index r must be finite, >= 0");
  const ValidationReport rep = validate(levy, r);
  if (!rep.valid)
    throw std::invalid_argument("CharTriplet: levy measure fails validation: " +
                                rep.message);
}

std::complex<double> lk_exponent(const CharTriplet& triplet, const TestFunction& phi) {
  if (phi.dim() != triplet.dim())
    throw std::invalid_argument("lk_exponent: dimension mismatch");
  std::complex<double> eta(0.0, pairing(triplet.mean, phi));
  eta -= 0.5 * triplet.cov.quadratic(phi);
  const BandDecomposition inside =
      band_decomposition(triplet.levy, triplet.r, 0.0, 1.0);
  eta += jump_integral(inside, phi, /*compensated=*/true, triplet.dim());
  const BandDecomposition outside =
      band_decomposition(triplet.levy, triplet.r, 1.0, kInf);
  eta += jump_integral(outside, phi, /*compensated=*/false, triplet.dim());
  return eta;
}

std::complex<double> cf_levy(const CharTriplet& triplet, double t,
                             const TestFunction& phi) {
  if (!(t >= 0.0)) throw std::domain_error("cf_levy: time must be >= 0");
  return std::exp(t * lk_exponent(triplet, phi));
}

std::complex<double> cf_wiener(const DualPoint& mean, const CovarianceForm& cov,
                               double t, const TestFunction& phi) {
  if (!(t >= 0.0)) throw std::domain_error("cf_wiener: time must be >= 0");
  return std::exp(std::complex<double>(-0.5 * t * cov.quadratic(phi),
                                       t * pairing(mean, phi)));
}

std::complex<double> cf_poisson_integral(const LevyMeasure& nu, const Region& a,
                                         double t, const TestFunction& phi) {
  if (!(t >= 0.0)) throw std::domain_error("cf_poisson_integral: time must be >= 0");
  if (!std::isfinite(region_mass(nu, a)))
    throw std::domain_error("cf_poisson_integral: region has infinite mass");
  const BandDecomposition bd = band_decomposition(nu, a.r, a.lo, a.hi);
  return std::exp(t * jump_integral(bd, phi, /*compensated=*/false, nu.dim()));
}

std::complex<double> cf_compensated(const LevyMeasure& nu, const Region& a,
                                    double t, const TestFunction& phi) {
  if (!(t >= 0.0)) throw std::domain_error("cf_compensated: time must be >= 0");
  const BandDecomposition bd = band_decomposition(nu, a.r, a.lo, a.hi);
  return std::exp(t * jump_integral(bd, phi, /*compensated=*/true, nu.dim()));
}

std::complex<double> finite_measure_cf(const LevyMeasure& mu, const TestFunction& phi) {
  if (!std::isfinite(mu.total_mass()))
    throw std::domain_error("finite_measure_cf: measure has infinite total mass");
  const BandDecomposition bd = band_decomposition(mu, SeminormIndex{0.0}, 0.0, kInf);
  std::complex<double> v = 0.0;
  for (const PointMass& p : bd.points) {
    const double u = pairing(p.point, phi);
    v += p.mass * std::complex<double>(std::cos(u), std::sin(u));
  }
  return v;
}

std::complex<double> cf_poisson_measure(const LevyMeasure& mu, const TestFunction& phi) {
  const double total = mu.total_mass();
  if (!std::isfinite(total))
    throw std::domain_error("cf_poisson_measure: measure has infinite total mass");
  return std::exp(finite_measure_cf(mu, phi) - total);
}

CharTriplet nth_root_triplet(const CharTriplet& triplet, unsigned n) {
  if (n == 0) throw std::domain_error("nth_root_triplet: n must be >= 1");
  if (n == 1) return triplet;
  const double inv = 1.0 / static_cast<double>(n);
  DualPoint mean = triplet.mean;
  for (double& x : mean.coords) x *= inv;
  return CharTriplet(std::move(mean), triplet.cov.scaled(inv),
                     triplet.levy.scaled(inv), triplet.r);
}

PoissonMoments moments_poisson_integral(const LevyMeasure& nu, const Region& a,
                                        double t, const TestFunction& phi) {
  if (!(t >= 0.0))
    throw std::domain_error("moments_poisson_integral: time must be >= 0");
  if (phi.dim() != nu.dim())
    throw std::invalid_argument("moments_poisson_integral: dimension mismatch");
  const BandDecomposition bd = band_decomposition(nu, a.r, a.lo, a.hi);
  PoissonMoments out;
  for (const PointMass& p : bd.points) {
    const double u = pairing(p.point, phi);
    out.mean += p.mass * u;
    out.variance += p.mass * u * u;
  }
  for (const PowerSlice& s : bd.slices) {
    const double an = phi.coords[s.axis];
    if (an == 0.0) continue;
    const double m1 = power_moment(s, 1);
    if (!std::isfinite(m1))
      throw std::domain_error("moments_poisson_integral: mean integral diverges");
    out.mean += an * m1;
    out.variance += an * an * power_moment(s, 2);
  }
  out.mean *= t;
  out.variance *= t;
  return out;
}

double second_moment_small_jumps(const LevyMeasure& nu, SeminormIndex r, double t,
                                 const TestFunction& phi) {
  if (!(t >= 0.0))
    throw std::domain_error("second_moment_small_jumps: time must be >= 0");
  if (phi.dim() != nu.dim())
    throw std::invalid_argument("second_moment_small_jumps: dimension mismatch");
  const BandDecomposition bd = band_decomposition(nu, r, 0.0, 1.0);
  double v = 0.0;
  for (const PointMass& p : bd.points) {
    const double u = pairing(p.point, phi);
    v += p.mass * u * u;
  }
  for (const PowerSlice& s : bd.slices) {
    const double an = phi.coords[s.axis];
    if (an == 0.0) continue;
    v += an * an * power_moment(s, 2);
  }
  return t * v;
}

double hilbert_second_moment(const LevyMeasure& nu, SeminormIndex r,
                             SeminormIndex q_index, double t) {
  if (!(t >= 0.0))
    throw std::domain_error("hilbert_second_moment: time must be >= 0");
  const BandDecomposition bd = band_decomposition(nu, r, 0.0, 1.0);
  double v = 0.0;
  for (const PointMass& p : bd.points) {
    const double qn = dual_norm(p.point, q_index);
    v += p.mass * qn * qn;
  }
  for (const PowerSlice& s : bd.slices) {
    const double wq = weight(s.axis, SeminormIndex{-q_index.r});
    v += wq * wq * power_moment(s, 2);
  }
  return t * v;
}

}  // namespace seqlevy
