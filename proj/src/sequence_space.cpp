#include "seqlevy/sequence_space.hpp"

#include <cmath>
#include <stdexcept>

namespace seqlevy {

namespace {

void check_coords(const std::vector<double>& c, const char* what) {
  if (c.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty coordinate vector");
  }
  for (double x : c) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
    }
  }
}

}  // namespace

TestFunction::TestFunction(std::vector<double> c) : coords(std::move(c)) {
  check_coords(coords, "TestFunction");
}

DualPoint::DualPoint(std::vector<double> c) : coords(std::move(c)) {
  check_coords(coords, "DualPoint");
}

double weight(std::size_t n, SeminormIndex r) {
  return std::pow(1.0 + static_cast<double>(n), r.r);
}

double seminorm(const TestFunction& phi, SeminormIndex r) {
  double s = 0.0;
  for (std::size_t n = 0; n < phi.coords.size(); ++n) {
    const double w = weight(n, r);
    s += w * w * phi.coords[n] * phi.coords[n];
  }
  return std::sqrt(s);
}

double dual_norm(const DualPoint& f, SeminormIndex r) {
  double s = 0.0;
  for (std::size_t n = 0; n < f.coords.size(); ++n) {
    const double w = weight(n, SeminormIndex{-r.r});
    s += w * w * f.coords[n] * f.coords[n];
  }
  return std::sqrt(s);
}

double pairing(const DualPoint& f, const TestFunction& phi) {
  if (f.coords.size() != phi.coords.size()) {
    throw std::invalid_argument("pairing: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t n = 0; n < f.coords.size(); ++n) {
    s += f.coords[n] * phi.coords[n];
  }
  return s;
}

HsNormSq hs_norm_sq(SeminormIndex r, SeminormIndex s, std::size_t dim) {
  if (s.r < r.r) {
    throw std::invalid_argument("hs_norm_sq: requires s >= r");
  }
  HsNormSq out;
  for (std::size_t n = 0; n < dim; ++n) {
    out.value += std::pow(1.0 + static_cast<double>(n), 2.0 * (r.r - s.r));
  }
  out.converges = 2.0 * (s.r - r.r) > 1.0;
  return out;
}

double embedding_op_norm(SeminormIndex r, SeminormIndex s, std::size_t dim) {
  if (s.r < r.r) {
    throw std::invalid_argument("embedding_op_norm: requires s >= r");
  }
  double m = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    m = std::max(m, std::pow(1.0 + static_cast<double>(n), r.r - s.r));
  }
  return m;
}

}  // namespace seqlevy
