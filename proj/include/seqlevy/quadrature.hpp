#pragma once

#include <functional>

namespace seqlevy {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    abs_error += o.abs_error;
    return *this;
  }
};

/// Adaptive integration of f over [a, b] (GSL QAGS), targeting absolute
/// error 1e-8 by default. Integrable endpoint singularities are fine.
/// Throws std::runtime_error if the integrator reports a hard failure.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-8);

}  // namespace seqlevy
