#pragma once

#include <cstddef>
#include <vector>

namespace seqlevy {

/// Truncated coordinate vector of a test function: the first D Hermite
/// coefficients of a rapidly decreasing sequence.
struct TestFunction {
  std::vector<double> coords;

  TestFunction() = default;
  explicit TestFunction(std::vector<double> c);

  std::size_t dim() const { return coords.size(); }
};

/// Truncated coordinate vector of a dual element (slowly increasing
/// sequence); acts on test functions through the coordinate pairing.
struct DualPoint {
  std::vector<double> coords;

  DualPoint() = default;
  explicit DualPoint(std::vector<double> c);

  std::size_t dim() const { return coords.size(); }
};

/// Exponent of the polynomially weighted seminorm family
///   p_r(phi)^2 = sum_{n<D} (1+n)^{2r} phi_n^2.
/// Larger r means a stronger seminorm; the family is totally ordered.
struct SeminormIndex {
  double r = 0.0;
};

/// Per-coordinate weight (1+n)^r of the seminorm p_r.
double weight(std::size_t n, SeminormIndex r);

/// p_r(phi). Monotone nondecreasing in r.
double seminorm(const TestFunction& phi, SeminormIndex r);

/// Dual norm p_r'(f) = sqrt(sum (1+n)^{-2r} f_n^2), the operator norm of f
/// over the unit ball of p_r. Monotone nonincreasing in r.
double dual_norm(const DualPoint& f, SeminormIndex r);

/// Coordinate pairing f[phi] = sum f_n phi_n. Throws std::invalid_argument
/// on a length mismatch.
double pairing(const DualPoint& f, const TestFunction& phi);

/// Squared Hilbert-Schmidt norm of the canonical inclusion between the
/// weighted spaces at indices s >= r, truncated to D coordinates, together
/// with whether the untruncated series converges (2(s-r) > 1).
struct HsNormSq {
  double value = 0.0;
  bool converges = false;
};

/// Throws std::invalid_argument if s < r.
HsNormSq hs_norm_sq(SeminormIndex r, SeminormIndex s, std::size_t dim);

/// Operator norm of the diagonal inclusion from index s into index r
/// (r <= s), i.e. the largest weight ratio over the first D coordinates.
double embedding_op_norm(SeminormIndex r, SeminormIndex s, std::size_t dim);

}  // namespace seqlevy
