#include "seqlevy/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace seqlevy {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fold_in(std::uint64_t seed, std::uint64_t word) noexcept {
  return mix64(seed ^ mix64(word));
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t context,
                          std::uint64_t replica, StreamComponent component,
                          std::uint64_t shell) noexcept {
  std::uint64_t s = master;
  s = fold_in(s, context);
  s = fold_in(s, replica);
  s = fold_in(s, static_cast<std::uint64_t>(component));
  s = fold_in(s, shell);
  return s;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::poisson_inversion(double lambda) {
  double p = std::exp(-lambda);
  double cumulative = p;
  const double u = uniform01();
  std::uint64_t k = 0;
  // The tail bound makes the loop finite even for u extremely close to 1.
  const std::uint64_t cap =
      static_cast<std::uint64_t>(lambda + 80.0 * std::sqrt(lambda + 1.0) + 200.0);
  while (u > cumulative && k < cap) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cumulative += p;
  }
  return k;
}

std::uint64_t Rng::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("Rng::poisson: rate must be finite and >= 0");
  }
  if (lambda == 0.0) return 0;
  std::uint64_t total = 0;
  while (lambda > 500.0) {
    total += poisson_inversion(500.0);
    lambda -= 500.0;
  }
  return total + poisson_inversion(lambda);
}

}  // namespace seqlevy
