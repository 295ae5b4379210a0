#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "seqlevy/quadrature.hpp"
#include "seqlevy/rng.hpp"
#include "seqlevy/sequence_space.hpp"

namespace seqlevy {

/// Point mass of the jump intensity at a nonzero dual point.
struct Atom {
  DualPoint point;
  double mass = 0.0;  // intensity per unit time
};

/// One-sided power-law intensity c * x^{-1-alpha} dx on 0 < x <= xmax,
/// supported on a single coordinate axis. 0 < alpha < 2 makes the origin
/// singularity square-integrable against the dual norm, while the total
/// mass near zero is infinite.
struct PowerLawAxis {
  std::size_t axis = 0;
  double c = 0.0;
  double alpha = 0.0;
  double xmax = 0.0;
};

/// Finite list of one-dimensional point masses on a coordinate axis.
struct AxisAtom {
  double x = 0.0;
  double mass = 0.0;
};

struct AtomAxis {
  std::size_t axis = 0;
  std::vector<AxisAtom> atoms;
};

/// Jump intensity measure on the truncated dual: a finite atomic part plus
/// per-axis one-dimensional parts. Structural invariants (no mass at the
/// origin, positive intensities, alpha in (0,2), distinct axis indices
/// below the truncation) are enforced at construction.
class LevyMeasure {
 public:
  LevyMeasure(std::size_t dim, std::vector<Atom> atoms,
              std::vector<PowerLawAxis> power_axes,
              std::vector<AtomAxis> atom_axes);

  /// Empty measure.
  explicit LevyMeasure(std::size_t dim) : LevyMeasure(dim, {}, {}, {}) {}

  std::size_t dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<PowerLawAxis>& power_axes() const { return power_axes_; }
  const std::vector<AtomAxis>& atom_axes() const { return atom_axes_; }
  bool empty() const;

  /// Measure with every intensity multiplied by `factor` (e.g. nu/n for
  /// convolution roots).
  LevyMeasure scaled(double factor) const;

  /// Total mass; +infinity as soon as a power-law axis is present.
  double total_mass() const;

 private:
  std::size_t dim_;
  std::vector<Atom> atoms_;
  std::vector<PowerLawAxis> power_axes_;
  std::vector<AtomAxis> atom_axes_;
};

enum class RegionKind { Ball, Complement, Shell };

/// Radial region in the dual norm at index r: closed ball of radius hi,
/// its complement (rho' > lo), or a half-open shell lo < rho' <= hi.
struct Region {
  RegionKind kind = RegionKind::Ball;
  double lo = 0.0;  // exclusive lower radius (0 for a ball)
  double hi = 0.0;  // inclusive upper radius (+inf for a complement)
  SeminormIndex r;

  static Region ball(double radius, SeminormIndex r);
  static Region complement(double radius, SeminormIndex r);
  static Region shell(double lo, double hi, SeminormIndex r);

  /// A region is bounded below when its closure excludes the origin.
  bool bounded_below() const { return lo > 0.0; }
  bool contains(const DualPoint& f) const;
};

/// Restriction of the measure to a radial band (lo, hi] at index r:
/// the point masses that fall inside, and the x-interval each power-law
/// axis contributes.
struct PointMass {
  DualPoint point;
  double mass = 0.0;
  double radius = 0.0;  // rho'_r of the point
};

struct PowerSlice {
  std::size_t axis = 0;
  double c = 0.0;
  double alpha = 0.0;
  double xlo = 0.0;  // exclusive; 0 when the slice reaches the origin
  double xhi = 0.0;  // inclusive
  double weight = 0.0;  // (1+axis)^{-r}: rho' of x e_axis is x * weight
};

struct BandDecomposition {
  std::vector<PointMass> points;
  std::vector<PowerSlice> slices;
};

BandDecomposition band_decomposition(const LevyMeasure& nu, SeminormIndex r,
                                     double lo, double hi);

/// c * integral of x^{m-1-alpha} over (xlo, xhi]; +infinity when the
/// integral diverges at the origin end (xlo = 0 and m <= alpha).
double power_moment(const PowerSlice& s, int m);

/// integral of (rho'(f)^2 ∧ 1) nu(df): closed form over point masses,
/// adaptive quadrature over power slices, domain split at the radius where
/// the cap activates. The reported abs_error bounds the quadrature error.
QuadResult integrability_functional(const LevyMeasure& nu, SeminormIndex r);

/// Checks the Levy-measure conditions at index r and reports the two
/// defining quantities: the second moment of rho' over the unit ball and
/// the mass outside it. Structural violations are rejected when the
/// measure is constructed, so a constructed measure always validates.
struct ValidationReport {
  bool valid = false;
  bool origin_mass_zero = false;
  double small_ball_second_moment = 0.0;
  double tail_mass = 0.0;
  double quad_error = 0.0;
  double r = 0.0;
  std::string message;
};

ValidationReport validate(const LevyMeasure& nu, SeminormIndex r);

/// nu(A); +infinity when A is not bounded below and a power-law axis
/// concentrates infinite mass at the origin.
double region_mass(const LevyMeasure& nu, const Region& a);

/// Dyadic shell S_k = { 2^{-(k+1)} < rho' <= 2^{-k} } of the unit ball,
/// with its mass, the coordinatewise compensator b_k = int_{S_k} f nu(df),
/// and second moment m2_k = int_{S_k} rho'(f)^2 nu(df).
struct Shell {
  Region region;
  double mass = 0.0;
  DualPoint compensator;
  double second_moment = 0.0;
};

struct ShellDecomposition {
  std::vector<Shell> shells;
  /// res(K) = int_{rho' <= 2^{-K}} rho'(f)^2 nu(df), the L2 budget of the
  /// jumps below the last shell.
  double residual = 0.0;
  SeminormIndex r;
};

ShellDecomposition shell_decomposition(const LevyMeasure& nu, SeminormIndex r,
                                       std::size_t shell_count);

/// Draws from nu restricted to A and normalized. Prepared once per region;
/// sampling an atom is categorical, sampling a power slice inverts the
/// restricted radial CDF.
class RestrictedJumpSampler {
 public:
  RestrictedJumpSampler(const LevyMeasure& nu, const Region& a);

  double total_mass() const { return total_; }
  std::size_t dim() const { return dim_; }

  /// Throws std::invalid_argument when the region has zero mass and
  /// std::domain_error when it has infinite mass.
  DualPoint sample(Rng& rng) const;

 private:
  struct Entry {
    double cumulative = 0.0;
    // Point entry when slice_index < 0; otherwise index into slices_.
    int slice_index = -1;
    DualPoint point;
  };

  std::size_t dim_ = 0;
  double total_ = 0.0;
  std::vector<Entry> entries_;
  std::vector<PowerSlice> slices_;
};

/// One draw from nu|_A / nu(A). Requires 0 < nu(A) < inf.
DualPoint sample_jump(const LevyMeasure& nu, const Region& a, Rng& rng);

inline constexpr double kInfiniteMass = std::numeric_limits<double>::infinity();

}  // namespace seqlevy
