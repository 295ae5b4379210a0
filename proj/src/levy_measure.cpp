#include "seqlevy/levy_measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqlevy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DualPoint unit_axis_point(std::size_t dim, std::size_t axis, double x) {
  std::vector<double> c(dim, 0.0);
  c[axis] = x;
  DualPoint p;
  p.coords = std::move(c);
  return p;
}

}  // namespace

LevyMeasure::LevyMeasure(std::size_t dim, std::vector<Atom> atoms,
                         std::vector<PowerLawAxis> power_axes,
                         std::vector<AtomAxis> atom_axes)
    : dim_(dim),
      atoms_(std::move(atoms)),
      power_axes_(std::move(power_axes)),
      atom_axes_(std::move(atom_axes)) {
  if (dim_ == 0) throw std::invalid_argument("LevyMeasure: dimension must be >= 1");
  for (const Atom& a : atoms_) {
    if (a.point.dim() != dim_)
      throw std::invalid_argument("LevyMeasure: atom dimension mismatch");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass))
      throw std::invalid_argument("LevyMeasure: atom mass must be positive");
    bool all_zero = true;
    for (double x : a.point.coords) {
      if (!std::isfinite(x)) throw std::invalid_argument("LevyMeasure: non-finite atom");
      if (x != 0.0) all_zero = false;
    }
    if (all_zero)
      throw std::invalid_argument("LevyMeasure: atom at the origin is forbidden");
  }
  std::vector<std::size_t> used;
  auto claim_axis = [&](std::size_t n) {
    if (n >= dim_) throw std::invalid_argument("LevyMeasure: axis index out of range");
    if (std::find(used.begin(), used.end(), n) != used.end())
      throw std::invalid_argument("LevyMeasure: duplicate axis index");
    used.push_back(n);
  };
  for (const PowerLawAxis& p : power_axes_) {
    claim_axis(p.axis);
    if (!(p.c > 0.0) || !std::isfinite(p.c))
      throw std::invalid_argument("LevyMeasure: power-law intensity must be positive");
    if (!(p.alpha > 0.0 && p.alpha < 2.0))
      throw std::invalid_argument("LevyMeasure: power-law alpha must lie in (0,2)");
    if (!(p.xmax > 0.0) || !std::isfinite(p.xmax))
      throw std::invalid_argument("LevyMeasure: power-law xmax must be positive");
  }
  for (const AtomAxis& ax : atom_axes_) {
    claim_axis(ax.axis);
    for (const AxisAtom& a : ax.atoms) {
      if (a.x == 0.0 || !std::isfinite(a.x))
        throw std::invalid_argument("LevyMeasure: one-dim atom at 0 is forbidden");
      if (!(a.mass > 0.0) || !std::isfinite(a.mass))
        throw std::invalid_argument("LevyMeasure: one-dim atom mass must be positive");
    }
  }
}

bool LevyMeasure::empty() const {
  if (!atoms_.empty() || !power_axes_.empty()) return false;
  for (const AtomAxis& ax : atom_axes_)
    if (!ax.atoms.empty()) return false;
  return true;
}

LevyMeasure LevyMeasure::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw std::invalid_argument("LevyMeasure::scaled: factor must be positive");
  std::vector<Atom> atoms = atoms_;
  for (Atom& a : atoms) a.mass *= factor;
  std::vector<PowerLawAxis> powers = power_axes_;
  for (PowerLawAxis& p : powers) p.c *= factor;
  std::vector<AtomAxis> axes = atom_axes_;
  for (AtomAxis& ax : axes)
    for (AxisAtom& a : ax.atoms) a.mass *= factor;
  return LevyMeasure(dim_, std::move(atoms), std::move(powers), std::move(axes));
}

double LevyMeasure::total_mass() const {
  if (!power_axes_.empty()) return kInf;
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.mass;
  for (const AtomAxis& ax : atom_axes_)
    for (const AxisAtom& a : ax.atoms) m += a.mass;
  return m;
}

Region Region::ball(double radius, SeminormIndex r) {
  if (!(radius > 0.0)) throw std::invalid_argument("Region: radius must be > 0");
  return Region{RegionKind::Ball, 0.0, radius, r};
}

Region Region::complement(double radius, SeminormIndex r) {
  if (!(radius > 0.0)) throw std::invalid_argument("Region: radius must be > 0");
  return Region{RegionKind::Complement, radius, kInf, r};
}

Region Region::shell(double lo, double hi, SeminormIndex r) {
  if (!(lo >= 0.0) || !(hi > lo))
    throw std::invalid_argument("Region: shell requires 0 <= lo < hi");
  return Region{RegionKind::Shell, lo, hi, r};
}

bool Region::contains(const DualPoint& f) const {
  const double rad = dual_norm(f, r);
  if (kind == RegionKind::Ball) return rad <= hi;
  return rad > lo && rad <= hi;
}

BandDecomposition band_decomposition(const LevyMeasure& nu, SeminormIndex r,
                                     double lo, double hi) {
  BandDecomposition out;
  auto in_band = [&](double rad) { return rad > lo && rad <= hi; };

  for (const Atom& a : nu.atoms()) {
    const double rad = dual_norm(a.point, r);
    if (in_band(rad)) out.points.push_back(PointMass{a.point, a.mass, rad});
  }
  for (const AtomAxis& ax : nu.atom_axes()) {
    const double w = weight(ax.axis, SeminormIndex{-r.r});
    for (const AxisAtom& a : ax.atoms) {
      const double rad = std::abs(a.x) * w;
      if (in_band(rad))
        out.points.push_back(
            PointMass{unit_axis_point(nu.dim(), ax.axis, a.x), a.mass, rad});
    }
  }
  for (const PowerLawAxis& p : nu.power_axes()) {
    const double w = weight(p.axis, SeminormIndex{-r.r});
    // rho'(x e_axis) = x w, so the band maps to x in (lo/w, hi/w].
    const double xlo = std::max(0.0, lo / w);
    const double xhi = std::min(p.xmax, hi / w);
    if (xhi > xlo)
      out.slices.push_back(PowerSlice{p.axis, p.c, p.alpha, xlo, xhi, w});
  }
  return out;
}

double power_moment(const PowerSlice& s, int m) {
  const double q = static_cast<double>(m) - s.alpha;
  if (s.xlo == 0.0) {
    if (q <= 0.0) return kInf;
    return s.c * std::pow(s.xhi, q) / q;
  }
  if (q == 0.0) return s.c * std::log(s.xhi / s.xlo);
  // lo^q * expm1(q log(hi/lo)) / q is stable for q near 0.
  return s.c * std::pow(s.xlo, q) * std::expm1(q * std::log(s.xhi / s.xlo)) / q;
}

namespace {

QuadResult slice_integral(const PowerSlice& s,
                          const std::function<double(double)>& g) {
  QuadResult q = integrate([&](double x) { return g(x) * std::pow(x, -1.0 - s.alpha); },
                           s.xlo, s.xhi);
  q.value *= s.c;
  q.abs_error *= s.c;
  return q;
}

}  // namespace

QuadResult integrability_functional(const LevyMeasure& nu, SeminormIndex r) {
  QuadResult out;
  const BandDecomposition inside = band_decomposition(nu, r, 0.0, 1.0);
  for (const PointMass& p : inside.points) out.value += p.mass * p.radius * p.radius;
  for (const PowerSlice& s : inside.slices) {
    const double w = s.weight;
    out += slice_integral(s, [w](double x) { return x * x * w * w; });
  }
  const BandDecomposition tail = band_decomposition(nu, r, 1.0, kInf);
  for (const PointMass& p : tail.points) out.value += p.mass;
  for (const PowerSlice& s : tail.slices)
    out += slice_integral(s, [](double) { return 1.0; });
  return out;
}

ValidationReport validate(const LevyMeasure& nu, SeminormIndex r) {
  ValidationReport rep;
  rep.r = r.r;
  rep.origin_mass_zero = true;  // structural; enforced at construction

  const BandDecomposition inside = band_decomposition(nu, r, 0.0, 1.0);
  for (const PointMass& p : inside.points)
    rep.small_ball_second_moment += p.mass * p.radius * p.radius;
  for (const PowerSlice& s : inside.slices) {
    const double w = s.weight;
    const QuadResult q = slice_integral(s, [w](double x) { return x * x * w * w; });
    rep.small_ball_second_moment += q.value;
    rep.quad_error += q.abs_error;
  }
  rep.tail_mass = region_mass(nu, Region::complement(1.0, r));
  rep.valid = std::isfinite(rep.small_ball_second_moment) &&
              std::isfinite(rep.tail_mass);
  rep.message = rep.valid ? "levy measure admissible at r"
                          : "non-finite defining integral";
  return rep;
}

double region_mass(const LevyMeasure& nu, const Region& a) {
  const BandDecomposition bd = band_decomposition(nu, a.r, a.lo, a.hi);
  double m = 0.0;
  for (const PointMass& p : bd.points) m += p.mass;
  for (const PowerSlice& s : bd.slices) {
    const double piece = power_moment(s, 0);
    if (!std::isfinite(piece)) return kInf;
    m += piece;
  }
  return m;
}

ShellDecomposition shell_decomposition(const LevyMeasure& nu, SeminormIndex r,
                                       std::size_t shell_count) {
  if (shell_count == 0)
    throw std::invalid_argument("shell_decomposition: need at least one shell");
  ShellDecomposition out;
  out.r = r;
  out.shells.reserve(shell_count);
  for (std::size_t k = 0; k < shell_count; ++k) {
    const double hi = std::ldexp(1.0, -static_cast<int>(k));
    const double lo = 0.5 * hi;
    Shell sh;
    sh.region = Region::shell(lo, hi, r);
    sh.compensator.coords.assign(nu.dim(), 0.0);
    const BandDecomposition bd = band_decomposition(nu, r, lo, hi);
    for (const PointMass& p : bd.points) {
      sh.mass += p.mass;
      sh.second_moment += p.mass * p.radius * p.radius;
      for (std::size_t n = 0; n < nu.dim(); ++n)
        sh.compensator.coords[n] += p.mass * p.point.coords[n];
    }
    for (const PowerSlice& s : bd.slices) {
      sh.mass += power_moment(s, 0);
      sh.second_moment += s.weight * s.weight * power_moment(s, 2);
      sh.compensator.coords[s.axis] += power_moment(s, 1);
    }
    out.shells.push_back(std::move(sh));
  }
  const double cutoff = std::ldexp(1.0, -static_cast<int>(shell_count));
  const BandDecomposition below = band_decomposition(nu, r, 0.0, cutoff);
  for (const PointMass& p : below.points)
    out.residual += p.mass * p.radius * p.radius;
  for (const PowerSlice& s : below.slices)
    out.residual += s.weight * s.weight * power_moment(s, 2);
  return out;
}

RestrictedJumpSampler::RestrictedJumpSampler(const LevyMeasure& nu, const Region& a)
    : dim_(nu.dim()) {
  BandDecomposition bd = band_decomposition(nu, a.r, a.lo, a.hi);
  double cum = 0.0;
  for (PointMass& p : bd.points) {
    cum += p.mass;
    entries_.push_back(Entry{cum, -1, std::move(p.point)});
  }
  for (PowerSlice& s : bd.slices) {
    const double m = power_moment(s, 0);
    if (!std::isfinite(m)) {
      total_ = kInf;
      return;
    }
    cum += m;
    entries_.push_back(Entry{cum, static_cast<int>(slices_.size()), DualPoint{}});
    slices_.push_back(s);
  }
  total_ = cum;
}

DualPoint RestrictedJumpSampler::sample(Rng& rng) const {
  if (!(total_ > 0.0))
    throw std::invalid_argument("sample_jump: region has zero mass");
  if (!std::isfinite(total_))
    throw std::domain_error("sample_jump: region has infinite mass");
  const double u = rng.uniform01() * total_;
  std::size_t idx = entries_.size() - 1;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (u < entries_[i].cumulative) {
      idx = i;
      break;
    }
  }
  const Entry& e = entries_[idx];
  if (e.slice_index < 0) return e.point;

  const PowerSlice& s = slices_[static_cast<std::size_t>(e.slice_index)];
  // Inverse CDF of the power density restricted to (xlo, xhi].
  const double v = rng.uniform01();
  const double A = std::pow(s.xlo, -s.alpha);
  const double B = std::pow(s.xhi, -s.alpha);
  const double x = std::pow(A - v * (A - B), -1.0 / s.alpha);
  return unit_axis_point(dim_, s.axis, std::min(x, s.xhi));
}

DualPoint sample_jump(const LevyMeasure& nu, const Region& a, Rng& rng) {
  return RestrictedJumpSampler(nu, a).sample(rng);
}

}  // namespace seqlevy
