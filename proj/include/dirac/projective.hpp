#pragma once

/// \file projective.hpp
///
/// The matching ratio A = f/g at r0 stored as a point on the projective
/// line, so that A = ∞ (g = 0) is an ordinary value.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dirac {

/// An unnormalized (f, g) pair. Solvers hand these out with signs that vary
/// continuously in their parameters, which is what sign-change bracketing
/// needs; ProjectiveRatio throws that sign information away.
struct Ray {
  double f = 0.0;
  double g = 0.0;

  double norm() const noexcept { return std::hypot(f, g); }
  Ray unit() const {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw std::domain_error("Ray: zero or non-finite ray");
    return {f / n, g / n};
  }
};

/// f g' - g f' of two unit rays: the sine of the angle between them.
inline double cross(const Ray& a, const Ray& b) noexcept { return a.f * b.g - a.g * b.f; }

class ProjectiveRatio {
 public:
  /// Normalizes to unit length with the first nonzero entry positive.
  static ProjectiveRatio from_pair(double f, double g) {
    const Ray u = Ray{f, g}.unit();
    if (u.f < 0.0 || (u.f == 0.0 && u.g < 0.0)) return ProjectiveRatio(-u.f, -u.g);
    return ProjectiveRatio(u.f, u.g);
  }
  static ProjectiveRatio from_ray(const Ray& r) { return from_pair(r.f, r.g); }

  /// A = value; ±∞ maps to g0 = 0.
  static ProjectiveRatio from_value(double a) {
    if (std::isnan(a)) throw std::invalid_argument("ProjectiveRatio: NaN ratio");
    if (std::isinf(a)) return ProjectiveRatio(1.0, 0.0);
    return from_pair(a, 1.0);
  }
  static ProjectiveRatio infinity() { return ProjectiveRatio(1.0, 0.0); }

  double f0() const noexcept { return f0_; }
  double g0() const noexcept { return g0_; }

  /// f0/g0; +∞ when g0 == 0.
  double value() const noexcept {
    if (g0_ == 0.0) return std::numeric_limits<double>::infinity();
    return f0_ / g0_;
  }
  bool is_infinite() const noexcept { return g0_ == 0.0; }

  /// g/f: the ratio of the f ↔ g exchanged solution.
  ProjectiveRatio inverted() const { return from_pair(g0_, f0_); }

  Ray ray() const noexcept { return {f0_, g0_}; }

 private:
  ProjectiveRatio(double f0, double g0) : f0_(f0), g0_(g0) {}
  double f0_;
  double g0_;
};

/// |sin| of the angle between two projective points; 0 iff equal.
inline double projective_distance(const ProjectiveRatio& a, const ProjectiveRatio& b) noexcept {
  return std::abs(a.f0() * b.g0() - a.g0() * b.f0());
}

}  // namespace dirac
