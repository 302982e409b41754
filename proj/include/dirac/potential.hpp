#pragma once

/// \file potential.hpp
///
/// Cutoff, piecewise-constant, spherically symmetric potentials; the Dirac
/// angular channel κ; and the mass scale M. Natural units (ħ = c = 1).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirac {

/// Rest mass M > 0. Thresholds sit at E = ±M.
class PhysicalScale {
 public:
  explicit PhysicalScale(double mass = 1.0) : mass_(mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
      throw std::invalid_argument("PhysicalScale: mass must be positive and finite");
    }
  }
  double mass() const noexcept { return mass_; }
  friend bool operator==(const PhysicalScale&, const PhysicalScale&) = default;

 private:
  double mass_;
};

/// Dirac angular quantum number κ ≠ 0.
///
/// κ = j + 1/2 when ℓ = j + 1/2 and κ = -(j + 1/2) when ℓ = j - 1/2.
class AngularChannel {
 public:
  explicit AngularChannel(int kappa) : kappa_(kappa) {
    if (kappa == 0) throw std::invalid_argument("AngularChannel: kappa must be nonzero");
  }
  int kappa() const noexcept { return kappa_; }
  int magnitude() const noexcept { return std::abs(kappa_); }
  bool positive() const noexcept { return kappa_ > 0; }
  double j() const noexcept { return std::abs(kappa_) - 0.5; }
  int l() const noexcept { return kappa_ > 0 ? kappa_ : -kappa_ - 1; }
  /// The channel -κ used by the f ↔ g symmetry.
  AngularChannel mirrored() const { return AngularChannel(-kappa_); }
  friend bool operator==(const AngularChannel&, const AngularChannel&) = default;

 private:
  int kappa_;
};

/// One constant piece of a potential: value on (previous radius, outer_radius].
struct Segment {
  double outer_radius;
  double value;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// V(r) built from constant segments; V = 0 for r > r0, r0 being the last
/// segment's outer radius. A radius equal to a segment edge belongs to the
/// inner segment.
class CutoffPotential {
 public:
  explicit CutoffPotential(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw std::invalid_argument("CutoffPotential: no segments");
    double previous = 0.0;
    for (const auto& s : segments_) {
      if (!std::isfinite(s.outer_radius) || !std::isfinite(s.value)) {
        throw std::invalid_argument("CutoffPotential: non-finite segment");
      }
      if (!(s.outer_radius > previous)) {
        throw std::invalid_argument("CutoffPotential: segment radii must be positive and strictly increasing");
      }
      previous = s.outer_radius;
    }
  }

  double cutoff_radius() const noexcept { return segments_.back().outer_radius; }
  std::span<const Segment> segments() const noexcept { return segments_; }

  double operator()(double r) const noexcept {
    for (const auto& s : segments_) {
      if (r <= s.outer_radius) return s.value;
    }
    return 0.0;
  }

  /// Depth λ when this is a single square well V = -λ on [0, r0].
  std::optional<double> square_well_depth() const noexcept {
    if (segments_.size() != 1) return std::nullopt;
    return -segments_.front().value;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& s : segments_) m = std::max(m, std::abs(s.value));
    return m;
  }

  /// ∫_0^r0 |V| dr.
  double absolute_integral() const noexcept {
    double total = 0.0, inner = 0.0;
    for (const auto& s : segments_) {
      total += std::abs(s.value) * (s.outer_radius - inner);
      inner = s.outer_radius;
    }
    return total;
  }

  /// The potential s·V.
  CutoffPotential scaled(double s) const {
    auto copy = segments_;
    for (auto& seg : copy) seg.value *= s;
    return CutoffPotential(std::move(copy));
  }

  friend bool operator==(const CutoffPotential&, const CutoffPotential&) = default;

 private:
  std::vector<Segment> segments_;
};

/// V = -λ for r ≤ r0, 0 beyond. Attractive for λ > 0.
inline CutoffPotential square_well(double lambda, double r0) {
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw std::invalid_argument("square_well: r0 must be positive");
  if (!std::isfinite(lambda)) throw std::invalid_argument("square_well: lambda must be finite");
  // -0.0 would make reflect(square_well(0)) compare unequal bitwise in output.
  return CutoffPotential({Segment{r0, lambda == 0.0 ? 0.0 : -lambda}});
}

/// V → -V.
inline CutoffPotential reflect(const CutoffPotential& p) {
  std::vector<Segment> segs(p.segments().begin(), p.segments().end());
  for (auto& s : segs) s.value = s.value == 0.0 ? 0.0 : -s.value;
  return CutoffPotential(std::move(segs));
}

inline double evaluate(const CutoffPotential& p, double r) {
  if (!(r > 0.0)) throw std::domain_error("evaluate: r must be positive");
  return p(r);
}

}  // namespace dirac
