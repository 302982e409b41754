#pragma once

/// \file spectrum.hpp
///
/// Bound states in the gap (-M, M) and threshold criticality.
///
/// A bound state is a zero of D(E) = f_in g_out - g_in f_out built from the
/// unit interior ray and the unit decaying exterior ray at r0. Both rays
/// have signs continuous in E, so every match is a sign change of D.
/// Threshold states (A(M) = ∞, or A(-M) = ρ₁ with κ ≥ 2) are normalizable
/// and counted in N_κ; the κ = 1 state at A(-M) = ρ₁ is half-bound and is
/// not.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dirac/errors.hpp"
#include "dirac/exterior.hpp"
#include "dirac/interior.hpp"
#include "dirac/potential.hpp"
#include "dirac/projective.hpp"

namespace dirac {

/// Projective distance below which a threshold ratio counts as critical.
inline constexpr double kCriticalTolerance = 1e-8;

/// A(M) = ∞ or A(-M) = ρ₁, to projective distance tol.
inline bool is_critical(const ProjectiveRatio& a, Threshold t, const ThresholdConstants& tc,
                        double tol = kCriticalTolerance) {
  if (t == Threshold::plus) return std::abs(a.g0()) < tol;
  return projective_distance(a, ProjectiveRatio::from_value(tc.rho1)) < tol;
}

struct SpectrumReport {
  /// Ascending, strictly inside (-M, M).
  std::vector<double> bound_energies;
  /// Bound states sitting exactly at a threshold (counted).
  bool threshold_state_plus = false;
  bool threshold_state_minus = false;
  /// Half-bound states (never counted).
  bool half_bound_at_plus_M = false;
  bool half_bound_at_minus_M = false;
  int count = 0;

  friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

struct SpectrumOptions {
  int grid_points = 2000;
  /// The scan covers (-M + edge, M - edge).
  double edge_offset = 1e-8;
  /// Extra geometric points within this distance of each threshold.
  double densify_width = 1e-4;
  int densify_per_decade = 10;
  int max_subdivision = 40;
  double critical_tol = kCriticalTolerance;
  InteriorMethod method = InteriorMethod::automatic;
  int n_steps = kDefaultSteps;
};

/// f ↔ g exchange for a result computed on (|κ|, -V): energies negate and
/// the thresholds swap.
inline SpectrumReport mirror_result(SpectrumReport r) {
  for (auto& e : r.bound_energies) e = -e;
  std::reverse(r.bound_energies.begin(), r.bound_energies.end());
  std::swap(r.threshold_state_plus, r.threshold_state_minus);
  std::swap(r.half_bound_at_plus_M, r.half_bound_at_minus_M);
  return r;
}

/// Serves κ ≤ -1 through f_{-κ,E}[V] = g_{κ,-E}[-V]: runs `request` on
/// (reflect(p), |κ|) and mirrors the result.
template <class Request>
auto solve_negative_kappa(const CutoffPotential& p, const AngularChannel& ch, PhysicalScale scale,
                          Request&& request) {
  if (ch.kappa() > -1) throw std::invalid_argument("solve_negative_kappa: requires kappa <= -1");
  return mirror_result(request(reflect(p), ch.mirrored(), scale));
}

/// D(E) for κ ≥ 1: sine of the angle from the exterior to the interior ray.
inline double match_mismatch(const InteriorModel& model, double energy) {
  const EnergyPoint e(energy, model.scale());
  const Ray in = model.ray(e).unit();
  const Ray out = bound_exterior_ray(model.channel(), energy, model.scale(), model.r0()).unit();
  return cross(in, out);
}

namespace detail {

struct GapSample {
  double energy;
  double mismatch;  // D(E)
  double angle;     // angle between the rays, mod π in (-π/2, π/2]
};

inline GapSample gap_sample(const InteriorModel& model, double energy) {
  const EnergyPoint e(energy, model.scale());
  const Ray in = model.ray(e).unit();
  const Ray out = bound_exterior_ray(model.channel(), energy, model.scale(), model.r0()).unit();
  const double c = cross(in, out);
  double a = std::atan2(c, in.f * out.f + in.g * out.g);
  if (a > 0.5 * std::numbers::pi) a -= std::numbers::pi;
  if (a <= -0.5 * std::numbers::pi) a += std::numbers::pi;
  return {energy, c, a};
}

inline std::vector<double> gap_grid(double m, const SpectrumOptions& opt) {
  std::vector<double> grid;
  const double lo = -m + opt.edge_offset, hi = m - opt.edge_offset;
  grid.reserve(static_cast<std::size_t>(opt.grid_points) + 200);
  for (int i = 0; i < opt.grid_points; ++i) grid.push_back(lo + (hi - lo) * i / (opt.grid_points - 1));
  if (opt.densify_width > opt.edge_offset) {
    const double decades = std::log10(opt.densify_width / opt.edge_offset);
    const int n = std::max(1, static_cast<int>(std::ceil(decades * opt.densify_per_decade)));
    for (int i = 0; i <= n; ++i) {
      const double d = opt.edge_offset * std::pow(10.0, decades * i / n);
      grid.push_back(-m + d);
      grid.push_back(m - d);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace detail

/// Whether the threshold ratios sit on their critical values.
struct ThresholdCriticality {
  ProjectiveRatio a_plus = ProjectiveRatio::infinity();
  ProjectiveRatio a_minus = ProjectiveRatio::infinity();
  bool plus = false;
  bool minus = false;
};

inline ThresholdCriticality threshold_criticality(const InteriorModel& model, double tol = kCriticalTolerance) {
  const auto tc = threshold_constants(model.scale(), model.r0(), model.channel());
  ThresholdCriticality out;
  out.a_plus = ProjectiveRatio::from_ray(model.ray(EnergyPoint::at_threshold(Threshold::plus, model.scale())));
  out.a_minus = ProjectiveRatio::from_ray(model.ray(EnergyPoint::at_threshold(Threshold::minus, model.scale())));
  out.plus = is_critical(out.a_plus, Threshold::plus, tc, tol);
  out.minus = is_critical(out.a_minus, Threshold::minus, tc, tol);
  return out;
}

/// All bound states of channel κ. Roots are bisected to `tol` in E.
inline SpectrumReport find_bound_states(const CutoffPotential& p, const AngularChannel& ch, PhysicalScale scale,
                                        double tol = 1e-12, const SpectrumOptions& opt = {}) {
  if (!(tol >= 1e-12)) throw std::invalid_argument("find_bound_states: tol must be >= 1e-12");
  if (opt.grid_points < 2) throw std::invalid_argument("find_bound_states: grid_points must be >= 2");
  if (!ch.positive()) {
    return solve_negative_kappa(p, ch, scale, [&](const CutoffPotential& q, const AngularChannel& c, PhysicalScale s) {
      return find_bound_states(q, c, s, tol, opt);
    });
  }
  const InteriorModel model(p, ch, scale, opt.method, opt.n_steps);
  SpectrumReport report;

  const auto grid = detail::gap_grid(scale.mass(), opt);
  std::vector<detail::GapSample> samples;
  samples.reserve(grid.size());
  for (double e : grid) samples.push_back(detail::gap_sample(model, e));

  const auto positive = [](double d) { return d >= 0.0; };
  const auto bisect = [&](detail::GapSample a, detail::GapSample b) {
    double lo = a.energy, hi = b.energy;
    const bool plo = positive(a.mismatch);
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (positive(match_mismatch(model, mid)) == plo ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  // Cells whose relative angle turns by π/4 or more may hide two matches.
  const auto scan_cell = [&](auto&& self, const detail::GapSample& a, const detail::GapSample& b, int depth) -> void {
    double turn = b.angle - a.angle;
    if (turn > 0.5 * std::numbers::pi) turn -= std::numbers::pi;
    if (turn <= -0.5 * std::numbers::pi) turn += std::numbers::pi;
    if (std::abs(turn) >= 0.25 * std::numbers::pi) {
      if (depth >= opt.max_subdivision) {
        throw RefinementError("find_bound_states: cannot separate matches; raise grid_points", a.energy, b.energy);
      }
      const auto m = detail::gap_sample(model, 0.5 * (a.energy + b.energy));
      self(self, a, m, depth + 1);
      self(self, m, b, depth + 1);
      return;
    }
    if (positive(a.mismatch) != positive(b.mismatch)) report.bound_energies.push_back(bisect(a, b));
  };
  for (std::size_t i = 1; i < samples.size(); ++i) scan_cell(scan_cell, samples[i - 1], samples[i], 0);
  std::sort(report.bound_energies.begin(), report.bound_energies.end());

  const auto crit = threshold_criticality(model, opt.critical_tol);
  report.threshold_state_plus = crit.plus;
  if (crit.minus) {
    if (ch.kappa() == 1) {
      report.half_bound_at_minus_M = true;
    } else {
      report.threshold_state_minus = true;
    }
  }
  report.count = static_cast<int>(report.bound_energies.size()) + (report.threshold_state_plus ? 1 : 0) +
                 (report.threshold_state_minus ? 1 : 0);
  return report;
}

struct HalfBoundFlags {
  bool plus = false;
  bool minus = false;
  friend bool operator==(const HalfBoundFlags&, const HalfBoundFlags&) = default;
};

inline HalfBoundFlags mirror_result(HalfBoundFlags h) { return {h.minus, h.plus}; }

/// κ = 1: half-bound at -M iff |A(-M) - ρ₁| < tol. κ = -1: the mirrored
/// configuration at +M. Never set for |κ| ≥ 2.
inline HalfBoundFlags detect_half_bound(const CutoffPotential& p, const AngularChannel& ch, PhysicalScale scale,
                                        double tol = kCriticalTolerance,
                                        InteriorMethod method = InteriorMethod::automatic) {
  if (!ch.positive()) {
    return solve_negative_kappa(p, ch, scale, [&](const CutoffPotential& q, const AngularChannel& c, PhysicalScale s) {
      return detect_half_bound(q, c, s, tol, method);
    });
  }
  if (ch.kappa() != 1) return {};
  const InteriorModel model(p, ch, scale, method);
  const auto a = model.ratio(EnergyPoint::at_threshold(Threshold::minus, scale).energy());
  const auto tc = threshold_constants(scale, model.r0(), ch);
  // |A - ρ₁| with A possibly infinite.
  const bool hit = !a.is_infinite() && std::abs(a.value() - tc.rho1) < tol;
  return {false, hit};
}

}  // namespace dirac
