#pragma once

/// \file nodes.hpp
///
/// Nodes of f and g at E = ±M: sign changes of the integrated solution on
/// (0, r0), plus the exterior rules that follow from the power-law
/// solutions beyond r0.
///
///   +M: g has no exterior node; f has one iff A > 0.
///   -M: f has none at finite r (its decay is recorded as a node at
///       infinity and never counted); g has one iff A > ρ₁. At A = ρ₁, g
///       decays like r^{1-κ}: a node at infinity for κ ≥ 2 (counted), a
///       constant tail for κ = 1 (half-bound, not counted).
/// A zero at r0 counts once, in neither the interior nor exterior tally.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dirac/exterior.hpp"
#include "dirac/interior.hpp"
#include "dirac/potential.hpp"
#include "dirac/projective.hpp"
#include "dirac/spectrum.hpp"

namespace dirac {

enum class Component { f, g };

inline const char* to_string(Component c) noexcept { return c == Component::f ? "f" : "g"; }

/// Zeros closer together than this fraction of r0 cancel in pairs.
inline constexpr double kNodeResolution = 1e-10;

/// Sign changes of one component on (0, r0), located by linear
/// interpolation. The component has a zero at r0 when its share of the unit
/// (f, g) ray there is below `r0_tol`, unless the caller decides that
/// itself; zeros within 1e-6 r0 of such a boundary zero belong to it.
struct InteriorZeros {
  std::vector<double> radii;
  bool zero_at_r0 = false;
  bool identically_zero = false;
};

inline InteriorZeros interior_zeros(const RadialSamples& s, Component c,
                                   std::optional<bool> boundary_zero = std::nullopt,
                                   double r0_tol = kCriticalTolerance) {
  const auto& v = c == Component::f ? s.f : s.g;
  if (v.size() != s.radii.size() || v.size() < 2) throw std::invalid_argument("count_interior_nodes: bad samples");
  InteriorZeros out;
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) {
    out.identically_zero = true;
    return out;
  }
  const double r0 = s.radii.back();
  // Boundary value relative to the (f, g) ray at r0, as for the matching ratio.
  const double bf = s.f.back(), bg = s.g.back();
  const double bnorm = std::hypot(bf, bg);
  out.zero_at_r0 = boundary_zero.value_or(bnorm > 0.0 && std::abs(v.back()) / bnorm < r0_tol);

  std::vector<double> zeros;
  double r_prev = s.radii.front(), v_prev = v.front();
  const std::size_t last = out.zero_at_r0 ? v.size() - 1 : v.size();
  for (std::size_t i = 1; i < last; ++i) {
    const double x = v[i];
    if (x == 0.0) continue;
    if (v_prev != 0.0 && (x > 0.0) != (v_prev > 0.0)) {
      zeros.push_back(r_prev + (s.radii[i] - r_prev) * v_prev / (v_prev - x));
    }
    r_prev = s.radii[i];
    v_prev = x;
  }
  std::vector<double> kept;
  for (double z : zeros) {
    if (!kept.empty() && z - kept.back() < kNodeResolution * r0) {
      kept.pop_back();
      continue;
    }
    kept.push_back(z);
  }
  if (out.zero_at_r0) {
    while (!kept.empty() && kept.back() > r0 * (1.0 - 1e-6)) kept.pop_back();
  }
  out.radii = std::move(kept);
  return out;
}

/// Strict sign changes on (0, r0); a zero at r0 is not included.
inline int count_interior_nodes(const RadialSamples& s, Component c) {
  const auto z = interior_zeros(s, c);
  if (z.identically_zero) throw std::invalid_argument("count_interior_nodes: component is identically zero");
  return static_cast<int>(z.radii.size());
}

struct ExteriorNodes {
  int f_count = 0;
  int g_count = 0;
  bool f_at_r0 = false;
  bool g_at_r0 = false;
  bool f_at_infinity = false;
  /// κ ≥ 2, A(-M) = ρ₁: g ∝ r^{1-κ}; included in g_count.
  bool g_at_infinity = false;
};

/// Exterior node rules for κ ≥ 1 at boundary ratio a. Equalities (A = 0,
/// ∞, ρ₁) are decided at projective distance tol.
inline ExteriorNodes exterior_nodes(Threshold threshold, const ProjectiveRatio& a, const ThresholdConstants& tc,
                                    const AngularChannel& ch, double tol = kCriticalTolerance) {
  detail::require_positive_kappa(ch, "exterior_nodes");
  ExteriorNodes out;
  const bool a_zero = std::abs(a.f0()) < tol;
  const bool a_inf = std::abs(a.g0()) < tol;
  if (threshold == Threshold::plus) {
    out.f_at_r0 = a_zero;
    out.g_at_r0 = a_inf;
    // f = f0 t^{-κ} - ρ₂ g0 (t^{κ+1} - t^{-κ}) vanishes beyond r0 iff A > 0.
    out.f_count = (!a_zero && !a_inf && a.value() > 0.0) ? 1 : 0;
    return out;
  }
  out.f_at_infinity = true;
  out.f_at_r0 = a_zero;
  out.g_at_r0 = a_inf;
  if (a_inf) return out;
  if (is_critical(a, Threshold::minus, tc, tol)) {
    if (ch.kappa() >= 2) {
      out.g_count = 1;
      out.g_at_infinity = true;
    }
    return out;
  }
  // g ∝ g0 t^κ + (f0/ρ₁)(t^{1-κ} - t^κ) vanishes beyond r0 iff A > ρ₁.
  out.g_count = a.value() > tc.rho1 ? 1 : 0;
  return out;
}

struct NodeReport {
  Threshold threshold = Threshold::plus;
  ProjectiveRatio a = ProjectiveRatio::infinity();
  int f_nodes_interior = 0;
  int g_nodes_interior = 0;
  int f_nodes_exterior = 0;
  int g_nodes_exterior = 0;
  bool f_node_at_r0 = false;
  bool g_node_at_r0 = false;
  bool node_at_infinity_f = false;
  bool node_at_infinity_g = false;
  /// The component vanishes on (0, r0] (free field at the threshold where
  /// its coupling E - V ± M is zero).
  bool f_vanishes = false;
  bool g_vanishes = false;

  int f_total() const noexcept { return f_nodes_interior + f_nodes_exterior + (f_node_at_r0 ? 1 : 0); }
  int g_total() const noexcept { return g_nodes_interior + g_nodes_exterior + (g_node_at_r0 ? 1 : 0); }
};

/// f ↔ g exchange and threshold swap (see solve_negative_kappa).
inline NodeReport mirror_result(NodeReport r) {
  r.threshold = opposite(r.threshold);
  r.a = r.a.inverted();
  std::swap(r.f_nodes_interior, r.g_nodes_interior);
  std::swap(r.f_nodes_exterior, r.g_nodes_exterior);
  std::swap(r.f_node_at_r0, r.g_node_at_r0);
  std::swap(r.node_at_infinity_f, r.node_at_infinity_g);
  std::swap(r.f_vanishes, r.g_vanishes);
  return r;
}

/// Node counts of the regular solution at E = ±M.
inline NodeReport node_report(const CutoffPotential& p, const AngularChannel& ch, PhysicalScale scale,
                              Threshold threshold, int n_steps = kDefaultSteps) {
  if (!ch.positive()) {
    return solve_negative_kappa(p, ch, scale, [&](const CutoffPotential& q, const AngularChannel& c, PhysicalScale s) {
      return node_report(q, c, s, opposite(threshold), n_steps);
    });
  }
  if (n_steps < kDefaultSteps) throw std::invalid_argument("node_report: n_steps must be >= 4096");
  const auto e = EnergyPoint::at_threshold(threshold, scale);
  const auto samples = integrate_radial(p, ch, e, n_steps);
  const double r0 = p.cutoff_radius();
  const auto tc = threshold_constants(scale, r0, ch);

  // The boundary ratio comes from the closed form when one exists, so that
  // criticality here agrees with the spectrum and the jump ledger.
  const InteriorModel model(p, ch, scale);
  NodeReport out;
  out.threshold = threshold;
  out.a = model.ratio(e.energy());

  const auto ext = exterior_nodes(threshold, out.a, tc, ch);
  const auto zf = interior_zeros(samples, Component::f, ext.f_at_r0);
  const auto zg = interior_zeros(samples, Component::g, ext.g_at_r0);
  out.f_vanishes = zf.identically_zero;
  out.g_vanishes = zg.identically_zero;
  out.f_nodes_interior = static_cast<int>(zf.radii.size());
  out.g_nodes_interior = static_cast<int>(zg.radii.size());

  out.f_nodes_exterior = out.f_vanishes ? 0 : ext.f_count;
  out.g_nodes_exterior = out.g_vanishes ? 0 : ext.g_count;
  out.f_node_at_r0 = !out.f_vanishes && ext.f_at_r0;
  out.g_node_at_r0 = !out.g_vanishes && ext.g_at_r0;
  out.node_at_infinity_f = ext.f_at_infinity;
  out.node_at_infinity_g = ext.g_at_infinity;
  return out;
}

}  // namespace dirac
