#pragma once

/// \file exterior.hpp
///
/// Free-field (V = 0) solutions beyond the cutoff radius.
///
/// With a = E + M and b = E - M the free pair is
///     f = -(k/b) r w_κ(kr),  g = r w_{κ-1}(kr),   k² = ab,
/// for w = j (regular) or w = y (irregular) when |E| > M. Below threshold
/// the decaying member uses k_n(τr), τ² = -ab, and gives
///     B_κ(E) = f/g |_{r0+} = P_κ(τr0) / ((M - E) r0 P_{κ-1}(τr0)),
/// P_n being the polynomial part of k_n. At E = ±M the solutions are the
/// exact power laws implemented in threshold_exterior().

#include <cmath>
#include <stdexcept>

#include "dirac/interior.hpp"
#include "dirac/potential.hpp"
#include "dirac/projective.hpp"
#include "dirac/special_functions.hpp"

namespace dirac {

/// ρ₁ = (2κ-1)/(2M r0): exterior ratio at E = -M.
/// ρ₂ = 2M r0/(2κ+1): minus the free interior ratio at E = +M.
struct ThresholdConstants {
  double rho1;
  double rho2;
};

inline ThresholdConstants threshold_constants(PhysicalScale scale, double r0, const AngularChannel& ch) {
  detail::require_positive_kappa(ch, "threshold_constants");
  if (!(r0 > 0.0)) throw std::invalid_argument("threshold_constants: r0 must be positive");
  const double kappa = ch.kappa();
  const double mr = scale.mass() * r0;
  return {(2.0 * kappa - 1.0) / (2.0 * mr), 2.0 * mr / (2.0 * kappa + 1.0)};
}

/// The two oscillatory free solutions at one radius.
struct ScatteringPair {
  Ray regular;
  Ray irregular;
};

inline ScatteringPair scattering_pair(const AngularChannel& ch, const EnergyPoint& e, double r) {
  detail::require_positive_kappa(ch, "scattering_pair");
  if (!e.is_scattering()) throw std::domain_error("scattering_pair: requires |E| > M");
  if (!(r > 0.0)) throw std::domain_error("scattering_pair: requires r > 0");
  using special::BesselOrder;
  const int kappa = ch.kappa();
  const double k = e.momentum();
  const double c = k / e.minus_mass();
  const double x = k * r;
  return {
      {-c * r * special::detail::sph_j(kappa, x), r * special::detail::sph_j(kappa - 1, x)},
      {-c * r * special::detail::sph_y(kappa, x), r * special::detail::sph_y(kappa - 1, x)},
  };
}

/// Raw ray of the decaying solution at r0⁺ for -M ≤ E ≤ M; both entries
/// positive, continuous in E.
inline Ray bound_exterior_ray(const AngularChannel& ch, double energy, PhysicalScale scale, double r0) {
  detail::require_positive_kappa(ch, "bound_exterior_ray");
  const double m = scale.mass();
  if (std::abs(energy) > m) throw std::domain_error("bound_exterior_ray: requires |E| <= M");
  const double tau = std::sqrt((m - energy) * (m + energy));
  const double x = tau * r0;
  const int kappa = ch.kappa();
  return {special::detail::k_polynomial(kappa, x), (m - energy) * r0 * special::detail::k_polynomial(kappa - 1, x)};
}

/// B_κ(E): f/g at r0⁺ of the solution decaying at infinity, |E| < M.
/// Increases from ρ₁ (E → -M) to ∞ (E → M).
inline ProjectiveRatio bound_exterior_ratio(const AngularChannel& ch, const EnergyPoint& e, PhysicalScale scale,
                                            double r0) {
  if (!e.is_bound_region()) throw std::domain_error("bound_exterior_ratio: requires |E| < M");
  return ProjectiveRatio::from_ray(bound_exterior_ray(ch, e.energy(), scale, r0));
}

/// Continuation of boundary data (f(r0), g(r0)) to r ≥ r0 at E = ±M.
///
///   +M: g = g0 t^κ,  f = f0 t^{-κ} - ρ₂ g0 (t^{κ+1} - t^{-κ})
///   -M: f = f0 t^{-κ},  g = g0 t^κ + (f0/ρ₁)(t^{1-κ} - t^κ)
/// with t = r / r0.
inline Ray threshold_exterior(const AngularChannel& ch, Threshold threshold, Ray boundary, double r,
                              PhysicalScale scale, double r0) {
  detail::require_positive_kappa(ch, "threshold_exterior");
  if (r < r0) throw std::domain_error("threshold_exterior: requires r >= r0");
  const auto tc = threshold_constants(scale, r0, ch);
  const double kappa = ch.kappa();
  const double t = r / r0;
  if (threshold == Threshold::plus) {
    const double g = boundary.g * std::pow(t, kappa);
    const double f = boundary.f * std::pow(t, -kappa) - tc.rho2 * boundary.g * (std::pow(t, kappa + 1.0) - std::pow(t, -kappa));
    return {f, g};
  }
  const double f = boundary.f * std::pow(t, -kappa);
  const double g = boundary.g * std::pow(t, kappa) + boundary.f / tc.rho1 * (std::pow(t, 1.0 - kappa) - std::pow(t, kappa));
  return {f, g};
}

}  // namespace dirac
