#pragma once

/// \file interior.hpp
///
/// Regular solution of the radial Dirac pair
///
///     f' + (κ/r) f = -(E - V + M) g
///     g' - (κ/r) g =  (E - V - M) f
///
/// on (0, r0], and the matching ratio A_κ(E) = f/g at r0⁻. Two routes are
/// provided: fixed-step RK4 integration for any cutoff potential, and the
/// exact square-well solution
///
///     f = -a r R_κ(a b r²) r^κ,   g = R_{κ-1}(a b r²) r^κ,
///     a = E - V + M,  b = E - V - M,  R_n(z) = j_n(√z)/√z^n,
///
/// which at E = ±M reduces to the three-branch Bessel-ratio formulas for
/// A_κ(±M) (p² = ab > 0 gives the J branches, p² < 0 the I branch).

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac/potential.hpp"
#include "dirac/projective.hpp"
#include "dirac/special_functions.hpp"

namespace dirac {

enum class Threshold : int { plus = +1, minus = -1 };

inline int sign_of(Threshold t) noexcept { return static_cast<int>(t); }
inline Threshold opposite(Threshold t) noexcept {
  return t == Threshold::plus ? Threshold::minus : Threshold::plus;
}
inline const char* to_string(Threshold t) noexcept { return t == Threshold::plus ? "plus" : "minus"; }

/// An energy E together with the scale it is measured against.
///
/// |E| - M is stored separately so that E ∓ M keep full relative precision
/// at k r0 ≪ 1, where forming them by subtraction would cancel.
class EnergyPoint {
 public:
  EnergyPoint(double energy, PhysicalScale scale)
      : energy_(energy), scale_(scale), excess_(std::abs(energy) - scale.mass()) {
    if (!std::isfinite(energy)) throw std::invalid_argument("EnergyPoint: energy must be finite");
  }
  static EnergyPoint at_threshold(Threshold t, PhysicalScale scale) {
    return EnergyPoint(sign_of(t) * scale.mass(), scale);
  }
  /// E = ±√(M² + k²).
  static EnergyPoint from_momentum(Threshold t, double k, PhysicalScale scale) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("EnergyPoint: momentum must be >= 0");
    const double m = scale.mass();
    const double root = std::sqrt(m * m + k * k);
    EnergyPoint e(sign_of(t) * root, scale);
    e.excess_ = k * k / (m + root);
    return e;
  }

  double energy() const noexcept { return energy_; }
  double mass() const noexcept { return scale_.mass(); }
  PhysicalScale scale() const noexcept { return scale_; }
  bool is_scattering() const noexcept { return excess_ > 0.0; }
  bool is_bound_region() const noexcept { return excess_ < 0.0; }
  /// |E| - M.
  double excess() const noexcept { return excess_; }
  /// E + M.
  double plus_mass() const noexcept { return energy_ < 0.0 ? -excess_ : energy_ + mass(); }
  /// E - M.
  double minus_mass() const noexcept { return energy_ > 0.0 ? excess_ : energy_ - mass(); }

  /// -E with the same |E| - M.
  EnergyPoint negated() const noexcept {
    EnergyPoint e = *this;
    e.energy_ = -energy_;
    return e;
  }

  /// k = √(E² - M²), defined for |E| ≥ M.
  double momentum() const {
    if (excess_ < 0.0) throw std::domain_error("EnergyPoint: momentum needs |E| >= M");
    return std::sqrt(excess_ * (std::abs(energy_) + mass()));
  }
  /// τ = √(M² - E²), defined for |E| ≤ M.
  double decay_rate() const {
    if (excess_ > 0.0) throw std::domain_error("EnergyPoint: decay rate needs |E| <= M");
    return std::sqrt(-excess_ * (std::abs(energy_) + mass()));
  }

 private:
  double energy_;
  PhysicalScale scale_;
  double excess_;
};

/// (r, f, g) samples of one radial solution, ascending in r.
struct RadialSamples {
  std::vector<double> radii;
  std::vector<double> f;
  std::vector<double> g;

  std::size_t size() const noexcept { return radii.size(); }
};

inline constexpr int kDefaultSteps = 4096;
inline constexpr double kStartFraction = 1e-6;
inline constexpr double kRescaleAbove = 1e100;

namespace detail {

inline void require_positive_kappa(const AngularChannel& ch, const char* who) {
  if (ch.kappa() < 1) {
    throw std::invalid_argument(std::string(who) + ": requires kappa >= 1 (use the mirrored channel for kappa < 0)");
  }
}

/// plus = E + M, minus = E - M.
struct RadialRhs {
  double kappa, plus, minus, potential;
  void operator()(double r, double f, double g, double& df, double& dg) const noexcept {
    df = -kappa / r * f - (plus - potential) * g;
    dg = kappa / r * g + (minus - potential) * f;
  }
};

/// Observer that ignores everything.
struct NoSamples {
  void point(double, double, double) {}
  void rescale(double) {}
};

struct CollectSamples {
  RadialSamples* out;
  void point(double r, double f, double g) {
    out->radii.push_back(r);
    out->f.push_back(f);
    out->g.push_back(g);
  }
  void rescale(double factor) {
    for (auto& v : out->f) v *= factor;
    for (auto& v : out->g) v *= factor;
  }
};

/// RK4 from (r_start, state) to the cutoff radius. Steps are min(h, c·r)
/// with h = segment length / n_steps and c = 256 / n_steps, which keeps
/// h·κ/r bounded near the origin.
template <class Observer>
Ray propagate(const CutoffPotential& p, int kappa, const EnergyPoint& e, double r_start, Ray state,
              int n_steps, Observer&& obs) {
  const double r0 = p.cutoff_radius();
  const double grading = 256.0 / n_steps;
  double r = r_start;
  double carry_f = 0.0, carry_g = 0.0;
  obs.point(r, state.f, state.g);
  double inner = 0.0;
  for (const auto& seg : p.segments()) {
    const double lo = inner;
    inner = seg.outer_radius;
    if (seg.outer_radius <= r) continue;
    const RadialRhs rhs{static_cast<double>(kappa), e.plus_mass(), e.minus_mass(), seg.value};
    const double h_uniform = (seg.outer_radius - std::max(lo, r_start)) / n_steps;
    while (r < seg.outer_radius) {
      double h = std::min(h_uniform, grading * r);
      if (r + h >= seg.outer_radius - 1e-12 * h_uniform) h = seg.outer_radius - r;
      double k1f, k1g, k2f, k2g, k3f, k3g, k4f, k4g;
      rhs(r, state.f, state.g, k1f, k1g);
      rhs(r + 0.5 * h, state.f + 0.5 * h * k1f, state.g + 0.5 * h * k1g, k2f, k2g);
      rhs(r + 0.5 * h, state.f + 0.5 * h * k2f, state.g + 0.5 * h * k2g, k3f, k3g);
      rhs(r + h, state.f + h * k3f, state.g + h * k3g, k4f, k4g);
      // Compensated update: the rounding of each addition is carried into
      // the next, so the accumulated error does not grow with the step count.
      const double df = h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f) - carry_f;
      const double dg = h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g) - carry_g;
      const double nf = state.f + df, ng = state.g + dg;
      carry_f = (nf - state.f) - df;
      carry_g = (ng - state.g) - dg;
      state.f = nf;
      state.g = ng;
      r = (h == seg.outer_radius - r) ? seg.outer_radius : r + h;
      if (!std::isfinite(state.f) || !std::isfinite(state.g)) {
        throw std::runtime_error("integrate_radial: non-finite value at r = " + std::to_string(r));
      }
      const double big = std::max(std::abs(state.f), std::abs(state.g));
      if (big > kRescaleAbove) {
        const double factor = 1.0 / kRescaleAbove;
        state.f *= factor;
        state.g *= factor;
        carry_f *= factor;
        carry_g *= factor;
        obs.rescale(factor);
      }
      obs.point(r, state.f, state.g);
    }
  }
  (void)r0;
  return state;
}

/// Leading behaviour of the regular solution: g ~ r^κ, f ~ -(E-V(0)+M) r^{κ+1}/(2κ+1).
inline Ray regular_start(const CutoffPotential& p, int kappa, const EnergyPoint& e, double r_eps) {
  const double a = e.plus_mass() - p(0.0);
  return {-a * std::pow(r_eps, kappa + 1) / (2.0 * kappa + 1.0), std::pow(r_eps, kappa)};
}

inline void require_steps(int n_steps) {
  if (n_steps < 100) throw std::invalid_argument("integrate_radial: n_steps must be >= 100");
}

}  // namespace detail

/// Samples of the regular solution from r0·1e-6 to r0.
inline RadialSamples integrate_radial(const CutoffPotential& p, const AngularChannel& ch, const EnergyPoint& e,
                                      int n_steps = kDefaultSteps) {
  detail::require_positive_kappa(ch, "integrate_radial");
  detail::require_steps(n_steps);
  const double r_eps = p.cutoff_radius() * kStartFraction;
  RadialSamples out;
  out.radii.reserve(static_cast<std::size_t>(n_steps) * p.segments().size() + 256);
  out.f.reserve(out.radii.capacity());
  out.g.reserve(out.radii.capacity());
  detail::propagate(p, ch.kappa(), e, r_eps, detail::regular_start(p, ch.kappa(), e, r_eps), n_steps,
                    detail::CollectSamples{&out});
  return out;
}

/// Samples of the solution through an arbitrary initial ray at r_start > 0.
inline RadialSamples propagate_radial(const CutoffPotential& p, const AngularChannel& ch, const EnergyPoint& e,
                                      double r_start, Ray start, int n_steps = kDefaultSteps) {
  detail::require_positive_kappa(ch, "propagate_radial");
  detail::require_steps(n_steps);
  if (!(r_start > 0.0) || r_start >= p.cutoff_radius()) {
    throw std::invalid_argument("propagate_radial: r_start must lie in (0, r0)");
  }
  RadialSamples out;
  detail::propagate(p, ch.kappa(), e, r_start, start, n_steps, detail::CollectSamples{&out});
  return out;
}

/// (f, g) at r0 of the regular solution, with signs continuous in E and V.
inline Ray interior_ray_ode(const CutoffPotential& p, const AngularChannel& ch, const EnergyPoint& e,
                            int n_steps = kDefaultSteps) {
  detail::require_positive_kappa(ch, "interior_ray_ode");
  detail::require_steps(n_steps);
  const double r_eps = p.cutoff_radius() * kStartFraction;
  return detail::propagate(p, ch.kappa(), e, r_eps, detail::regular_start(p, ch.kappa(), e, r_eps), n_steps,
                           detail::NoSamples{});
}

/// A_κ(E) = f/g at r0⁻ by integration.
inline ProjectiveRatio interior_ratio(const CutoffPotential& p, const AngularChannel& ch, const EnergyPoint& e,
                                      int n_steps = kDefaultSteps) {
  return ProjectiveRatio::from_ray(interior_ray_ode(p, ch, e, n_steps));
}

/// Exact regular (f, g) at r0 for the square well V = -λ, any energy.
/// Overall positive factors are dropped, so signs stay continuous in λ and E.
inline Ray square_well_ray(double lambda, double r0, const AngularChannel& ch, const EnergyPoint& e) {
  detail::require_positive_kappa(ch, "square_well_ray");
  const int kappa = ch.kappa();
  const double a = e.plus_mass() + lambda;
  const double b = e.minus_mass() + lambda;
  const double z = a * b * r0 * r0;
  using special::BesselOrder;
  return {-a * r0 * special::reduced_j_scaled(BesselOrder(kappa), z),
          special::reduced_j_scaled(BesselOrder(kappa - 1), z)};
}

/// A_κ(±M) for the square well from the closed-form Bessel ratios.
///
/// Branch structure at +M (p² = λ(λ + 2M)):
///   λ ≥ 0:          -√((2M+λ)/λ) J_{κ+1/2}(p₁r0)/J_{κ-1/2}(p₁r0)
///   -2M < λ < 0:    -√((2M-|λ|)/|λ|) I_{κ+1/2}(p₂r0)/I_{κ-1/2}(p₂r0)
///   λ ≤ -2M:        +√((|λ|-2M)/|λ|) J_{κ+1/2}(p₃r0)/J_{κ-1/2}(p₃r0)
/// and mirrored at -M (p² = λ(λ - 2M)). The reduced-function form used here
/// is analytic across λ ∈ {0, ±2M}, so the branch edges need no special case.
inline ProjectiveRatio closed_form_threshold_ratio(double lambda, PhysicalScale scale, double r0,
                                                   const AngularChannel& ch, Threshold threshold) {
  if (!(r0 > 0.0)) throw std::invalid_argument("closed_form_threshold_ratio: r0 must be positive");
  return ProjectiveRatio::from_ray(square_well_ray(lambda, r0, ch, EnergyPoint::at_threshold(threshold, scale)));
}

enum class InteriorMethod { automatic, ode, closed_form };

/// Interior ray as a function of energy for a fixed potential and channel.
/// `automatic` uses the exact square-well solution for single-segment
/// potentials and integration otherwise.
class InteriorModel {
 public:
  InteriorModel(CutoffPotential p, AngularChannel ch, PhysicalScale scale,
                InteriorMethod method = InteriorMethod::automatic, int n_steps = kDefaultSteps)
      : potential_(std::move(p)), channel_(ch), scale_(scale), method_(method), n_steps_(n_steps) {
    detail::require_positive_kappa(ch, "InteriorModel");
    detail::require_steps(n_steps);
    if (method_ == InteriorMethod::closed_form && !potential_.square_well_depth()) {
      throw std::invalid_argument("InteriorModel: closed form needs a single-segment potential");
    }
  }

  bool uses_closed_form() const noexcept {
    return method_ != InteriorMethod::ode && potential_.square_well_depth().has_value();
  }

  Ray ray(const EnergyPoint& e) const {
    if (uses_closed_form()) return square_well_ray(*potential_.square_well_depth(), r0(), channel_, e);
    return interior_ray_ode(potential_, channel_, e, n_steps_);
  }
  Ray ray(double energy) const { return ray(EnergyPoint(energy, scale_)); }
  ProjectiveRatio ratio(double energy) const { return ProjectiveRatio::from_ray(ray(energy)); }

  InteriorModel with_potential(CutoffPotential p) const {
    return InteriorModel(std::move(p), channel_, scale_, method_, n_steps_);
  }

  const CutoffPotential& potential() const noexcept { return potential_; }
  const AngularChannel& channel() const noexcept { return channel_; }
  PhysicalScale scale() const noexcept { return scale_; }
  InteriorMethod method() const noexcept { return method_; }
  int n_steps() const noexcept { return n_steps_; }
  double r0() const noexcept { return potential_.cutoff_radius(); }

 private:
  CutoffPotential potential_;
  AngularChannel channel_;
  PhysicalScale scale_;
  InteriorMethod method_;
  int n_steps_;
};

}  // namespace dirac
