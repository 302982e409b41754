#pragma once

/// \file phase_shift.hpp
///
/// Scattering phase shifts δ_κ(E), |E| > M, and their threshold limits.
///
/// Matching the interior ray (f, g) at r0 to cos δ·R - sin δ·Y, with R and Y
/// the regular and irregular free pair, gives
///     tan δ = (f G_R - g F_R) / (f G_Y - g F_Y).
/// The vector (f G_R - g F_R, f G_Y - g F_Y) is a nonzero multiple of
/// (sin δ, cos δ) whose factor keeps one sign on each side of threshold, so
/// its polar angle is continuous mod 2π in E and V. Curves are unwrapped on
/// that angle rather than on δ mod π, which cannot hide a narrow resonance
/// (a π step) between two grid points.
///
/// Threshold limits are computed twice: by following δ(E) down to k → 0,
/// and by counting crossings of A_κ(M) through ∞ and of A_κ(-M) through ρ₁
/// along a coupling path from V = 0.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac/errors.hpp"
#include "dirac/exterior.hpp"
#include "dirac/interior.hpp"
#include "dirac/potential.hpp"
#include "dirac/projective.hpp"
#include "dirac/special_functions.hpp"

namespace dirac {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// A point (sin δ, cos δ) on the unit circle; δ is defined mod π.
struct PhaseAngle {
  double sin = 0.0;
  double cos = 1.0;

  /// δ reduced to (-π/2, π/2].
  double mod_pi() const noexcept {
    double d = std::atan2(sin, cos);
    if (d > kHalfPi) d -= kPi;
    if (d <= -kHalfPi) d += kPi;
    return d;
  }
  double tan() const noexcept { return sin / cos; }
};

/// Spacing of the threshold lattice: π/2 for |κ| = 1, π otherwise.
inline double lattice_unit(const AngularChannel& ch) noexcept { return ch.magnitude() == 1 ? kHalfPi : kPi; }

/// Nearest lattice point of δ, in units of π/2.
inline int snap_half_pi_units(double delta, const AngularChannel& ch) {
  if (!std::isfinite(delta)) throw std::invalid_argument("snap_half_pi_units: non-finite phase");
  if (ch.magnitude() == 1) return static_cast<int>(std::lround(delta / kHalfPi));
  return 2 * static_cast<int>(std::lround(delta / kPi));
}

/// sin²δ on the lattice: 1 for odd multiples of π/2, else 0.
inline double lattice_sin2(int half_pi_units) noexcept { return (half_pi_units % 2 != 0) ? 1.0 : 0.0; }

namespace detail {

/// Unnormalized (sin δ, cos δ) for κ ≥ 1.
inline PhaseAngle matching_vector(const Ray& interior, const AngularChannel& ch, const EnergyPoint& e, double r0) {
  const Ray in = interior.unit();
  const auto pair = scattering_pair(ch, e, r0);
  return {cross(in, pair.regular), cross(in, pair.irregular)};
}

inline double matching_angle(const Ray& interior, const AngularChannel& ch, const EnergyPoint& e, double r0) {
  const auto v = matching_vector(interior, ch, e, r0);
  return std::atan2(v.sin, v.cos);
}

/// x reduced to (-π, π].
inline double wrap_two_pi(double x) noexcept {
  x = std::remainder(x, 2.0 * kPi);
  if (x <= -kPi) x += 2.0 * kPi;
  return x;
}

/// An angle followed continuously along an ordered parameter. Steps whose
/// wrapped increment reaches π/4 are bisected.
struct AnglePath {
  std::vector<double> u;
  std::vector<double> theta;
  int max_depth = 60;
  std::string what = "phase path";

  template <class AngleAt>
  void advance(double u1, AngleAt&& angle_at) {
    step(u1, angle_at(u1), angle_at, 0);
  }

 private:
  template <class AngleAt>
  void step(double u1, double raw1, AngleAt& angle_at, int depth) {
    const double d = wrap_two_pi(raw1 - theta.back());
    if (std::abs(d) < 0.25 * kPi) {
      u.push_back(u1);
      theta.push_back(theta.back() + d);
      return;
    }
    if (depth >= max_depth) throw RefinementError(what + ": unresolved phase jump", u.back(), u1);
    const double um = 0.5 * (u.back() + u1);
    step(um, angle_at(um), angle_at, depth + 1);
    step(u1, raw1, angle_at, depth + 1);
  }
};

/// Value at x = 0 of the quadratic through three points.
inline double extrapolate_to_zero(const double* x, const double* y) noexcept {
  const double x0 = x[0], x1 = x[1], x2 = x[2];
  return y[0] * x1 * x2 / ((x0 - x1) * (x0 - x2)) + y[1] * x0 * x2 / ((x1 - x0) * (x1 - x2)) +
         y[2] * x0 * x1 / ((x2 - x0) * (x2 - x1));
}

}  // namespace detail

/// tan δ from the matching ratio, as (sin δ, cos δ) up to a common sign.
/// κ < 0 is served through δ_{-κ}(E; A) = δ_κ(-E; 1/A).
inline PhaseAngle tan_delta(const ProjectiveRatio& a, const AngularChannel& ch, const EnergyPoint& e,
                            PhysicalScale scale, double r0) {
  if (!e.is_scattering()) throw std::domain_error("tan_delta: requires |E| > M");
  if (e.mass() != scale.mass()) throw std::invalid_argument("tan_delta: energy and scale disagree on M");
  if (!(r0 > 0.0)) throw std::invalid_argument("tan_delta: r0 must be positive");
  if (!ch.positive()) return tan_delta(a.inverted(), ch.mirrored(), e.negated(), scale, r0);
  const auto v = detail::matching_vector(a.ray(), ch, e, r0);
  const double n = std::hypot(v.sin, v.cos);
  return {v.sin / n, v.cos / n};
}

/// Threshold approximations for tan δ at 0 < k r0 < 0.1, κ ≥ 1:
///
///   E > M:  -π (kr0)^{2κ-1}/((2κ-1)!!(2κ-3)!!) · (A + 2Mr0/(2κ+1)) / (A + 2M(2κ-1)/(k² r0))
///   E < -M: -π (kr0)^{2κ-1}/((2κ-1)!!(2κ-3)!!) · (A - k²r0/(2M(2κ+1)))
///                                              / (A - (2κ-1)/(2Mr0)·[1 - k²r0²/((2κ-1)(2κ-3))])
///
/// evaluated as written, with (-1)!! = 1 and 2κ-3 = -1 at κ = 1.
inline double threshold_tan_asymptotic(const ProjectiveRatio& a, const AngularChannel& ch, const EnergyPoint& e,
                                       PhysicalScale scale, double r0) {
  detail::require_positive_kappa(ch, "threshold_tan_asymptotic");
  if (!e.is_scattering()) throw std::domain_error("threshold_tan_asymptotic: requires |E| > M");
  const double k = e.momentum();
  const double kr = k * r0;
  if (!(kr > 0.0 && kr < 0.1)) throw std::domain_error("threshold_tan_asymptotic: requires 0 < k r0 < 0.1");
  const int kappa = ch.kappa();
  const double m = scale.mass();
  const double prefactor = -kPi * std::pow(kr, 2 * kappa - 1) /
                           (special::odd_double_factorial(2 * kappa - 1) * special::odd_double_factorial(2 * kappa - 3));
  // (A + c)/(A + d) with A = f0/g0, written projectively so A = ∞ gives 1.
  double c = 0.0, d = 0.0;
  if (e.energy() > 0.0) {
    c = 2.0 * m * r0 / (2.0 * kappa + 1.0);
    d = 2.0 * m * (2.0 * kappa - 1.0) / (k * k * r0);
  } else {
    c = -k * k * r0 / (2.0 * m * (2.0 * kappa + 1.0));
    d = -(2.0 * kappa - 1.0) / (2.0 * m * r0) * (1.0 - kr * kr / ((2.0 * kappa - 1.0) * (2.0 * kappa - 3.0)));
  }
  return prefactor * (a.f0() + c * a.g0()) / (a.f0() + d * a.g0());
}

/// Energy grid for delta_curve, in units of k r0.
struct DeltaGridSpec {
  double k_start_r0 = 40.0;
  double k_end_r0 = 1e-4;
  /// The descent continues by decades below k_end_r0 until the
  /// extrapolated limit settles on the lattice, but not past this.
  double k_floor_r0 = 1e-9;
  int points_per_decade = 12;
  /// Steps of the coupling continuation V → sV at the starting energy.
  int coupling_points = 16;
  int max_refinement_depth = 60;
  double lattice_tol = 1e-6 * kPi;

  void validate() const {
    if (!(k_start_r0 >= 40.0)) throw std::invalid_argument("DeltaGridSpec: k_start_r0 must be >= 40");
    if (!(k_end_r0 > 0.0 && k_end_r0 < k_start_r0)) throw std::invalid_argument("DeltaGridSpec: bad k_end_r0");
    if (!(k_floor_r0 > 0.0 && k_floor_r0 <= k_end_r0)) throw std::invalid_argument("DeltaGridSpec: bad k_floor_r0");
    if (points_per_decade < 2 || coupling_points < 2 || max_refinement_depth < 1) {
      throw std::invalid_argument("DeltaGridSpec: grid counts too small");
    }
    if (!(lattice_tol > 0.0)) throw std::invalid_argument("DeltaGridSpec: lattice_tol must be positive");
  }
};

/// δ(E) from high energy down to one threshold.
struct PhaseShiftRecord {
  Threshold threshold = Threshold::plus;
  /// Ordered from the starting energy toward the threshold.
  std::vector<EnergyPoint> energies;
  std::vector<double> momenta;
  /// Unwrapped, radians.
  std::vector<double> delta;
  /// Extrapolated k → 0 value (not snapped).
  double threshold_limit = 0.0;
  int threshold_in_half_pi_units = 0;
  bool half_bound_flag = false;
  /// The extrapolation landed within lattice_tol of the lattice.
  bool converged = false;

  double lattice_value() const noexcept { return threshold_in_half_pi_units * kHalfPi; }
};

/// δ_κ(E) toward the threshold E = ±M.
///
/// The branch is fixed at the first grid energy by continuing δ in the
/// coupling s of sV from s = 0, where δ = 0; for strong wells δ at high
/// energy is near λ r0, not near 0. The curve is then followed down a
/// geometric k grid and the limit extrapolated from the last three points.
inline PhaseShiftRecord delta_curve(const CutoffPotential& p, const AngularChannel& ch, PhysicalScale scale,
                                    Threshold threshold, const DeltaGridSpec& spec = {},
                                    InteriorMethod method = InteriorMethod::automatic, int n_steps = kDefaultSteps) {
  if (!ch.positive()) {
    auto rec = delta_curve(reflect(p), ch.mirrored(), scale, opposite(threshold), spec, method, n_steps);
    rec.threshold = threshold;
    for (auto& e : rec.energies) e = e.negated();
    return rec;
  }
  spec.validate();
  const InteriorModel model(p, ch, scale, method, n_steps);
  const double r0 = model.r0();
  const auto energy_at = [&](double u) { return EnergyPoint::from_momentum(threshold, std::exp(u) / r0, scale); };

  const double u_start = std::log(spec.k_start_r0);
  const EnergyPoint e_start = energy_at(u_start);

  detail::AnglePath coupling{{0.0}, {detail::matching_angle(model.with_potential(p.scaled(0.0)).ray(e_start), ch, e_start, r0)},
                             spec.max_refinement_depth, "delta_curve coupling continuation (s)"};
  const double offset = kPi * std::round(coupling.theta.front() / kPi);
  const auto coupling_angle = [&](double s) {
    return detail::matching_angle(model.with_potential(p.scaled(s)).ray(e_start), ch, e_start, r0);
  };
  for (int i = 1; i <= spec.coupling_points; ++i) {
    coupling.advance(static_cast<double>(i) / spec.coupling_points, coupling_angle);
  }

  detail::AnglePath path{{u_start}, {coupling.theta.back()}, spec.max_refinement_depth, "delta_curve (ln k r0)"};
  const auto energy_angle = [&](double u) {
    const EnergyPoint e = energy_at(u);
    return detail::matching_angle(model.ray(e), ch, e, r0);
  };
  const double du = std::log(10.0) / spec.points_per_decade;
  const auto descend_to = [&](double u_stop) {
    const double u_from = path.u.back();
    const int n = std::max(1, static_cast<int>(std::ceil((u_from - u_stop) / du - 1e-9)));
    for (int i = 1; i <= n; ++i) path.advance(u_from + (u_stop - u_from) * i / n, energy_angle);
  };

  PhaseShiftRecord rec;
  rec.threshold = threshold;
  const double unit = lattice_unit(ch);
  const auto estimate = [&](std::size_t end) {
    double ks[3], ds[3];
    for (int j = 0; j < 3; ++j) {
      ks[j] = std::exp(path.u[end - 3 + j]) / r0;
      ds[j] = path.theta[end - 3 + j] - offset;
    }
    return detail::extrapolate_to_zero(ks, ds);
  };

  double u_stop = std::log(spec.k_end_r0);
  const double u_floor = std::log(spec.k_floor_r0);
  descend_to(u_stop);
  for (;;) {
    const std::size_t n = path.u.size();
    const double now = estimate(n);
    const double before = estimate(n - 1);
    const double lattice = unit * std::round(now / unit);
    rec.threshold_limit = now;
    rec.converged = std::abs(now - lattice) <= spec.lattice_tol && std::abs(before - lattice) <= spec.lattice_tol;
    if (rec.converged || u_stop <= u_floor + 1e-12) break;
    u_stop = std::max(u_floor, u_stop - std::log(10.0));
    descend_to(u_stop);
  }

  rec.energies.reserve(path.u.size());
  rec.momenta.reserve(path.u.size());
  rec.delta.reserve(path.u.size());
  for (std::size_t i = 0; i < path.u.size(); ++i) {
    rec.energies.push_back(energy_at(path.u[i]));
    rec.momenta.push_back(std::exp(path.u[i]) / r0);
    rec.delta.push_back(path.theta[i] - offset);
  }
  rec.threshold_in_half_pi_units = snap_half_pi_units(rec.threshold_limit, ch);
  rec.half_bound_flag = ch.magnitude() == 1 && (rec.threshold_in_half_pi_units % 2 != 0);
  return rec;
}

// ---------------------------------------------------------------------------
// Jump events along a coupling path.

enum class JumpKind { a_plus_through_infinity, a_minus_through_rho1, half_bound_touch };

inline const char* to_string(JumpKind k) noexcept {
  switch (k) {
    case JumpKind::a_plus_through_infinity: return "A_plus_through_infinity";
    case JumpKind::a_minus_through_rho1: return "A_minus_through_rho1";
    case JumpKind::half_bound_touch: return "half_bound_touch";
  }
  return "unknown";
}

/// A crossing of A_κ(M) through ∞ or of A_κ(-M) through ρ₁ at parameter
/// lambda_star. direction is the sign of the change of A as the parameter
/// increases (+1: A increases through the critical value). For κ = 1 the
/// ρ₁ crossing passes through a half-bound state and has kind half_bound_touch.
/// For κ < 0 the kind and direction describe the |κ| channel in -V, with
/// direction taken along increasing physical λ, and `threshold` is the
/// threshold of the -κ channel where δ jumps.
struct JumpEvent {
  double lambda_star = 0.0;
  JumpKind kind = JumpKind::a_plus_through_infinity;
  int direction = 0;
  Threshold threshold = Threshold::plus;

  /// Change of δ at the event's threshold when the parameter increases past it.
  double jump() const noexcept {
    return kind == JumpKind::a_plus_through_infinity ? -direction * kPi : direction * kPi;
  }
  friend bool operator==(const JumpEvent&, const JumpEvent&) = default;
};

/// Threshold rays of a one-parameter family, continuous in the parameter.
using ThresholdRays = std::function<Ray(double parameter, Threshold)>;

struct EventScanOptions {
  double step = 0.01;
  /// Bisection stops below this bracket width (absolute, scaled by max(1, |u|)).
  double tolerance = 1e-12;
};

/// All crossings on [lo, hi], sorted by parameter. Sampling at `step`
/// brackets sign changes of g(M) and of f(-M) - ρ₁ g(-M), which are then
/// bisected. Two roots of the same function within one cell are missed.
inline std::vector<JumpEvent> scan_threshold_events(const ThresholdRays& rays, const AngularChannel& ch,
                                                    const ThresholdConstants& tc, double lo, double hi,
                                                    const EventScanOptions& opt = {}) {
  detail::require_positive_kappa(ch, "scan_threshold_events");
  if (!(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("scan_threshold_events: need finite lo <= hi");
  }
  if (!(opt.step > 0.0)) throw std::invalid_argument("scan_threshold_events: step must be positive");
  std::vector<JumpEvent> events;
  if (hi == lo) return events;
  const int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / opt.step - 1e-9)));

  for (const Threshold t : {Threshold::plus, Threshold::minus}) {
    const auto value = [&](double u) {
      const Ray r = rays(u, t);
      return t == Threshold::plus ? r.g : r.f - tc.rho1 * r.g;
    };
    // Quantity that increases when A increases through the critical value.
    const auto monitor = [&](double u) {
      const Ray r = rays(u, t);
      return t == Threshold::plus ? -r.g / r.f : (r.f - tc.rho1 * r.g) / r.g;
    };
    const auto positive = [](double v) { return v >= 0.0; };
    double u_prev = lo;
    double v_prev = value(lo);
    for (int i = 1; i <= cells; ++i) {
      const double u = (i == cells) ? hi : lo + (hi - lo) * i / cells;
      const double v = value(u);
      if (positive(v) != positive(v_prev)) {
        double a = u_prev, b = u;
        const bool pa = positive(v_prev);
        while (b - a > opt.tolerance * std::max(1.0, std::abs(a))) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          (positive(value(mid)) == pa ? a : b) = mid;
        }
        const double star = 0.5 * (a + b);
        const double eta = std::max(1e-7 * (b - a + opt.step), 1e-9 * std::max(1.0, std::abs(star)));
        const double change = monitor(star + eta) - monitor(star - eta);
        JumpEvent ev;
        ev.lambda_star = star;
        ev.direction = change >= 0.0 ? +1 : -1;
        ev.threshold = t;
        if (t == Threshold::plus) {
          ev.kind = JumpKind::a_plus_through_infinity;
        } else {
          ev.kind = ch.kappa() == 1 ? JumpKind::half_bound_touch : JumpKind::a_minus_through_rho1;
        }
        events.push_back(ev);
      }
      u_prev = u;
      v_prev = v;
    }
  }
  std::sort(events.begin(), events.end(),
            [](const JumpEvent& x, const JumpEvent& y) { return x.lambda_star < y.lambda_star; });
  return events;
}

/// Threshold limit accumulated from jump events.
struct JumpLedger {
  double value = 0.0;
  int half_pi_units = 0;
  /// The path ends on an event (within the endpoint window).
  bool critical = false;
  /// κ = 1 path ending on A(-M) = ρ₁.
  bool half_bound_flag = false;
  std::vector<JumpEvent> passed;
};

/// Sums the jumps at `threshold` met on the path from parameter 0 to
/// `target`. Events within `window` of the target are endpoint events: the
/// threshold state there belongs to the side where A > 0 (+M) or A > ρ₁
/// (-M), so a full jump counts only when it is positive along the path; at
/// a half-bound touch half the jump counts.
inline JumpLedger accumulate_jumps(std::span<const JumpEvent> events, double target, Threshold threshold,
                                   double window) {
  JumpLedger out;
  const double path_sign = target >= 0.0 ? 1.0 : -1.0;
  const double reach = std::abs(target);
  for (const auto& ev : events) {
    if (ev.threshold != threshold) continue;
    const double x = ev.lambda_star * path_sign;
    if (x <= 0.0 || x > reach + window) continue;
    const double along = ev.jump() * path_sign;
    if (x < reach - window) {
      out.value += along;
      out.passed.push_back(ev);
      continue;
    }
    out.critical = true;
    if (ev.kind == JumpKind::half_bound_touch) {
      out.value += 0.5 * along;
      out.half_bound_flag = true;
      out.passed.push_back(ev);
    } else if (along > 0.0) {
      out.value += along;
      out.passed.push_back(ev);
    }
  }
  out.half_pi_units = static_cast<int>(std::lround(out.value / kHalfPi));
  return out;
}

inline double endpoint_window(double target) noexcept { return 1e-9 * std::max(1.0, std::abs(target)); }

/// δ_κ(±M) for the square well of depth lambda_target from the events met
/// as λ runs from 0.
inline JumpLedger jump_ledger(double lambda_target, const AngularChannel& ch, PhysicalScale scale, double r0,
                              Threshold threshold, const EventScanOptions& opt = {}) {
  if (!std::isfinite(lambda_target)) throw std::invalid_argument("jump_ledger: lambda must be finite");
  if (!ch.positive()) return jump_ledger(-lambda_target, ch.mirrored(), scale, r0, opposite(threshold), opt);
  const auto tc = threshold_constants(scale, r0, ch);
  const ThresholdRays rays = [&](double lambda, Threshold t) {
    return square_well_ray(lambda, r0, ch, EnergyPoint::at_threshold(t, scale));
  };
  const double w = endpoint_window(lambda_target);
  const double lo = std::min(0.0, lambda_target) - (lambda_target < 0.0 ? 2.0 * w : 0.0);
  const double hi = std::max(0.0, lambda_target) + (lambda_target > 0.0 ? 2.0 * w : 0.0);
  const auto events = scan_threshold_events(rays, ch, tc, lo, hi, opt);
  return accumulate_jumps(events, lambda_target, threshold, w);
}

inline double threshold_limit_by_jumps(double lambda_target, const AngularChannel& ch, PhysicalScale scale, double r0,
                                       Threshold threshold) {
  return jump_ledger(lambda_target, ch, scale, r0, threshold).value;
}

/// Jump ledger for a general cutoff potential along V → sV, s ∈ [0, 1].
inline JumpLedger coupling_jump_ledger(const InteriorModel& model, Threshold threshold) {
  const auto& ch = model.channel();
  const auto& p = model.potential();
  const auto tc = threshold_constants(model.scale(), model.r0(), ch);
  const ThresholdRays rays = [&](double s, Threshold t) {
    return model.with_potential(p.scaled(s)).ray(EnergyPoint::at_threshold(t, model.scale()));
  };
  EventScanOptions opt;
  opt.step = std::min(0.01, 0.01 / std::max(1e-300, p.max_abs() * model.r0()));
  const double w = endpoint_window(1.0);
  const auto events = scan_threshold_events(rays, ch, tc, 0.0, 1.0 + 2.0 * w, opt);
  return accumulate_jumps(events, 1.0, threshold, w);
}

}  // namespace dirac
