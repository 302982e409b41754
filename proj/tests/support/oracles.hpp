#pragma once

// Independent reference computations for the tests. They use the C++17
// special math functions and plain bisection, never the library's own
// Bessel code or matching logic.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "dirac/dirac.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// Bisection on a sign change of fn over [lo, hi].
inline double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol = 1e-13) {
  double flo = fn(lo);
  for (int it = 0; it < 300 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// First positive root of tan x = x, from sin x - x cos x on (π, 3π/2).
inline double first_tan_root() {
  return bisect([](double x) { return std::sin(x) - x * std::cos(x); }, kPi + 1e-9, 1.5 * kPi - 1e-9, 1e-15);
}

/// A_κ(±M) of the square well V = -λ from the piecewise Bessel-ratio forms
/// A = -(a/p) J_{κ+1/2}(pr0)/J_{κ-1/2}(pr0) (I for p² < 0), a = λ + M ± M,
/// p² = λ(λ ± 2M); returned as (f0, g0) up to a common factor. κ ≥ 1.
inline dirac::Ray branch_threshold_ray(double lambda, double m, double r0, int kappa, int sign) {
  const double a = sign > 0 ? lambda + 2.0 * m : lambda;
  const double p2 = lambda * (sign > 0 ? lambda + 2.0 * m : lambda - 2.0 * m);
  if (p2 == 0.0) return {-a * r0 / (2.0 * kappa + 1.0), 1.0};
  const double p = std::sqrt(std::abs(p2));
  if (p2 > 0.0) return {-a / p * std::cyl_bessel_j(kappa + 0.5, p * r0), std::cyl_bessel_j(kappa - 0.5, p * r0)};
  return {-a / p * std::cyl_bessel_i(kappa + 0.5, p * r0), std::cyl_bessel_i(kappa - 0.5, p * r0)};
}

/// Matching determinant of the square well at |E| < M from std Bessel
/// functions: interior f/g = -(a/p) j_κ(pr0)/j_{κ-1}(pr0) (or the i_n
/// continuation), exterior f/g = τ k_κ(τr0) / ((M - E) k_{κ-1}(τr0)).
inline double bound_mismatch(double lambda, double m, double r0, int kappa, double energy) {
  const double a = energy + m + lambda;
  const double b = energy - m + lambda;
  const double p2 = a * b;
  double fi = 0.0, gi = 0.0;
  if (p2 > 0.0) {
    const double p = std::sqrt(p2);
    fi = -a / p * std::sph_bessel(kappa, p * r0);
    gi = std::sph_bessel(kappa - 1, p * r0);
  } else if (p2 < 0.0) {
    const double p = std::sqrt(-p2);
    const double x = p * r0;
    fi = -a / p * std::cyl_bessel_i(kappa + 0.5, x);
    gi = std::cyl_bessel_i(kappa - 0.5, x);
  } else {
    fi = -a * r0 / (2.0 * kappa + 1.0);
    gi = 1.0;
  }
  const double tau = std::sqrt((m - energy) * (m + energy));
  const double fo = tau * std::cyl_bessel_k(kappa + 0.5, tau * r0);
  const double go = (m - energy) * std::cyl_bessel_k(kappa - 0.5, tau * r0);
  const double ni = std::hypot(fi, gi), no = std::hypot(fo, go);
  return (fi * go - gi * fo) / (ni * no);
}

/// Bound energies from a fine scan of bound_mismatch, each sign change
/// bisected and kept only if D actually vanishes there.
inline std::vector<double> square_well_bound_energies(double lambda, double m, double r0, int kappa, int n = 20000) {
  std::vector<double> out;
  const double lo = -m + 1e-9, hi = m - 1e-9;
  double e_prev = lo, d_prev = bound_mismatch(lambda, m, r0, kappa, lo);
  for (int i = 1; i <= n; ++i) {
    const double e = lo + (hi - lo) * i / n;
    const double d = bound_mismatch(lambda, m, r0, kappa, e);
    if ((d > 0.0) != (d_prev > 0.0)) {
      const double root = bisect([&](double x) { return bound_mismatch(lambda, m, r0, kappa, x); }, e_prev, e, 1e-14);
      if (std::abs(bound_mismatch(lambda, m, r0, kappa, root)) < 1e-6) out.push_back(root);
    }
    e_prev = e;
    d_prev = d;
  }
  return out;
}

/// Direct integration of channel κ < 0 at r0, without the f ↔ g mirror:
/// regular start f ~ r^{|κ|}, g ~ (E - V - M) r^{|κ|+1}/(2|κ|+1).
inline dirac::Ray negative_kappa_ray(const dirac::CutoffPotential& p, int kappa, const dirac::EnergyPoint& e,
                                     int n_steps = 4096) {
  const int n = -kappa;
  const double r_eps = p.cutoff_radius() * 1e-6;
  const double b = e.minus_mass() - p(0.0);
  const dirac::Ray start{std::pow(r_eps, n), b * std::pow(r_eps, n + 1) / (2.0 * n + 1.0)};
  return dirac::detail::propagate(p, kappa, e, r_eps, start, n_steps, dirac::detail::NoSamples{});
}

/// Sign changes of j_n(p r) for r in (0, r0), by dense sampling.
inline int sph_bessel_zeros_below(int n, double x_max) {
  int count = 0;
  const int samples = 20000;
  double prev = std::sph_bessel(n, x_max * 1e-6);
  for (int i = 1; i < samples; ++i) {
    const double v = std::sph_bessel(n, x_max * i / samples);
    if ((v > 0.0) != (prev > 0.0) && v != 0.0) ++count;
    if (v != 0.0) prev = v;
  }
  return count;
}

/// Hand-rolled generators over a fixed-seed engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  int kappa(int max_abs, bool allow_negative) {
    const int k = integer(1, max_abs);
    return allow_negative && integer(0, 1) == 1 ? -k : k;
  }
  dirac::CutoffPotential potential(int max_segments = 4, double max_depth = 8.0) {
    const int n = integer(1, max_segments);
    std::vector<dirac::Segment> segs;
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
      r += uniform(0.1, 0.8);
      segs.push_back({r, uniform(-max_depth, max_depth)});
    }
    return dirac::CutoffPotential(std::move(segs));
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
