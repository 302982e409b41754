#pragma once

/// \file special_functions.hpp
///
/// Spherical Bessel functions of half-integer order: the regular j_n and
/// irregular y_n, the modified pair i_n and k_n, and the reduced entire
/// function j_n(√z)/√z^n that continues j_n onto imaginary arguments.
///
/// Normalizations follow the usual spherical conventions:
///   j_0 = sin x / x,  y_0 = -cos x / x,  i_0 = sinh x / x,
///   k_0 = (π/2) e^{-x} / x.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirac::special {

/// Integer n labelling the half-integer Bessel order n + 1/2.
class BesselOrder {
 public:
  constexpr explicit BesselOrder(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("BesselOrder: n must be non-negative");
  }
  constexpr int value() const noexcept { return n_; }

 private:
  int n_;
};

/// m!! for odd m >= -1, with (-1)!! = 1.
inline double odd_double_factorial(int m) {
  if (m < -1 || (m >= 0 && m % 2 == 0)) {
    throw std::invalid_argument("odd_double_factorial: argument must be odd and >= -1");
  }
  double r = 1.0;
  for (int k = m; k > 1; k -= 2) r *= k;
  return r;
}

namespace detail {

inline void require_positive_finite(double x, const char* who) {
  if (std::isnan(x)) throw std::invalid_argument(std::string(who) + ": NaN argument");
  if (!(x > 0.0)) throw std::domain_error(std::string(who) + ": argument must be positive");
}

// Σ_k (-z/2)^k / (k! (2n+1)(2n+3)...(2n+2k+1)) = j_n(√z)/√z^n.
inline double reduced_series(int n, double z) {
  double term = 1.0 / odd_double_factorial(2 * n + 1);
  double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= (-0.5 * z) / ((k + 1.0) * (2.0 * n + 2.0 * k + 3.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

inline double j0_closed(double x) { return std::sin(x) / x; }
inline double j1_closed(double x) { return std::sin(x) / (x * x) - std::cos(x) / x; }
inline double j2_closed(double x) {
  return (3.0 / (x * x) - 1.0) * std::sin(x) / x - 3.0 * std::cos(x) / (x * x);
}

// Miller's downward recurrence, normalized against whichever of j_0, j_1 is
// far from a zero.
inline double j_downward(int n, double x) {
  const int start = n + 24 + static_cast<int>(x);
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[start] = 1e-300;
  for (int m = start; m >= 1; --m) {
    j[m - 1] = (2.0 * m + 1.0) / x * j[m] - j[m + 1];
    if (std::abs(j[m - 1]) > 1e250) {
      for (int i = m - 1; i <= start; ++i) j[i] *= 1e-250;
    }
  }
  if (std::abs(std::sin(x)) > 0.5) return j[n] * (j0_closed(x) / j[0]);
  return j[n] * (j1_closed(x) / j[1]);
}

inline double j_upward(int n, double x) {
  double prev = j0_closed(x);
  double cur = j1_closed(x);
  for (int m = 1; m < n; ++m) {
    const double next = (2.0 * m + 1.0) / x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline double sph_j(int n, double x) {
  // Below 1 the closed forms used to normalize the recurrence cancel.
  if (x < 1.0) return std::pow(x, n) * reduced_series(n, x * x);
  if (n == 0) return j0_closed(x);
  if (x < n + 1.0) return j_downward(n, x);
  if (n == 1) return j1_closed(x);
  if (n == 2) return j2_closed(x);
  return j_upward(n, x);
}

inline double sph_y(int n, double x) {
  double prev = -std::cos(x) / x;
  if (n == 0) return prev;
  double cur = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int m = 1; m < n; ++m) {
    const double next = (2.0 * m + 1.0) / x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// e^{-x} i_n(x) by downward recurrence normalized to e^{-x} i_0(x).
inline double sph_i_scaled(int n, double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    const double lead = std::pow(x, n) / odd_double_factorial(2 * n + 1);
    return std::exp(-x) * lead *
           (1.0 + x2 / (2.0 * (2 * n + 3)) + x2 * x2 / (8.0 * (2 * n + 3) * (2 * n + 5)));
  }
  const double i0_scaled = -std::expm1(-2.0 * x) / (2.0 * x);
  if (n == 0) return i0_scaled;
  const int start = n + 24 + static_cast<int>(x);
  std::vector<double> v(static_cast<std::size_t>(start) + 2, 0.0);
  v[start] = 1e-300;
  for (int m = start; m >= 1; --m) {
    v[m - 1] = v[m + 1] + (2.0 * m + 1.0) / x * v[m];
    if (v[m - 1] > 1e250) {
      for (int i = m - 1; i <= start; ++i) v[i] *= 1e-250;
    }
  }
  return v[n] * (i0_scaled / v[0]);
}

// x^{n+1} e^{x} k_n(x) · 2/π = Σ_m (n+m)! / (m! (n-m)!) x^{n-m} / 2^m.
inline double k_polynomial(int n, double x) {
  double sum = 0.0;
  double coeff = 1.0;  // (n+m)!/(m!(n-m)!)/2^m at m = 0
  for (int m = 0; m <= n; ++m) {
    sum += coeff * std::pow(x, n - m);
    coeff *= static_cast<double>((n + m + 1) * (n - m)) / (2.0 * (m + 1));
  }
  return sum;
}

}  // namespace detail

/// Regular spherical Bessel function j_n(x) for x > 0.
inline double spherical_j(BesselOrder n, double x) {
  detail::require_positive_finite(x, "spherical_j");
  return detail::sph_j(n.value(), x);
}

/// Irregular spherical Bessel function y_n(x); singular at the origin.
inline double spherical_y(BesselOrder n, double x) {
  detail::require_positive_finite(x, "spherical_y");
  return detail::sph_y(n.value(), x);
}

/// Exponentially scaled modified function e^{-x} i_n(x). Never overflows.
inline double modified_i_scaled(BesselOrder n, double x) {
  detail::require_positive_finite(x, "modified_i_scaled");
  return detail::sph_i_scaled(n.value(), x);
}

/// Modified spherical Bessel function i_n(x) = i^{-n} j_n(ix).
/// Throws std::overflow_error when the result is not representable.
inline double modified_i(BesselOrder n, double x) {
  detail::require_positive_finite(x, "modified_i");
  const double scaled = detail::sph_i_scaled(n.value(), x);
  const double log_value = x + std::log(scaled);
  if (log_value > std::log(std::numeric_limits<double>::max())) {
    throw std::overflow_error("modified_i: result overflows double at x = " + std::to_string(x));
  }
  return scaled * std::exp(x);
}

/// Decaying modified function k_n(x) = (π/2) e^{-x} P_n(x) / x^{n+1}.
/// Underflows to zero for large x.
inline double modified_k(BesselOrder n, double x) {
  detail::require_positive_finite(x, "modified_k");
  const int m = n.value();
  return std::numbers::pi / 2.0 * std::exp(-x) * detail::k_polynomial(m, x) / std::pow(x, m + 1);
}

/// e^{x} k_n(x).
inline double modified_k_scaled(BesselOrder n, double x) {
  detail::require_positive_finite(x, "modified_k_scaled");
  const int m = n.value();
  return std::numbers::pi / 2.0 * detail::k_polynomial(m, x) / std::pow(x, m + 1);
}

/// Reduced regular function R_n(z) = j_n(√z)/√z^n, entire in z.
///
/// For z < 0 this is i_n(y)/y^n with y = √-z. The result is multiplied by
/// e^{-√max(-z,0)}, a positive factor that is continuous in z and identical
/// for every n at the same z, so ratios R_m(z)/R_n(z) are unaffected.
inline double reduced_j_scaled(BesselOrder order, double z) {
  if (std::isnan(z)) throw std::invalid_argument("reduced_j_scaled: NaN argument");
  const int n = order.value();
  if (std::abs(z) <= 1.0) {
    const double series = detail::reduced_series(n, z);
    return z < 0.0 ? series * std::exp(-std::sqrt(-z)) : series;
  }
  if (z > 0.0) {
    const double x = std::sqrt(z);
    return detail::sph_j(n, x) / std::pow(x, n);
  }
  const double y = std::sqrt(-z);
  return detail::sph_i_scaled(n, y) / std::pow(y, n);
}

/// First `count` positive zeros of j_n, located by bisection on sign changes
/// over unit-length brackets.
inline std::vector<double> spherical_j_zeros(BesselOrder n, int count) {
  std::vector<double> zeros;
  double lo = std::max(0.5, static_cast<double>(n.value()));
  double f_lo = detail::sph_j(n.value(), lo);
  while (static_cast<int>(zeros.size()) < count) {
    const double hi = lo + 1.0;
    const double f_hi = detail::sph_j(n.value(), hi);
    if (f_lo == 0.0) {
      zeros.push_back(lo);
    } else if (std::signbit(f_lo) != std::signbit(f_hi)) {
      double a = lo, b = hi, fa = f_lo;
      for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = detail::sph_j(n.value(), mid);
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    lo = hi;
    f_lo = f_hi;
  }
  return zeros;
}

}  // namespace dirac::special
