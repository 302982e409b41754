#pragma once

/// \file sweep.hpp
///
/// Square-well depth sweeps: one full Levinson analysis per grid λ plus the
/// jump events of the whole family.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac/levinson.hpp"
#include "dirac/parallel.hpp"
#include "dirac/phase_shift.hpp"
#include "dirac/potential.hpp"

namespace dirac {

struct SweepRow {
  double lambda = 0.0;
  ProjectiveRatio A_plus = ProjectiveRatio::infinity();
  ProjectiveRatio A_minus = ProjectiveRatio::infinity();
  /// Sign of A just below lambda, used when A is infinite.
  int A_plus_approach = 1;
  int A_minus_approach = 1;
  int delta_plus_half_pi = 0;
  int delta_minus_half_pi = 0;
  /// Extrapolated k → 0 limits before snapping, radians.
  double delta_plus_raw = 0.0;
  double delta_minus_raw = 0.0;
  int N = 0;
  int f_nodes_plus = 0;
  int g_nodes_plus = 0;
  int f_nodes_minus_interior = 0;
  int g_nodes_minus_interior = 0;
  int g_nodes_minus_exterior = 0;
  double eq2_residual = 0.0;
  bool eq3_plus = false;
  bool eq3_minus = false;
  bool modified_c = false;
  bool modified_c_alternate = false;
  /// Continuity and λ-path jump values agree at both thresholds.
  bool methods_agree = false;
  /// The sweep's own event list, accumulated up to lambda, agrees too.
  bool ledger_agrees = false;
  /// An event lies within half a grid step.
  bool near_event = false;

  double delta_plus_over_pi() const noexcept { return delta_plus_half_pi / 2.0; }
  double delta_minus_over_pi() const noexcept { return delta_minus_half_pi / 2.0; }
};

struct SweepOptions {
  LevinsonOptions levinson{};
  EventScanOptions events{};
  unsigned threads = 0;
};

struct SweepResult {
  int kappa = 1;
  double M = 1.0;
  double r0 = 1.0;
  std::vector<SweepRow> rows;
  /// Every event between 0 and the far end of the range, ascending.
  std::vector<JumpEvent> events;

  double max_residual() const noexcept {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.eq2_residual);
    return m;
  }
};

/// Jump events of the square-well family on [lo, hi]; κ < 0 through the
/// mirrored family.
inline std::vector<JumpEvent> square_well_events(const AngularChannel& ch, PhysicalScale scale, double r0, double lo,
                                                 double hi, const EventScanOptions& opt = {}) {
  if (!ch.positive()) {
    auto events = square_well_events(ch.mirrored(), scale, r0, -hi, -lo, opt);
    for (auto& e : events) {
      e.lambda_star = -e.lambda_star;
      e.direction = -e.direction;
      e.threshold = opposite(e.threshold);
    }
    std::reverse(events.begin(), events.end());
    return events;
  }
  const auto tc = threshold_constants(scale, r0, ch);
  const ThresholdRays rays = [&](double lambda, Threshold t) {
    return square_well_ray(lambda, r0, ch, EnergyPoint::at_threshold(t, scale));
  };
  return scan_threshold_events(rays, ch, tc, lo, hi, opt);
}

/// δ(±M) accumulated from events on the path 0 → lambda.
inline double event_ledger_to_threshold_delta(std::span<const JumpEvent> events, double lambda, Threshold threshold) {
  return accumulate_jumps(events, lambda, threshold, endpoint_window(lambda)).value;
}

/// A_κ(±M) of the square well, any κ ≠ 0.
inline ProjectiveRatio square_well_threshold_ratio(double lambda, const AngularChannel& ch, PhysicalScale scale,
                                                   double r0, Threshold t) {
  if (!ch.positive()) return square_well_threshold_ratio(-lambda, ch.mirrored(), scale, r0, opposite(t)).inverted();
  return closed_form_threshold_ratio(lambda, scale, r0, ch, t);
}

inline std::vector<double> sweep_grid(double lambda_min, double lambda_max, double step) {
  if (!std::isfinite(lambda_min) || !std::isfinite(lambda_max) || lambda_max < lambda_min) {
    throw std::invalid_argument("lambda_sweep: need finite lambda_min <= lambda_max");
  }
  if (!(step > 0.0)) throw std::invalid_argument("lambda_sweep: step must be positive");
  const double span = lambda_max - lambda_min;
  const auto n = static_cast<long>(std::floor(span / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (long i = 0; i <= n; ++i) {
    // Rounded to 1e-12 so that -6 + 0.05 i prints as written.
    grid.push_back(std::round((lambda_min + i * step) * 1e12) / 1e12);
  }
  if (lambda_max - grid.back() > 1e-9 * std::max(1.0, std::abs(lambda_max))) grid.push_back(lambda_max);
  return grid;
}

/// One row per grid λ (computed in parallel, stored in λ order) and the
/// family's jump events.
inline SweepResult lambda_sweep(const AngularChannel& ch, PhysicalScale scale, double r0, double lambda_min,
                                double lambda_max, double step, const SweepOptions& opt = {}) {
  if (!(r0 > 0.0)) throw std::invalid_argument("lambda_sweep: r0 must be positive");
  const auto grid = sweep_grid(lambda_min, lambda_max, step);
  SweepResult out;
  out.kappa = ch.kappa();
  out.M = scale.mass();
  out.r0 = r0;
  EventScanOptions eopt = opt.events;
  eopt.step = std::min(eopt.step, step);
  const double w = endpoint_window(std::max(std::abs(lambda_min), std::abs(lambda_max)));
  out.events = square_well_events(ch, scale, r0, std::min(lambda_min, 0.0) - 2.0 * w,
                                  std::max(lambda_max, 0.0) + 2.0 * w, eopt);

  out.rows.resize(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        const double lambda = grid[i];
        const auto a = analyze_levinson(square_well(lambda, r0), ch, scale, opt.levinson);
        SweepRow& row = out.rows[i];
        row.lambda = lambda;
        row.A_plus = a.nodes_plus.a;
        row.A_minus = a.nodes_minus.a;
        const double eta = 1e-7 * std::max(1.0, std::abs(lambda));
        row.A_plus_approach =
            square_well_threshold_ratio(lambda - eta, ch, scale, r0, Threshold::plus).value() >= 0.0 ? 1 : -1;
        row.A_minus_approach =
            square_well_threshold_ratio(lambda - eta, ch, scale, r0, Threshold::minus).value() >= 0.0 ? 1 : -1;
        row.delta_plus_half_pi = a.plus.half_pi_units;
        row.delta_minus_half_pi = a.minus.half_pi_units;
        row.delta_plus_raw = a.plus.curve.threshold_limit;
        row.delta_minus_raw = a.minus.curve.threshold_limit;
        row.N = a.report.N_kappa;
        row.f_nodes_plus = a.nodes_plus.f_total();
        row.g_nodes_plus = a.nodes_plus.g_total();
        row.f_nodes_minus_interior = a.nodes_minus.f_nodes_interior;
        row.g_nodes_minus_interior = a.nodes_minus.g_nodes_interior;
        row.g_nodes_minus_exterior = a.nodes_minus.g_nodes_exterior;
        row.eq2_residual = a.report.residual;
        row.eq3_plus = a.report.eq3_plus_holds;
        row.eq3_minus = a.report.eq3_minus_holds;
        row.modified_c = a.report.modified_c_holds;
        row.modified_c_alternate = a.modified.alternate_holds;
        row.methods_agree = a.methods_agree();
        const double lp = event_ledger_to_threshold_delta(out.events, lambda, Threshold::plus);
        const double lm = event_ledger_to_threshold_delta(out.events, lambda, Threshold::minus);
        row.ledger_agrees = std::lround(lp / kHalfPi) == row.delta_plus_half_pi &&
                            std::lround(lm / kHalfPi) == row.delta_minus_half_pi;
        for (const auto& e : out.events) {
          if (std::abs(e.lambda_star - lambda) < 0.5 * step) row.near_event = true;
        }
      },
      opt.threads);
  return out;
}

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_lambda(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string format_ratio(const ProjectiveRatio& a, int approach) {
  if (a.is_infinite()) return approach >= 0 ? "inf" : "-inf";
  return format_double(a.value());
}

}  // namespace detail

inline constexpr const char* kSweepCsvHeader =
    "lambda,A_plus,A_minus,delta_plus_over_pi,delta_minus_over_pi,N,f_nodes_plus,g_nodes_plus,"
    "f_nodes_minus_interior,g_nodes_minus_interior,g_nodes_minus_exterior,eq2_residual,eq3_plus,eq3_minus,"
    "modified_c";

inline void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << kSweepCsvHeader << '\n';
  const auto b = [](bool v) { return v ? "true" : "false"; };
  for (const auto& r : rows) {
    os << detail::format_lambda(r.lambda) << ',' << detail::format_ratio(r.A_plus, r.A_plus_approach) << ','
       << detail::format_ratio(r.A_minus, r.A_minus_approach) << ',' << detail::format_double(r.delta_plus_over_pi())
       << ',' << detail::format_double(r.delta_minus_over_pi()) << ',' << r.N << ',' << r.f_nodes_plus << ','
       << r.g_nodes_plus << ',' << r.f_nodes_minus_interior << ',' << r.g_nodes_minus_interior << ','
       << r.g_nodes_minus_exterior << ',' << detail::format_double(r.eq2_residual) << ',' << b(r.eq3_plus) << ','
       << b(r.eq3_minus) << ',' << b(r.modified_c) << '\n';
  }
}

}  // namespace dirac
