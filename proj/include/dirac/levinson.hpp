#pragma once

/// \file levinson.hpp
///
/// Checks of the Dirac Levinson relation
///     N_κ = (δ(M) + δ(-M))/π - (sin²δ(M) + sin²δ(-M))/2,
/// of the per-threshold node relation
///     n(±M) = δ(±M)/π - sin²δ(±M)/2,
/// with n(M) counting f at +M and n(-M) counting g at -M, and of the
/// four-case square-well replacement for the latter.
///
/// Threshold phases enter on the lattice {nπ/2}; both the continuity and the
/// jump-ledger values are computed and must agree.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dirac/errors.hpp"
#include "dirac/interior.hpp"
#include "dirac/nodes.hpp"
#include "dirac/phase_shift.hpp"
#include "dirac/potential.hpp"
#include "dirac/spectrum.hpp"

namespace dirac {

enum class Regime { weak, strong };

inline const char* to_string(Regime r) noexcept { return r == Regime::weak ? "weak" : "strong"; }

/// max|V| < 2M.
inline Regime regime_of(const CutoffPotential& p, PhysicalScale scale) noexcept {
  return p.max_abs() < 2.0 * scale.mass() ? Regime::weak : Regime::strong;
}

struct LevinsonReport {
  int kappa = 1;
  double M = 1.0;
  double r0 = 1.0;
  /// Threshold limits on the lattice, radians.
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double sin2_plus = 0.0;
  double sin2_minus = 0.0;
  int N_kappa = 0;
  double eq2_lhs = 0.0;
  double eq2_rhs = 0.0;
  double residual = 0.0;
  bool eq3_plus_holds = false;
  bool eq3_minus_holds = false;
  bool modified_c_holds = false;
  Regime regime = Regime::weak;

  friend bool operator==(const LevinsonReport&, const LevinsonReport&) = default;
};

/// One reading of "number of nodes" in the per-threshold relation.
struct NodeReading {
  std::string name;
  int plus_nodes = 0;
  int minus_nodes = 0;
  bool plus_holds = false;
  bool minus_holds = false;
};

struct StrongStatementResult {
  bool plus_holds = false;
  bool minus_holds = false;
  double rhs_plus = 0.0;
  double rhs_minus = 0.0;
  int n_plus = 0;
  int n_minus = 0;
  /// The assignment used for the verdict first, then the alternatives.
  std::vector<NodeReading> readings;
};

struct ModifiedCase {
  std::string label;
  bool applies = false;
  double lhs = 0.0;
  int nodes = 0;
  bool holds = true;
};

struct ModifiedStatementResult {
  bool holds = true;
  /// (i) δ(M) ≥ 0, (ii) δ(M) < 0, (iii) δ(-M) ≥ 0, (iv) δ(-M) < 0.
  std::array<ModifiedCase, 4> cases;
  /// Case (i) also claims the g count at +M equals the f count there;
  /// recorded, not part of `holds`.
  int f_nodes_plus = 0;
  bool f_matches_g_plus = true;
  /// Diagnostic only: case (iv)'s interior-minus-exterior count used for
  /// every δ(-M) ≤ 0.
  bool alternate_holds = true;
};

struct ThresholdLimit {
  PhaseShiftRecord curve;
  JumpLedger ledger;
  int half_pi_units = 0;
  bool methods_agree = true;
};

struct LevinsonOptions {
  DeltaGridSpec grid{};
  InteriorMethod method = InteriorMethod::automatic;
  double spectrum_tol = 1e-12;
  SpectrumOptions spectrum{};
  /// Tolerance for the node relations, which compare integers with lattice
  /// values.
  double relation_tol = 1e-9;
};

/// Everything computed for one (V, κ).
struct LevinsonAnalysis {
  LevinsonReport report;
  SpectrumReport spectrum;
  ThresholdLimit plus;
  ThresholdLimit minus;
  NodeReport nodes_plus;
  NodeReport nodes_minus;
  StrongStatementResult strong;
  ModifiedStatementResult modified;

  bool methods_agree() const noexcept { return plus.methods_agree && minus.methods_agree; }
};

inline StrongStatementResult mirror_result(StrongStatementResult s) {
  std::swap(s.plus_holds, s.minus_holds);
  std::swap(s.rhs_plus, s.rhs_minus);
  std::swap(s.n_plus, s.n_minus);
  for (auto& r : s.readings) {
    std::swap(r.plus_nodes, r.minus_nodes);
    std::swap(r.plus_holds, r.minus_holds);
  }
  return s;
}

/// Jump ledger for any cutoff potential: the λ path for square wells, the
/// coupling path V → sV otherwise.
inline JumpLedger threshold_ledger(const CutoffPotential& p, const AngularChannel& ch, PhysicalScale scale,
                                   Threshold t, InteriorMethod method = InteriorMethod::automatic) {
  if (!ch.positive()) return threshold_ledger(reflect(p), ch.mirrored(), scale, opposite(t), method);
  if (const auto lambda = p.square_well_depth(); lambda && method != InteriorMethod::ode) {
    return jump_ledger(*lambda, ch, scale, p.cutoff_radius(), t);
  }
  return coupling_jump_ledger(InteriorModel(p, ch, scale, method), t);
}

inline ThresholdLimit threshold_limit(const CutoffPotential& p, const AngularChannel& ch, PhysicalScale scale,
                                      Threshold t, const LevinsonOptions& opt = {}) {
  ThresholdLimit out;
  out.curve = delta_curve(p, ch, scale, t, opt.grid, opt.method);
  out.ledger = threshold_ledger(p, ch, scale, t, opt.method);
  out.half_pi_units = out.curve.threshold_in_half_pi_units;
  out.methods_agree = out.curve.converged && out.curve.threshold_in_half_pi_units == out.ledger.half_pi_units;
  return out;
}

namespace detail {

inline double node_rhs(int half_pi_units) noexcept { return half_pi_units / 2.0 - 0.5 * lattice_sin2(half_pi_units); }

inline StrongStatementResult strong_statement(int units_plus, int units_minus, const NodeReport& np,
                                              const NodeReport& nm, double tol) {
  StrongStatementResult s;
  s.rhs_plus = node_rhs(units_plus);
  s.rhs_minus = node_rhs(units_minus);
  const auto reading = [&](std::string name, int plus_nodes, int minus_nodes) {
    return NodeReading{std::move(name), plus_nodes, minus_nodes, std::abs(plus_nodes - s.rhs_plus) < tol,
                       std::abs(minus_nodes - s.rhs_minus) < tol};
  };
  s.readings.push_back(reading("f(+M), g(-M), all r", np.f_total(), nm.g_total()));
  s.readings.push_back(reading("g(+M), f(-M), all r", np.g_total(), nm.f_total()));
  s.readings.push_back(reading("f(+M), f(-M), all r", np.f_total(), nm.f_total()));
  s.readings.push_back(reading("g(+M), g(-M), all r", np.g_total(), nm.g_total()));
  s.readings.push_back(reading("f(+M), g(-M), r < r0", np.f_nodes_interior, nm.g_nodes_interior));
  s.n_plus = s.readings.front().plus_nodes;
  s.n_minus = s.readings.front().minus_nodes;
  s.plus_holds = s.readings.front().plus_holds;
  s.minus_holds = s.readings.front().minus_holds;
  return s;
}

inline ModifiedStatementResult modified_statement(int units_plus, int units_minus, const NodeReport& np,
                                                  const NodeReport& nm, double tol) {
  ModifiedStatementResult m;
  const double dp = units_plus / 2.0;   // δ(M)/π
  const double dm = units_minus / 2.0;  // δ(-M)/π
  const double s2m = lattice_sin2(units_minus);
  const auto decide = [&](ModifiedCase& c) { c.holds = !c.applies || std::abs(c.lhs - c.nodes) < tol; };

  m.cases[0] = {"i: delta(M) >= 0, delta(M)/pi = nodes of g at +M", units_plus >= 0, dp, np.g_total(), true};
  m.cases[1] = {"ii: delta(M) < 0, -delta(M)/pi = nodes of g at +M in (0, r0)", units_plus < 0, -dp,
                np.g_nodes_interior, true};
  m.cases[2] = {"iii: delta(-M) >= 0, delta(-M)/pi - sin^2/2 = nodes of g at -M", units_minus >= 0,
                dm - 0.5 * s2m, nm.g_total(), true};
  m.cases[3] = {"iv: delta(-M) < 0, -delta(-M)/pi + sin^2/2 = g nodes in (0, r0) minus g nodes beyond r0",
                units_minus < 0, -dm + 0.5 * s2m, nm.g_nodes_interior - nm.g_nodes_exterior, true};
  for (auto& c : m.cases) decide(c);
  m.holds = m.cases[0].holds && m.cases[1].holds && m.cases[2].holds && m.cases[3].holds;
  m.f_nodes_plus = np.f_total();
  m.f_matches_g_plus = !m.cases[0].applies || np.f_total() == np.g_total();

  const bool plus_ok = m.cases[0].holds && m.cases[1].holds;
  const bool minus_alt = units_minus > 0
                             ? m.cases[2].holds
                             : std::abs((-dm + 0.5 * s2m) - (nm.g_nodes_interior - nm.g_nodes_exterior)) < tol;
  m.alternate_holds = plus_ok && minus_alt;
  return m;
}

}  // namespace detail

/// Full evaluation for channel κ; κ < 0 runs on (|κ|, -V) with the
/// thresholds exchanged.
inline LevinsonAnalysis analyze_levinson(const CutoffPotential& p, const AngularChannel& ch, PhysicalScale scale,
                                         const LevinsonOptions& opt = {}) {
  if (!ch.positive()) {
    auto a = analyze_levinson(reflect(p), ch.mirrored(), scale, opt);
    auto& r = a.report;
    r.kappa = ch.kappa();
    std::swap(r.delta_plus, r.delta_minus);
    std::swap(r.sin2_plus, r.sin2_minus);
    std::swap(r.eq3_plus_holds, r.eq3_minus_holds);
    a.spectrum = mirror_result(std::move(a.spectrum));
    std::swap(a.plus, a.minus);
    a.plus.curve.threshold = Threshold::plus;
    a.minus.curve.threshold = Threshold::minus;
    for (auto& e : a.plus.curve.energies) e = e.negated();
    for (auto& e : a.minus.curve.energies) e = e.negated();
    auto np = mirror_result(a.nodes_minus);
    auto nm = mirror_result(a.nodes_plus);
    a.nodes_plus = np;
    a.nodes_minus = nm;
    a.strong = mirror_result(std::move(a.strong));
    return a;
  }

  LevinsonAnalysis a;
  SpectrumOptions sopt = opt.spectrum;
  sopt.method = opt.method;
  a.spectrum = find_bound_states(p, ch, scale, opt.spectrum_tol, sopt);
  a.plus = threshold_limit(p, ch, scale, Threshold::plus, opt);
  a.minus = threshold_limit(p, ch, scale, Threshold::minus, opt);
  a.nodes_plus = node_report(p, ch, scale, Threshold::plus);
  a.nodes_minus = node_report(p, ch, scale, Threshold::minus);

  const int up = a.plus.half_pi_units, um = a.minus.half_pi_units;
  auto& r = a.report;
  r.kappa = ch.kappa();
  r.M = scale.mass();
  r.r0 = p.cutoff_radius();
  r.delta_plus = up * kHalfPi;
  r.delta_minus = um * kHalfPi;
  r.sin2_plus = lattice_sin2(up);
  r.sin2_minus = lattice_sin2(um);
  r.N_kappa = a.spectrum.count;
  r.eq2_lhs = r.N_kappa;
  r.eq2_rhs = (up + um) / 2.0 - 0.5 * (r.sin2_plus + r.sin2_minus);
  r.residual = std::abs(r.eq2_lhs - r.eq2_rhs);
  a.strong = detail::strong_statement(up, um, a.nodes_plus, a.nodes_minus, opt.relation_tol);
  r.eq3_plus_holds = a.strong.plus_holds;
  r.eq3_minus_holds = a.strong.minus_holds;
  a.modified = detail::modified_statement(up, um, a.nodes_plus, a.nodes_minus, opt.relation_tol);
  r.modified_c_holds = a.modified.holds;
  r.regime = regime_of(p, scale);
  return a;
}

/// The Levinson relation with N_κ from the spectrum and δ(±M) from
/// phase_shift. Throws MethodDisagreement when the continuity and jump
/// values of a threshold limit differ.
inline LevinsonReport verify_levinson(const CutoffPotential& p, const AngularChannel& ch, PhysicalScale scale,
                                      const LevinsonOptions& opt = {}) {
  const auto a = analyze_levinson(p, ch, scale, opt);
  if (!a.methods_agree()) {
    throw MethodDisagreement("verify_levinson: threshold limits disagree (continuity " +
                             std::to_string(a.plus.curve.threshold_limit / kPi) + ", " +
                             std::to_string(a.minus.curve.threshold_limit / kPi) + " pi; jumps " +
                             std::to_string(a.plus.ledger.value / kPi) + ", " +
                             std::to_string(a.minus.ledger.value / kPi) + " pi)");
  }
  return a.report;
}

inline StrongStatementResult check_strong_statement(const CutoffPotential& p, const AngularChannel& ch,
                                                    PhysicalScale scale, const LevinsonOptions& opt = {}) {
  return analyze_levinson(p, ch, scale, opt).strong;
}

/// Four-case statement for square wells, κ ≥ 1. Negative κ is evaluated on
/// the mirrored channel.
inline ModifiedStatementResult check_modified_statement(const CutoffPotential& p, const AngularChannel& ch,
                                                        PhysicalScale scale, const LevinsonOptions& opt = {}) {
  if (!p.square_well_depth()) throw std::invalid_argument("check_modified_statement: requires a square well");
  return analyze_levinson(p, ch, scale, opt).modified;
}

}  // namespace dirac
