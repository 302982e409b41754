#pragma once

/// \file serialization.hpp
///
/// JSON forms of reports, jump events and piecewise potentials.

#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dirac/levinson.hpp"
#include "dirac/phase_shift.hpp"
#include "dirac/potential.hpp"

namespace dirac {

inline Regime parse_regime(const std::string& s) {
  if (s == "weak") return Regime::weak;
  if (s == "strong") return Regime::strong;
  throw std::invalid_argument("unknown regime '" + s + "'");
}

inline Threshold parse_threshold(const std::string& s) {
  if (s == "plus" || s == "+M" || s == "+1") return Threshold::plus;
  if (s == "minus" || s == "-M" || s == "-1") return Threshold::minus;
  throw std::invalid_argument("threshold must be 'plus' or 'minus', got '" + s + "'");
}

inline JumpKind parse_jump_kind(const std::string& s) {
  for (auto k : {JumpKind::a_plus_through_infinity, JumpKind::a_minus_through_rho1, JumpKind::half_bound_touch}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown jump kind '" + s + "'");
}

/// "N" duplicates "N_kappa" for readers that expect the short name.
inline void to_json(nlohmann::json& j, const LevinsonReport& r) {
  j = nlohmann::json{{"kappa", r.kappa},
                     {"M", r.M},
                     {"r0", r.r0},
                     {"delta_plus", r.delta_plus},
                     {"delta_minus", r.delta_minus},
                     {"delta_plus_over_pi", r.delta_plus / kPi},
                     {"delta_minus_over_pi", r.delta_minus / kPi},
                     {"sin2_plus", r.sin2_plus},
                     {"sin2_minus", r.sin2_minus},
                     {"N_kappa", r.N_kappa},
                     {"N", r.N_kappa},
                     {"eq2_lhs", r.eq2_lhs},
                     {"eq2_rhs", r.eq2_rhs},
                     {"residual", r.residual},
                     {"eq3_plus_holds", r.eq3_plus_holds},
                     {"eq3_minus_holds", r.eq3_minus_holds},
                     {"modified_c_holds", r.modified_c_holds},
                     {"regime", to_string(r.regime)}};
}

inline void from_json(const nlohmann::json& j, LevinsonReport& r) {
  j.at("kappa").get_to(r.kappa);
  j.at("M").get_to(r.M);
  j.at("r0").get_to(r.r0);
  j.at("delta_plus").get_to(r.delta_plus);
  j.at("delta_minus").get_to(r.delta_minus);
  j.at("sin2_plus").get_to(r.sin2_plus);
  j.at("sin2_minus").get_to(r.sin2_minus);
  if (j.contains("N_kappa")) {
    j.at("N_kappa").get_to(r.N_kappa);
  } else {
    j.at("N").get_to(r.N_kappa);
  }
  j.at("eq2_lhs").get_to(r.eq2_lhs);
  j.at("eq2_rhs").get_to(r.eq2_rhs);
  j.at("residual").get_to(r.residual);
  j.at("eq3_plus_holds").get_to(r.eq3_plus_holds);
  j.at("eq3_minus_holds").get_to(r.eq3_minus_holds);
  j.at("modified_c_holds").get_to(r.modified_c_holds);
  r.regime = parse_regime(j.at("regime").get<std::string>());
}

inline void to_json(nlohmann::json& j, const JumpEvent& e) {
  j = nlohmann::json{{"lambda_star", e.lambda_star},
                     {"kind", to_string(e.kind)},
                     {"direction", e.direction},
                     {"threshold", to_string(e.threshold)}};
}

inline void from_json(const nlohmann::json& j, JumpEvent& e) {
  j.at("lambda_star").get_to(e.lambda_star);
  e.kind = parse_jump_kind(j.at("kind").get<std::string>());
  j.at("direction").get_to(e.direction);
  e.threshold = parse_threshold(j.at("threshold").get<std::string>());
}

inline nlohmann::json events_to_json(std::span<const JumpEvent> events, int kappa, double M, double r0) {
  return nlohmann::json{{"kappa", kappa}, {"M", M}, {"r0", r0}, {"events", std::vector<JumpEvent>(events.begin(), events.end())}};
}

inline nlohmann::json potential_to_json(const CutoffPotential& p) {
  auto segs = nlohmann::json::array();
  for (const auto& s : p.segments()) segs.push_back({s.outer_radius, s.value});
  return nlohmann::json{{"segments", segs}, {"r0", p.cutoff_radius()}};
}

/// {"segments": [[r, V], ...], "r0": x}; "r0", when present, must equal the
/// last segment radius.
inline CutoffPotential potential_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("segments") || !j.at("segments").is_array()) {
    throw std::invalid_argument("potential JSON: expected an object with a 'segments' array");
  }
  std::vector<Segment> segs;
  for (const auto& s : j.at("segments")) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
      throw std::invalid_argument("potential JSON: each segment must be [radius, value]");
    }
    segs.push_back({s[0].get<double>(), s[1].get<double>()});
  }
  CutoffPotential p(std::move(segs));
  if (j.contains("r0")) {
    const double r0 = j.at("r0").get<double>();
    if (std::abs(r0 - p.cutoff_radius()) > 1e-12 * std::max(1.0, r0)) {
      throw std::invalid_argument("potential JSON: r0 differs from the last segment radius");
    }
  }
  return p;
}

inline CutoffPotential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open potential file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("potential file '" + path + "': " + e.what());
  }
  return potential_from_json(j);
}

}  // namespace dirac
