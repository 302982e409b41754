// dirac_levinson: threshold phase shifts, Levinson verification and
// square-well sweeps for the radial Dirac equation.
//
// Exit codes: 0 success, 1 verification finding, 2 usage or config error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"

#include "dirac/dirac.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double M = 1.0;
  double r0 = 1.0;
  std::optional<int> kappa;
  std::optional<double> lambda;
  std::string potential_path;
  std::string threshold = "plus";
  std::optional<double> lambda_min;
  std::optional<double> lambda_max;
  double step = 0.01;
  std::string out;
  std::string events;
  double tol = 1e-9;
  unsigned threads = 0;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("dirac");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("LOG_LEVEL")) {
    const std::string s(env);
    if (s == "error" || s == "warn" || s == "info" || s == "debug") {
      spdlog::set_level(spdlog::level::from_str(s));
    } else {
      spdlog::warn("ignoring LOG_LEVEL='{}'; expected error, warn, info or debug", s);
    }
  }
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_potential) {
  cmd->add_option("--M", cfg.M, "Mass M (natural units)")->capture_default_str();
  cmd->add_option("--r0", cfg.r0, "Square-well radius r0")->capture_default_str();
  cmd->add_option("--kappa", cfg.kappa, "Angular quantum number (nonzero)")->required();
  cmd->add_option("--tol", cfg.tol, "Tolerance on the Levinson residual")->capture_default_str();
  cmd->add_option("--out", cfg.out, "Output file (stdout when omitted)");
  if (needs_potential) {
    auto* lam = cmd->add_option("--lambda", cfg.lambda, "Square-well depth, V = -lambda on [0, r0]");
    auto* pot = cmd->add_option("--potential", cfg.potential_path, "JSON potential {\"segments\": [[r, V], ...]}");
    lam->excludes(pot);
    pot->excludes(lam);
  }
}

void validate_scale(const RunConfig& cfg) {
  if (!(cfg.M > 0.0) || !std::isfinite(cfg.M)) throw UsageError("--M must be positive");
  if (!(cfg.r0 > 0.0) || !std::isfinite(cfg.r0)) throw UsageError("--r0 must be positive");
  if (*cfg.kappa == 0) throw UsageError("--kappa must be nonzero");
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
}

dirac::CutoffPotential config_potential(const RunConfig& cfg) {
  if (cfg.lambda) {
    if (!std::isfinite(*cfg.lambda)) throw UsageError("--lambda must be finite");
    return dirac::square_well(*cfg.lambda, cfg.r0);
  }
  if (!cfg.potential_path.empty()) {
    try {
      return dirac::load_potential(cfg.potential_path);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("one of --lambda or --potential is required");
}

/// Opens --out, or returns stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string format_over_pi(int half_pi_units) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", half_pi_units / 2.0);
  return buf;
}

int cmd_phase_shift(const RunConfig& cfg) {
  validate_scale(cfg);
  const auto p = config_potential(cfg);
  const dirac::AngularChannel ch(*cfg.kappa);
  const dirac::PhysicalScale scale(cfg.M);
  dirac::Threshold t;
  try {
    t = dirac::parse_threshold(cfg.threshold);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto lim = dirac::threshold_limit(p, ch, scale, t);
  if (!cfg.out.empty()) {
    Output out(cfg.out);
    auto& os = out.stream();
    os << "E,k,delta,delta_over_pi\n";
    const auto& c = lim.curve;
    char buf[128];
    for (std::size_t i = 0; i < c.delta.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", c.energies[i].energy(), c.momenta[i], c.delta[i],
                    c.delta[i] / dirac::kPi);
      os << buf;
    }
    spdlog::info("wrote {} points to {}", c.delta.size(), cfg.out);
  }
  if (!lim.methods_agree) {
    spdlog::error("threshold limit disagreement: continuity {} pi (converged {}), jumps {} pi",
                  lim.curve.threshold_limit / dirac::kPi, lim.curve.converged, lim.ledger.value / dirac::kPi);
    return kExitFinding;
  }
  std::cout << "delta/pi = " << format_over_pi(lim.half_pi_units) << '\n';
  if (lim.curve.half_bound_flag || lim.ledger.half_bound_flag) std::cout << "half-bound state at threshold\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  validate_scale(cfg);
  const auto p = config_potential(cfg);
  const dirac::AngularChannel ch(*cfg.kappa);
  const dirac::PhysicalScale scale(cfg.M);
  dirac::LevinsonReport r;
  try {
    r = dirac::verify_levinson(p, ch, scale);
  } catch (const dirac::MethodDisagreement& e) {
    spdlog::error("{}", e.what());
    return kExitFinding;
  }
  Output out(cfg.out);
  out.stream() << nlohmann::json(r).dump(2) << '\n';
  if (!r.eq3_plus_holds || !r.eq3_minus_holds) {
    spdlog::info("stronger statement fails (plus {}, minus {})", r.eq3_plus_holds, r.eq3_minus_holds);
  }
  if (!(r.residual < cfg.tol)) {
    spdlog::error("Levinson residual {} exceeds tolerance {}", r.residual, cfg.tol);
    return kExitFinding;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  validate_scale(cfg);
  if (!cfg.lambda_min || !cfg.lambda_max) throw UsageError("--lambda-min and --lambda-max are required");
  if (!std::isfinite(*cfg.lambda_min) || !std::isfinite(*cfg.lambda_max) || *cfg.lambda_max < *cfg.lambda_min) {
    throw UsageError("need finite --lambda-min <= --lambda-max");
  }
  if (!(cfg.step > 0.0)) throw UsageError("--step must be positive");
  const dirac::AngularChannel ch(*cfg.kappa);
  const dirac::PhysicalScale scale(cfg.M);
  dirac::SweepOptions opt;
  opt.threads = cfg.threads;
  const auto res = dirac::lambda_sweep(ch, scale, cfg.r0, *cfg.lambda_min, *cfg.lambda_max, cfg.step, opt);

  {
    Output out(cfg.out);
    dirac::write_sweep_csv(out.stream(), res.rows);
  }
  std::string events_path = cfg.events;
  if (events_path.empty() && !cfg.out.empty()) events_path = cfg.out + ".events.json";
  if (!events_path.empty()) {
    std::ofstream ev(events_path);
    if (!ev) throw UsageError("cannot open '" + events_path + "' for writing");
    ev << dirac::events_to_json(res.events, res.kappa, res.M, res.r0).dump(2) << '\n';
    spdlog::info("wrote {} events to {}", res.events.size(), events_path);
  }

  int status = kExitOk;
  for (const auto& row : res.rows) {
    if (!(row.eq2_residual < cfg.tol)) {
      spdlog::error("kappa={} lambda={}: Levinson residual {}", res.kappa, row.lambda, row.eq2_residual);
      status = kExitFinding;
    }
    if (!row.methods_agree || !row.ledger_agrees) {
      spdlog::error("kappa={} lambda={}: threshold limit methods disagree", res.kappa, row.lambda);
      status = kExitFinding;
    }
    if (!row.modified_c) spdlog::warn("kappa={} lambda={}: modified statement fails", res.kappa, row.lambda);
  }
  spdlog::info("{} rows, {} events, max residual {}", res.rows.size(), res.events.size(), res.max_residual());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Threshold phase shifts and Levinson's theorem for the radial Dirac equation"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* ps = app.add_subcommand("phase-shift", "Threshold limit of the phase shift; optional CSV of (E, delta)");
  add_common(ps, cfg, true);
  ps->add_option("--threshold", cfg.threshold, "plus or minus")
      ->check(CLI::IsMember({"plus", "minus"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Levinson report as JSON");
  add_common(verify, cfg, true);

  auto* sweep = app.add_subcommand("sweep", "Square-well depth sweep: CSV rows and JSON jump events");
  add_common(sweep, cfg, false);
  sweep->add_option("--lambda-min", cfg.lambda_min, "Lower end of the lambda range")->required();
  sweep->add_option("--lambda-max", cfg.lambda_max, "Upper end of the lambda range")->required();
  sweep->add_option("--step", cfg.step, "Grid step")->capture_default_str();
  sweep->add_option("--events", cfg.events, "Event ledger JSON (default: <out>.events.json)");
  sweep->add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ps) return cmd_phase_shift(cfg);
    if (*verify) return cmd_verify(cfg);
    return cmd_sweep(cfg);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const dirac::RefinementError& e) {
    spdlog::error("{}; try a smaller --step", e.what());
    return kExitFinding;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFinding;
  }
}
