// Deepens a κ = 1 square well past its first bound state and prints the
// threshold phase shifts, the bound-state count and the Levinson residual.
// An optional argument names a JSON potential to analyze as well.

#include <cstdio>
#include <exception>

#include "dirac/dirac.hpp"

namespace {

void print_row(const char* label, const dirac::LevinsonReport& r) {
  std::printf("%-14s N=%d  delta(+M)/pi=%5.2f  delta(-M)/pi=%5.2f  residual=%.1e  eq3=%s/%s  modified=%s\n", label,
              r.N_kappa, r.delta_plus / dirac::kPi, r.delta_minus / dirac::kPi, r.residual,
              r.eq3_plus_holds ? "yes" : "no", r.eq3_minus_holds ? "yes" : "no", r.modified_c_holds ? "yes" : "no");
}

}  // namespace

int main(int argc, char** argv) {
  const dirac::PhysicalScale scale(1.0);
  const dirac::AngularChannel ch(1);
  const double r0 = 1.0;
  try {
    for (double lambda : {0.0, 1.0, 2.0, 2.5, 4.0, -4.0}) {
      char label[32];
      std::snprintf(label, sizeof label, "lambda=%+.1f", lambda);
      print_row(label, dirac::verify_levinson(dirac::square_well(lambda, r0), ch, scale));
    }
    const auto sweep = dirac::lambda_sweep(ch, scale, r0, 0.0, 6.0, 0.5);
    for (const auto& e : sweep.events) {
      std::printf("event %-24s at lambda=%.10f, direction %+d\n", dirac::to_string(e.kind), e.lambda_star,
                  e.direction);
    }
    if (argc > 1) print_row(argv[1], dirac::verify_levinson(dirac::load_potential(argv[1]), ch, scale));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
