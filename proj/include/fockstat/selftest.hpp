#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fockstat/moments.hpp"
#include "fockstat/state.hpp"

namespace fockstat {

/// One closed-form-vs-oracle comparison family.
struct SelfTestCheck {
  std::string name;
  int cases = 0;
  int skipped = 0;  // degenerate states
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string worst_case;

  bool passed() const { return cases > 0 && max_error <= tolerance; }
};

struct SelfTestReport {
  std::vector<SelfTestCheck> checks;

  bool passed() const;
};

/// {PADFS, PSDFS} x photons {0,1,2} x n {0,1,2} x |alpha| {0,0.5,1,2} x theta {0, pi/4}.
std::vector<StateSpec> oracle_grid();

/// Relative error of a closed-form moment against the amplitude oracle. Moments
/// that vanish in the oracle are measured against sqrt(<a^{dag q}a^q><a^{dag r}a^r>).
double moment_relative_error(std::complex<double> closed, std::complex<double> oracle, double scale);

SelfTestCheck check_moments(const std::vector<StateSpec>& grid, int max_order, const SeriesControl& ctrl = {});
SelfTestCheck check_quadrature(const std::vector<StateSpec>& grid, const std::vector<int>& orders,
                               const SeriesControl& ctrl = {});
/// `points` pseudo-random beta per state, drawn from a fixed seed.
SelfTestCheck check_husimi(const std::vector<StateSpec>& grid, int points, const SeriesControl& ctrl = {});

SelfTestReport run_selftest(const SeriesControl& ctrl = {});

void print_report(std::ostream& out, const SelfTestReport& report);

}  // namespace fockstat
