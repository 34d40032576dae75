#include "fockstat/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "fockstat/errors.hpp"
#include "fockstat/format.hpp"
#include "fockstat/husimi.hpp"

namespace fockstat {

bool SelfTestReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

std::vector<StateSpec> oracle_grid() {
  std::vector<StateSpec> grid;
  for (Family family : {Family::kAdded, Family::kSubtracted}) {
    for (int photons = 0; photons <= 2; ++photons) {
      for (int n = 0; n <= 2; ++n) {
        for (double mag : {0.0, 0.5, 1.0, 2.0}) {
          for (double phase : {0.0, std::numbers::pi / 4}) grid.push_back({family, photons, n, mag, phase});
        }
      }
    }
  }
  return grid;
}

double moment_relative_error(std::complex<double> closed, std::complex<double> oracle, double scale) {
  const double diff = std::abs(closed - oracle);
  const double mag = std::abs(oracle);
  if (mag > 1e-10 * scale) return diff / mag;
  return scale > 0.0 ? diff / scale : diff;
}

namespace {

void record(SelfTestCheck& check, double err, const std::string& where) {
  if (std::isnan(err)) err = INFINITY;
  if (check.cases == 0 || err > check.max_error) {
    check.max_error = err;
    check.worst_case = where;
  }
  ++check.cases;
}

}  // namespace

SelfTestCheck check_moments(const std::vector<StateSpec>& grid, int max_order, const SeriesControl& ctrl) {
  SelfTestCheck check{"moments <a^{dag q} a^r> vs amplitude oracle", 0, 0, 0.0, 1e-8, ""};
  for (const StateSpec& spec : grid) {
    try {
      spec.validate();
    } catch (const DegenerateStateError&) {
      ++check.skipped;
      continue;
    }
    const FockVector state = build_state(spec, default_dimension(spec) + 16);
    std::vector<double> diag(static_cast<std::size_t>(max_order) + 1);
    for (int l = 0; l <= max_order; ++l) diag[static_cast<std::size_t>(l)] = moment_oracle(state, l, l).real();
    for (int q = 0; q <= max_order; ++q) {
      for (int r = 0; r <= max_order; ++r) {
        const auto closed = moment_closed_form(spec, q, r, ctrl).value;
        const auto oracle = moment_oracle(state, q, r);
        const double scale = std::sqrt(diag[static_cast<std::size_t>(q)] * diag[static_cast<std::size_t>(r)]);
        record(check, moment_relative_error(closed, oracle, scale),
               spec.label() + " q=" + std::to_string(q) + " r=" + std::to_string(r));
      }
    }
  }
  return check;
}

SelfTestCheck check_quadrature(const std::vector<StateSpec>& grid, const std::vector<int>& orders,
                               const SeriesControl& ctrl) {
  SelfTestCheck check{"quadrature moments vs tridiagonal oracle", 0, 0, 0.0, 1e-8, ""};
  for (const StateSpec& spec : grid) {
    try {
      spec.validate();
    } catch (const DegenerateStateError&) {
      ++check.skipped;
      continue;
    }
    const FockVector state = build_state(spec, default_dimension(spec) + 16);
    for (int l : orders) {
      const double closed = quadrature_central_moment(spec, l, ctrl);
      const double oracle = quadrature_oracle(state, l);
      record(check, std::abs(closed - oracle) / std::abs(oracle), spec.label() + " l=" + std::to_string(l));
    }
  }
  return check;
}

SelfTestCheck check_husimi(const std::vector<StateSpec>& grid, int points, const SeriesControl& ctrl) {
  SelfTestCheck check{"Husimi Q closed form vs coherent overlap", 0, 0, 0.0, 1e-10, ""};
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (const StateSpec& spec : grid) {
    try {
      spec.validate();
    } catch (const DegenerateStateError&) {
      ++check.skipped;
      continue;
    }
    const FockVector state = build_state(spec, default_dimension(spec) + 16);
    for (int i = 0; i < points; ++i) {
      const std::complex<double> beta = spec.alpha() + std::complex<double>(coord(rng), coord(rng));
      const double err = std::abs(q_value(spec, beta, ctrl) - q_overlap(state, beta));
      record(check, err, spec.label() + " beta=" + format_double(beta.real()) + "+" + format_double(beta.imag()) + "i");
    }
  }
  return check;
}

SelfTestReport run_selftest(const SeriesControl& ctrl) {
  const auto grid = oracle_grid();
  SelfTestReport report;
  report.checks.push_back(check_moments(grid, 5, ctrl));
  report.checks.push_back(check_quadrature(grid, {2, 4, 6}, ctrl));
  report.checks.push_back(check_husimi(grid, 4, ctrl));
  return report;
}

void print_report(std::ostream& out, const SelfTestReport& report) {
  for (const auto& c : report.checks) {
    out << (c.passed() ? "PASS " : "FAIL ") << c.name << ": " << c.cases << " cases";
    if (c.skipped > 0) out << " (" << c.skipped << " degenerate skipped)";
    out << ", max error " << format_double(c.max_error) << " (tol " << format_double(c.tolerance) << ")";
    if (!c.worst_case.empty()) out << ", worst at " << c.worst_case;
    out << '\n';
  }
  out << (report.passed() ? "selftest passed" : "selftest FAILED") << '\n';
}

}  // namespace fockstat
