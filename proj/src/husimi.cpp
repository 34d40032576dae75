#include "fockstat/husimi.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "fockstat/errors.hpp"
#include "fockstat/format.hpp"
#include "moment_table.hpp"

namespace fockstat {

using detail::complex_ext;
using detail::PolarBase;
using detail::PolarTerm;
using detail::real_ext;

double QGrid::integral() const {
  real_ext sum = 0;
  for (double v : values) sum += v;
  return static_cast<double>(sum * cell_area());
}

double q_value(const StateSpec& spec, std::complex<double> beta, const SeriesControl& ctrl) {
  spec.validate();
  ctrl.validate();
  const detail::SeriesSum norm = detail::raw_moment(spec, 0, 0, ctrl);
  if (!(norm.value.real() > 0)) throw DegenerateStateError(spec.label() + " vanishes before normalization");

  const int n = spec.fock_n;
  const int photons = spec.photons;
  const bool added = spec.family == Family::kAdded;
  const PolarBase alpha = PolarBase::polar(spec.alpha_mag, spec.alpha_phase);
  const PolarBase minus_alpha_conj = alpha.conj().negated();
  const PolarBase beta_conj = PolarBase::of(std::conj(beta));
  const real_ext mag2 = static_cast<real_ext>(spec.alpha_mag) * spec.alpha_mag + std::norm(beta);
  const real_ext common = -mag2 / 2 - detail::log_factorial_ext(n) / 2;

  // The double series over (p, m) x (p', m') is |sum_p sum_m ...|^2; each side is
  // <beta| a^{dag u} D(alpha)|n> (or with a^v) up to the normalization.
  complex_ext overlap{0, 0};
  for (int p = 0; p <= n; ++p) {
    PolarTerm prefactor;
    prefactor.times_exp(common + detail::log_binomial_ext(n, p)).times_pow(minus_alpha_conj, n - p);
    if (prefactor.zero) continue;
    const int m_min = added ? 0 : std::max(0, photons - p);
    complex_ext sum{0, 0};
    int small_run = 0;
    for (int m = m_min, count = 0;; ++m, ++count) {
      if (count >= ctrl.max_terms) {
        throw ConvergenceError("Husimi series did not converge for " + spec.label(), {0.0, 0.0}, count);
      }
      PolarTerm term = prefactor;
      term.times_pow(alpha, m).over_factorial(m);
      if (added) {
        term.times_pow(beta_conj, m + p + photons);
      } else {
        term.times_pow(beta_conj, m + p - photons).times_factorial(m + p).over_factorial(m + p - photons);
      }
      const complex_ext value = term.value();
      sum += value;
      const real_ext size = std::abs(value);
      const real_ext scale = std::abs(sum);
      const bool small = scale == 0 ? size < 1e-300L : size < static_cast<real_ext>(ctrl.rel_tol) * scale;
      small_run = small ? small_run + 1 : 0;
      if (small_run >= ctrl.consecutive_small) break;
    }
    overlap += sum;
  }
  return static_cast<double>(std::norm(overlap) / (norm.value.real() * std::numbers::pi_v<real_ext>));
}

double q_overlap(const FockVector& state, std::complex<double> beta) {
  const complex_ext beta_conj(beta.real(), -beta.imag());
  complex_ext weight = std::exp(-static_cast<real_ext>(std::norm(beta)) / 2);
  complex_ext sum{0, 0};
  for (std::size_t k = 0; k < state.dim(); ++k) {
    if (k > 0) weight *= beta_conj / std::sqrt(static_cast<real_ext>(k));
    const auto c = state[k];
    sum += weight * complex_ext(c.real(), c.imag());
  }
  return static_cast<double>(std::norm(sum) / std::numbers::pi_v<real_ext>);
}

GridAxis default_axis(const StateSpec& spec) {
  const double half = spec.alpha_mag + 4.0;
  return {-half, half, 121};
}

QGrid q_grid(const StateSpec& spec, const GridAxis& re, const GridAxis& im) {
  if (re.count < 2 || im.count < 2) throw DomainError("Q grid needs at least two samples per axis");
  if (!(re.max > re.min) || !(im.max > im.min)) throw DomainError("Q grid ranges must be non-degenerate");
  const FockVector state = build_state(spec);
  QGrid grid{re, im, {}};
  grid.values.resize(static_cast<std::size_t>(re.count) * static_cast<std::size_t>(im.count));
  for (int j = 0; j < im.count; ++j) {
    for (int i = 0; i < re.count; ++i) {
      grid.values[static_cast<std::size_t>(j * re.count + i)] = q_overlap(state, grid.beta(i, j));
    }
  }
  return grid;
}

QMinimum q_min_scan(const QGrid& grid) {
  if (grid.values.empty()) throw DomainError("empty Q grid");
  auto phase = [](std::complex<double> z) {
    double a = std::arg(z);
    return a < 0 ? a + 2 * std::numbers::pi : a;
  };
  QMinimum best{grid.beta(0, 0), grid.at(0, 0)};
  for (int j = 0; j < grid.im.count; ++j) {
    for (int i = 0; i < grid.re.count; ++i) {
      const double q = grid.at(i, j);
      const std::complex<double> beta = grid.beta(i, j);
      const double tie = 1e-12 * std::max(std::abs(q), std::abs(best.q));
      if (q < best.q - tie) {
        best = {beta, q};
      } else if (std::abs(q - best.q) <= tie) {
        const double r_new = std::abs(beta);
        const double r_best = std::abs(best.beta);
        if (r_new < r_best || (r_new == r_best && phase(beta) < phase(best.beta))) best = {beta, q};
      }
    }
  }
  return best;
}

void write_csv(std::ostream& out, const QGrid& grid) {
  out << "re,im,q\n";
  for (int j = 0; j < grid.im.count; ++j) {
    for (int i = 0; i < grid.re.count; ++i) {
      const auto beta = grid.beta(i, j);
      out << format_double(beta.real()) << ',' << format_double(beta.imag()) << ','
          << format_double(grid.at(i, j)) << '\n';
    }
  }
}

}  // namespace fockstat
