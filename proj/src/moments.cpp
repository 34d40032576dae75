#include "fockstat/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fockstat/combinatorics.hpp"
#include "fockstat/errors.hpp"
#include "moment_table.hpp"

namespace fockstat {

using detail::complex_ext;
using detail::PolarBase;
using detail::PolarTerm;
using detail::real_ext;

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("SeriesControl: rel_tol must be positive");
  if (max_terms < 50) throw DomainError("SeriesControl: max_terms must be at least 50");
  if (consecutive_small < 1) throw DomainError("SeriesControl: consecutive_small must be at least 1");
}

namespace detail {

SeriesSum raw_moment(const StateSpec& spec, int q, int r, const SeriesControl& ctrl) {
  spec.validate();
  ctrl.validate();
  if (q < 0 || r < 0) throw DomainError("moment orders must be non-negative");

  const int n = spec.fock_n;
  const int photons = spec.photons;
  const bool added = spec.family == Family::kAdded;
  const PolarBase alpha = PolarBase::polar(spec.alpha_mag, spec.alpha_phase);
  const PolarBase alpha_conj = alpha.conj();
  const PolarBase minus_alpha_conj = alpha_conj.negated();
  const PolarBase minus_alpha = alpha.negated();
  const real_ext mag = spec.alpha_mag;
  const real_ext common = -log_factorial_ext(n) - mag * mag;

  SeriesSum total;
  for (int p = 0; p <= n; ++p) {
    for (int pp = 0; pp <= n; ++pp) {
      PolarTerm prefactor;
      prefactor.times_exp(common + log_binomial_ext(n, p) + log_binomial_ext(n, pp))
          .times_pow(minus_alpha_conj, n - p)
          .times_pow(minus_alpha, n - pp);
      if (prefactor.zero) continue;

      // The bra index m' is pinned to m + shift by orthogonality of Fock states.
      const int shift = p - pp - r + q;
      int m_min = std::max(0, -shift);
      m_min = added ? std::max(m_min, r - p - photons) : std::max(m_min, photons + r - p);

      complex_ext sum{0, 0};
      int small_run = 0;
      for (int m = m_min, count = 0;; ++m, ++count) {
        if (count >= ctrl.max_terms) {
          total.value += sum;
          throw ConvergenceError("moment series <a+^" + std::to_string(q) + " a^" + std::to_string(r) +
                                     "> did not converge for " + spec.label(),
                                 {static_cast<double>(total.value.real()), static_cast<double>(total.value.imag())},
                                 total.terms);
        }
        const int mp = m + shift;
        PolarTerm term = prefactor;
        term.times_pow(alpha, m).times_pow(alpha_conj, mp).over_factorial(m).over_factorial(mp);
        if (added) {
          term.times_factorial(m + p + photons)
              .times_factorial(m + p + photons - r + q)
              .over_factorial(m + p + photons - r);
        } else {
          term.times_factorial(m + p).times_factorial(m + p - r + q).over_factorial(m + p - photons - r);
        }
        const complex_ext value = term.value();
        sum += value;
        ++total.terms;

        const real_ext size = std::abs(value);
        const real_ext scale = std::abs(sum);
        const bool small = scale == 0 ? size < 1e-300L : size < static_cast<real_ext>(ctrl.rel_tol) * scale;
        small_run = small ? small_run + 1 : 0;
        if (small_run >= ctrl.consecutive_small) break;
      }
      total.value += sum;
    }
  }
  return total;
}

MomentTable::MomentTable(const StateSpec& spec, const SeriesControl& ctrl) : spec_(spec), ctrl_(ctrl) {
  const SeriesSum norm = raw_moment(spec_, 0, 0, ctrl_);
  terms_ += norm.terms;
  norm_ = norm.value.real();
  if (!(norm_ > 0) || std::sqrt(norm_) < 1e-30L) {
    throw DegenerateStateError(spec_.label() + " vanishes before normalization");
  }
  cache_[{0, 0}] = {1, 0};
}

complex_ext MomentTable::normal_ordered(int q, int r) {
  const auto key = std::make_pair(q, r);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const SeriesSum raw = raw_moment(spec_, q, r, ctrl_);
  terms_ += raw.terms;
  const complex_ext value = raw.value / norm_;
  cache_.emplace(key, value);
  return value;
}

real_ext MomentTable::quadrature_central(int l) {
  if (l < 2 || l % 2 != 0 || l > 12) {
    throw DomainError("quadrature moment order must be even and in [2, 12], got " + std::to_string(l));
  }
  // (a + a^dag)^r normal orders to sum_i C(r,2i) (2i-1)!! :(a + a^dag)^{r-2i}: and
  // :(a + a^dag)^s: = sum_k C(s,k) a^{dag k} a^{s-k}.
  const real_ext mean = quadrature_sum_mean();
  real_ext total = 0;
  for (int r = 0; r <= l; ++r) {
    real_ext inner = 0;
    for (int i = 0; 2 * i <= r; ++i) {
      const real_ext pairing = static_cast<real_ext>(double_factorial(2 * i - 1)) * binomial(r, 2 * i);
      for (int k = 0; k <= r - 2 * i; ++k) {
        inner += pairing * binomial(r - 2 * i, k) * normal_ordered(k, r - 2 * i - k).real();
      }
    }
    const real_ext sign = (r % 2 == 0) ? 1 : -1;
    total += sign * binomial(l, r) * std::pow(mean, l - r) * inner;
  }
  return total / std::pow(static_cast<real_ext>(2), l / 2);
}

}  // namespace detail

MomentValue moment_closed_form(const StateSpec& spec, int q, int r, const SeriesControl& ctrl) {
  const detail::SeriesSum norm = detail::raw_moment(spec, 0, 0, ctrl);
  if (!(norm.value.real() > 0) || std::sqrt(norm.value.real()) < 1e-30L) {
    throw DegenerateStateError(spec.label() + " vanishes before normalization");
  }
  detail::SeriesSum raw;
  try {
    raw = detail::raw_moment(spec, q, r, ctrl);
  } catch (const ConvergenceError& e) {
    const real_ext scale = norm.value.real();
    throw ConvergenceError(e.what(), e.partial() / static_cast<double>(scale), e.terms_summed() + norm.terms);
  }
  const complex_ext value = raw.value / norm.value.real();
  MomentValue out;
  out.q = q;
  out.r = r;
  out.value = {static_cast<double>(value.real()), static_cast<double>(value.imag())};
  out.terms_summed = raw.terms + norm.terms;
  out.converged = true;
  return out;
}

double normalization_constant(const StateSpec& spec, const SeriesControl& ctrl) {
  const detail::SeriesSum norm = detail::raw_moment(spec, 0, 0, ctrl);
  if (!(norm.value.real() > 0)) throw DegenerateStateError(spec.label() + " vanishes before normalization");
  return static_cast<double>(1 / std::sqrt(norm.value.real()));
}

std::complex<double> moment_oracle(const FockVector& state, int q, int r) {
  if (q < 0 || r < 0) throw DomainError("moment orders must be non-negative");
  const std::size_t dim = state.dim();
  if (dim < state.support() + static_cast<std::size_t>(std::max(q, r))) {
    throw DimensionError("moment oracle needs dim >= support + max(q, r)");
  }
  // a^r |psi> then overlap with a^q |psi>: both sides land on level k - r.
  complex_ext sum{0, 0};
  for (std::size_t k = static_cast<std::size_t>(r); k < dim; ++k) {
    const long target = static_cast<long>(k) + q - r;
    if (target < 0 || target >= static_cast<long>(dim)) continue;
    const int low = static_cast<int>(k) - r;
    const real_ext weight = std::exp((detail::log_factorial_ext(static_cast<int>(k)) +
                                      detail::log_factorial_ext(static_cast<int>(target))) /
                                         2 -
                                     detail::log_factorial_ext(low));
    const auto bra = std::conj(state[static_cast<std::size_t>(target)]);
    const auto ket = state[k];
    sum += weight * complex_ext(bra.real(), bra.imag()) * complex_ext(ket.real(), ket.imag());
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

double quadrature_central_moment(const StateSpec& spec, int l, const SeriesControl& ctrl) {
  if (l % 2 != 0) throw DomainError("quadrature moment order must be even");
  detail::MomentTable table(spec, ctrl);
  return static_cast<double>(table.quadrature_central(l));
}

double quadrature_oracle(const FockVector& state, int l) {
  if (l < 2 || l % 2 != 0) throw DomainError("quadrature moment order must be even and >= 2");
  const std::size_t dim = state.dim();
  if (dim < state.support() + static_cast<std::size_t>(l)) {
    throw DimensionError("quadrature oracle needs dim >= support + l");
  }
  std::vector<complex_ext> psi(dim);
  for (std::size_t k = 0; k < dim; ++k) psi[k] = {state[k].real(), state[k].imag()};

  // X is tridiagonal with X_{k,k+1} = X_{k+1,k} = sqrt((k+1)/2).
  auto apply_x = [dim](const std::vector<complex_ext>& v, real_ext shift) {
    std::vector<complex_ext> w(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      complex_ext acc = -shift * v[k];
      if (k > 0) acc += std::sqrt(static_cast<real_ext>(k) / 2) * v[k - 1];
      if (k + 1 < dim) acc += std::sqrt(static_cast<real_ext>(k + 1) / 2) * v[k + 1];
      w[k] = acc;
    }
    return w;
  };
  auto inner = [dim](const std::vector<complex_ext>& a, const std::vector<complex_ext>& b) {
    complex_ext s{0, 0};
    for (std::size_t k = 0; k < dim; ++k) s += std::conj(a[k]) * b[k];
    return s;
  };

  const real_ext mean = inner(psi, apply_x(psi, 0)).real();
  std::vector<complex_ext> w = psi;
  for (int i = 0; i < l; ++i) w = apply_x(w, mean);
  return static_cast<double>(inner(psi, w).real());
}

}  // namespace fockstat
