#pragma once

#include <complex>

#include "fockstat/state.hpp"

namespace fockstat {

/// Truncation rule for the infinite m-sums: stop after `consecutive_small`
/// successive terms each below rel_tol * |running sum|.
struct SeriesControl {
  double rel_tol = 1e-15;
  int max_terms = 2000;
  int consecutive_small = 5;

  /// Throws DomainError unless rel_tol > 0, max_terms >= 50, consecutive_small >= 1.
  void validate() const;
};

/// <a^{dag q} a^r> for a normalized state.
struct MomentValue {
  int q = 0;
  int r = 0;
  std::complex<double> value;
  int terms_summed = 0;
  bool converged = false;
};

/// Closed-form series for <a^{dag q} a^r>: a sum over p, p' in [0, n] of a single
/// m-series, divided by the same series at q = r = 0.
MomentValue moment_closed_form(const StateSpec& spec, int q, int r, const SeriesControl& ctrl = {});

/// Normalization constant N of the added/subtracted state, computed as the
/// inverse square root of the q = r = 0 series.
double normalization_constant(const StateSpec& spec, const SeriesControl& ctrl = {});

/// Brute-force <a^{dag q} a^r> from amplitudes. Throws DimensionError unless
/// dim >= support + max(q, r).
std::complex<double> moment_oracle(const FockVector& state, int q, int r);

/// <(Delta X)^l> for X = (a + a^dag)/sqrt(2), expanded in normal-ordered
/// moments. Even l in [2, 12].
double quadrature_central_moment(const StateSpec& spec, int l, const SeriesControl& ctrl = {});

/// <(Delta X)^l> by repeated application of the tridiagonal X - <X> matrix.
/// Throws DimensionError unless dim >= support + l.
double quadrature_oracle(const FockVector& state, int l);

}  // namespace fockstat
