#pragma once

// Extended-precision log/phase bookkeeping shared by the series evaluators.
// Every series term in this library is a product of integer powers of complex
// numbers and (reciprocal) factorials; the term is accumulated as
// log|term| + i*arg(term) and exponentiated once.

#include <cmath>
#include <complex>
#include <limits>

namespace fockstat::detail {

using real_ext = long double;
using complex_ext = std::complex<real_ext>;

/// ln(k!) in extended precision; k must be non-negative.
real_ext log_factorial_ext(int k);

/// ln C(n, k) for 0 <= k <= n.
inline real_ext log_binomial_ext(int n, int k) {
  return log_factorial_ext(n) - log_factorial_ext(k) - log_factorial_ext(n - k);
}

/// A complex base z, pre-split into ln|z| and arg z.
struct PolarBase {
  real_ext log_abs = 0;
  real_ext arg = 0;
  bool zero = true;

  static PolarBase of(std::complex<double> z) {
    PolarBase b;
    if (z == std::complex<double>(0.0, 0.0)) return b;
    b.zero = false;
    b.log_abs = std::log(static_cast<real_ext>(std::abs(z)));
    b.arg = std::atan2(static_cast<real_ext>(z.imag()), static_cast<real_ext>(z.real()));
    return b;
  }
  static PolarBase polar(double magnitude, double phase) {
    PolarBase b;
    if (magnitude == 0.0) return b;
    b.zero = false;
    b.log_abs = std::log(static_cast<real_ext>(magnitude));
    b.arg = phase;
    return b;
  }
  PolarBase conj() const { return {log_abs, -arg, zero}; }
  PolarBase negated() const { return {log_abs, arg + pi(), zero}; }

  static constexpr real_ext pi() { return 3.141592653589793238462643383279502884L; }
};

/// Running product of powers and factorials; 0^0 = 1.
struct PolarTerm {
  real_ext log_abs = 0;
  real_ext phase = 0;
  bool zero = false;

  PolarTerm& times_pow(const PolarBase& base, int exponent) {
    if (exponent == 0 || zero) return *this;
    if (base.zero) {
      zero = true;
      return *this;
    }
    log_abs += exponent * base.log_abs;
    phase += exponent * base.arg;
    return *this;
  }
  PolarTerm& times_factorial(int k) {
    if (k < 0) {
      zero = true;  // only reached for terms already annihilated upstream
      return *this;
    }
    log_abs += log_factorial_ext(k);
    return *this;
  }
  /// Multiplies by 1/k!; negative k is a pole of the factorial, so the term vanishes.
  PolarTerm& over_factorial(int k) {
    if (k < 0) {
      zero = true;
      return *this;
    }
    log_abs -= log_factorial_ext(k);
    return *this;
  }
  PolarTerm& times_exp(real_ext log_factor) {
    log_abs += log_factor;
    return *this;
  }

  real_ext magnitude() const { return zero ? 0 : std::exp(log_abs); }
  complex_ext value() const {
    if (zero) return {0, 0};
    return std::polar(std::exp(log_abs), phase);
  }
};

}  // namespace fockstat::detail
