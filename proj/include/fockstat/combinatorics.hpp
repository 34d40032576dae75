#pragma once

#include <cstdint>

namespace fockstat {

/// A real number stored as sign * exp(log_abs). sign == 0 is an exact zero
/// and log_abs is then meaningless.
struct LogMagnitude {
  double log_abs = 0.0;
  int sign = 0;

  static LogMagnitude zero() { return {0.0, 0}; }
  static LogMagnitude one() { return {0.0, 1}; }
  static LogMagnitude from_value(double x);

  bool is_zero() const { return sign == 0; }
  double value() const;

  friend LogMagnitude operator*(LogMagnitude a, LogMagnitude b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.log_abs + b.log_abs, a.sign * b.sign};
  }
};

/// ln(k!). Throws DomainError for k < 0.
double log_factorial(int k);

/// 1/k!, with the reciprocal-gamma convention 1/k! = 0 for negative k.
LogMagnitude reciprocal_factorial(int k);

/// Exact C(n, k), zero outside 0 <= k <= n. Requires 0 <= n <= 64.
std::uint64_t binomial(int n, int k);

/// Rising factorial (1/2)_{l/2} for even l >= 2; equals (l-1)!! / 2^{l/2}.
double pochhammer_half(int l);

/// k!! with (-1)!! = 0!! = 1. Throws DomainError for k < -1 or on overflow.
std::uint64_t double_factorial(int k);

/// Stirling number of the second kind S2(e, f). Arguments are limited to 64;
/// throws DomainError when the exact value does not fit in 64 bits.
std::uint64_t stirling2(int e, int f);

}  // namespace fockstat
