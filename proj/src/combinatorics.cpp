#include "fockstat/combinatorics.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "fockstat/errors.hpp"
#include "polar.hpp"

namespace fockstat {

namespace {

constexpr int kExactArgumentLimit = 64;

// k! is representable in 80-bit long double up to 1754!; beyond the table we
// fall back to lgammal.
constexpr int kLogFactorialTable = 1700;

const std::vector<detail::real_ext>& log_factorial_table() {
  static const std::vector<detail::real_ext> table = [] {
    std::vector<detail::real_ext> t(kLogFactorialTable + 1);
    detail::real_ext product = 1;
    t[0] = 0;
    for (int k = 1; k <= kLogFactorialTable; ++k) {
      product *= k;
      t[k] = std::log(product);
    }
    return t;
  }();
  return table;
}

}  // namespace

namespace detail {

real_ext log_factorial_ext(int k) {
  if (k < 0) throw DomainError("log_factorial: negative argument " + std::to_string(k));
  if (k <= kLogFactorialTable) return log_factorial_table()[static_cast<std::size_t>(k)];
  return std::lgamma(static_cast<real_ext>(k) + 1);
}

}  // namespace detail

LogMagnitude LogMagnitude::from_value(double x) {
  if (x == 0.0) return zero();
  return {std::log(std::abs(x)), x > 0 ? 1 : -1};
}

double LogMagnitude::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

double log_factorial(int k) { return static_cast<double>(detail::log_factorial_ext(k)); }

LogMagnitude reciprocal_factorial(int k) {
  if (k < 0) return LogMagnitude::zero();
  return {-log_factorial(k), 1};
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kExactArgumentLimit) {
    throw DomainError("binomial: n = " + std::to_string(n) + " outside [0, 64]");
  }
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __extension__ using u128 = unsigned __int128;
  u128 result = 1;
  for (int i = 0; i < k; ++i) {
    result = result * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
  }
  return static_cast<std::uint64_t>(result);
}

double pochhammer_half(int l) {
  if (l < 2 || l % 2 != 0) {
    throw DomainError("pochhammer_half: order must be even and >= 2, got " + std::to_string(l));
  }
  double product = 1.0;
  for (int i = 0; i < l / 2; ++i) product *= 0.5 + i;
  return product;
}

std::uint64_t double_factorial(int k) {
  if (k < -1) throw DomainError("double_factorial: argument below -1");
  std::uint64_t result = 1;
  for (int i = k; i > 1; i -= 2) {
    if (__builtin_mul_overflow(result, static_cast<std::uint64_t>(i), &result)) {
      throw DomainError("double_factorial: " + std::to_string(k) + "!! overflows 64 bits");
    }
  }
  return result;
}

std::uint64_t stirling2(int e, int f) {
  if (e < 0 || f < 0 || e > kExactArgumentLimit || f > kExactArgumentLimit) {
    throw DomainError("stirling2: arguments must lie in [0, 64]");
  }
  if (f > e) return 0;
  if (e == 0) return 1;  // S2(0, 0)
  if (f == 0) return 0;

  // Fill only the band (i, j) with j <= f and i - j <= e - f. Every entry in
  // the band is bounded by S2(e, f), so an overflow here is a genuine one.
  const int width = e - f;
  // row[d] holds S2(j + d, j) for the current column j.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(width) + 1, 0);
  // column j = 0: S2(d, 0) = [d == 0]
  row[0] = 1;
  for (int j = 1; j <= f; ++j) {
    std::vector<std::uint64_t> next(row.size(), 0);
    for (int d = 0; d <= width; ++d) {
      // S2(j+d, j) = j * S2(j+d-1, j) + S2(j+d-1, j-1)
      std::uint64_t left = 0;
      if (d > 0 && __builtin_mul_overflow(static_cast<std::uint64_t>(j), next[d - 1], &left)) {
        throw DomainError("stirling2: value overflows 64 bits");
      }
      std::uint64_t value = 0;
      if (__builtin_add_overflow(left, row[d], &value)) {
        throw DomainError("stirling2: value overflows 64 bits");
      }
      next[d] = value;
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(width)];
}

}  // namespace fockstat
