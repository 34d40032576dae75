#pragma once

#include <map>
#include <utility>

#include "fockstat/moments.hpp"
#include "polar.hpp"

namespace fockstat::detail {

struct SeriesSum {
  complex_ext value{0, 0};
  int terms = 0;
};

/// Unnormalized <phi| a^{dag q} a^r |phi> with |phi> = a^{dag u} D|n> or a^v D|n>.
SeriesSum raw_moment(const StateSpec& spec, int q, int r, const SeriesControl& ctrl);

/// Memoized normalized moments of one state, in extended precision. Not
/// thread-safe; each worker owns its own table.
class MomentTable {
 public:
  MomentTable(const StateSpec& spec, const SeriesControl& ctrl);

  const StateSpec& spec() const { return spec_; }
  const SeriesControl& control() const { return ctrl_; }
  real_ext norm_series() const { return norm_; }

  complex_ext normal_ordered(int q, int r);
  real_ext diagonal(int l) { return normal_ordered(l, l).real(); }
  /// <a + a^dag> = 2 Re <a>.
  real_ext quadrature_sum_mean() { return 2 * normal_ordered(0, 1).real(); }
  real_ext quadrature_central(int l);

  int terms_summed() const { return terms_; }

 private:
  StateSpec spec_;
  SeriesControl ctrl_;
  real_ext norm_ = 0;
  int terms_ = 0;
  std::map<std::pair<int, int>, complex_ext> cache_;
};

}  // namespace fockstat::detail
