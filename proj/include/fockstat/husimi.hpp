#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "fockstat/moments.hpp"
#include "fockstat/state.hpp"

namespace fockstat {

/// `count` equally spaced samples from min to max inclusive.
struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  double step() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
  double at(int i) const { return count > 1 ? min + i * step() : min; }
};

/// Husimi Q sampled on a rectangle of the complex beta plane. Row-major with
/// one row per imaginary sample: values[i_im * re.count + i_re].
struct QGrid {
  GridAxis re;
  GridAxis im;
  std::vector<double> values;

  double at(int i_re, int i_im) const { return values[static_cast<std::size_t>(i_im * re.count + i_re)]; }
  std::complex<double> beta(int i_re, int i_im) const { return {re.at(i_re), im.at(i_im)}; }
  double cell_area() const { return re.step() * im.step(); }
  /// Riemann sum of Q over the grid; close to 1 when the grid covers the state.
  double integral() const;
};

/// Q(beta) = |<beta|psi>|^2 / pi from the closed-form series in alpha and beta.
double q_value(const StateSpec& spec, std::complex<double> beta, const SeriesControl& ctrl = {});

/// Q(beta) from the amplitude vector via the coherent-state overlap.
double q_overlap(const FockVector& state, std::complex<double> beta);

/// [-(|alpha| + 4), |alpha| + 4] with 121 samples.
GridAxis default_axis(const StateSpec& spec);

/// Requires counts >= 2. Evaluated through the amplitude vector.
QGrid q_grid(const StateSpec& spec, const GridAxis& re, const GridAxis& im);

struct QMinimum {
  std::complex<double> beta;
  double q = 0.0;
};

/// Grid point of smallest Q; ties go to the smallest |beta|, then the smallest
/// phase in [0, 2 pi).
QMinimum q_min_scan(const QGrid& grid);

/// CSV with header `re,im,q`.
void write_csv(std::ostream& out, const QGrid& grid);

}  // namespace fockstat
