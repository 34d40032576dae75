#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fockstat {

/// Photon-added (PADFS) or photon-subtracted (PSDFS) displaced Fock state.
enum class Family { kAdded, kSubtracted };

std::string_view to_string(Family family);
/// Accepts "padfs"/"added" and "psdfs"/"subtracted" (case-insensitive).
Family parse_family(std::string_view text);

/// Symbolic description of  N a^{dag u} D(alpha)|n>  (added) or  N a^v D(alpha)|n>
/// (subtracted), with alpha = alpha_mag * exp(i alpha_phase).
struct StateSpec {
  Family family = Family::kAdded;
  int photons = 0;  // u or v
  int fock_n = 0;
  double alpha_mag = 0.0;
  double alpha_phase = 0.0;

  std::complex<double> alpha() const { return std::polar(alpha_mag, alpha_phase); }

  /// Throws DomainError on negative counts or a bad displacement, and
  /// DegenerateStateError for a^v|n> with v > n at alpha = 0.
  void validate() const;

  std::string label() const;

  friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

StateSpec padfs(int u, int n, double alpha_mag, double alpha_phase = 0.0);
StateSpec psdfs(int v, int n, double alpha_mag, double alpha_phase = 0.0);
StateSpec coherent(double alpha_mag, double alpha_phase = 0.0);
StateSpec fock(int n);
StateSpec displaced_fock(int n, double alpha_mag, double alpha_phase = 0.0);

/// Normalized amplitudes c_0 .. c_{D-1} over a truncated Fock basis. The
/// amplitudes are those of the untruncated state; tail_bound bounds the
/// probability mass that falls beyond level D-1.
class FockVector {
 public:
  FockVector(std::vector<std::complex<double>> amplitudes, double tail_bound);

  std::span<const std::complex<double>> amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return amplitudes_.size(); }
  double tail_bound() const { return tail_bound_; }
  std::complex<double> operator[](std::size_t k) const { return amplitudes_[k]; }

  double norm_squared() const;
  /// One past the highest level whose probability exceeds 1e-20.
  std::size_t support() const;

 private:
  std::vector<std::complex<double>> amplitudes_;
  double tail_bound_;
};

/// Largest neglected probability a constructor accepts before reporting a
/// DimensionError.
inline constexpr double kMaxTailBound = 1e-10;

/// n + photons + ceil(|alpha|^2 + 10|alpha| + 20).
int default_dimension(const StateSpec& spec);

/// Smallest D whose neglected tail mass is below tail_tol.
int choose_dimension(const StateSpec& spec, double tail_tol = 1e-12);

FockVector build_dfs(int n, std::complex<double> alpha, int dim);
FockVector build_padfs(const StateSpec& spec, int dim);
FockVector build_psdfs(const StateSpec& spec, int dim);
FockVector build_state(const StateSpec& spec, int dim);
FockVector build_state(const StateSpec& spec);

/// || a^{dag u} D(alpha)|n> ||^2 (or with a^v), summed level by level before
/// normalization. The closed-form normalization constant N satisfies
/// N^2 * ladder_norm_squared(spec) = 1.
double ladder_norm_squared(const StateSpec& spec);

std::vector<double> photon_number_distribution(const FockVector& state);

/// CSV with header `k,re,im,prob`.
void write_csv(std::ostream& out, const FockVector& state);

}  // namespace fockstat
