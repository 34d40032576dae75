#include "fockstat/state.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

#include "fockstat/errors.hpp"
#include "fockstat/format.hpp"
#include "polar.hpp"

namespace fockstat {

using detail::complex_ext;
using detail::PolarBase;
using detail::PolarTerm;
using detail::real_ext;

std::string_view to_string(Family family) {
  return family == Family::kAdded ? "padfs" : "psdfs";
}

Family parse_family(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "padfs" || lower == "added" || lower == "add") return Family::kAdded;
  if (lower == "psdfs" || lower == "subtracted" || lower == "sub") return Family::kSubtracted;
  throw UsageError("unknown state family '" + std::string(text) + "' (expected padfs or psdfs)");
}

void StateSpec::validate() const {
  if (photons < 0) throw DomainError("photon count must be non-negative");
  if (fock_n < 0) throw DomainError("Fock index must be non-negative");
  if (!std::isfinite(alpha_mag) || alpha_mag < 0.0) {
    throw DomainError("displacement magnitude must be finite and non-negative");
  }
  if (!std::isfinite(alpha_phase)) throw DomainError("displacement phase must be finite");
  if (family == Family::kSubtracted && alpha_mag == 0.0 && photons > fock_n) {
    throw DegenerateStateError("a^" + std::to_string(photons) + "|" + std::to_string(fock_n) +
                               "> is the zero vector");
  }
}

std::string StateSpec::label() const {
  std::ostringstream os;
  os << (family == Family::kAdded ? "PADFS(u=" : "PSDFS(v=") << photons << ", n=" << fock_n
     << ", |alpha|=" << format_double(alpha_mag) << ", theta=" << format_double(alpha_phase)
     << ")";
  return os.str();
}

StateSpec padfs(int u, int n, double alpha_mag, double alpha_phase) {
  return {Family::kAdded, u, n, alpha_mag, alpha_phase};
}
StateSpec psdfs(int v, int n, double alpha_mag, double alpha_phase) {
  return {Family::kSubtracted, v, n, alpha_mag, alpha_phase};
}
StateSpec coherent(double alpha_mag, double alpha_phase) {
  return padfs(0, 0, alpha_mag, alpha_phase);
}
StateSpec fock(int n) { return padfs(0, n, 0.0); }
StateSpec displaced_fock(int n, double alpha_mag, double alpha_phase) {
  return padfs(0, n, alpha_mag, alpha_phase);
}

FockVector::FockVector(std::vector<std::complex<double>> amplitudes, double tail_bound)
    : amplitudes_(std::move(amplitudes)), tail_bound_(tail_bound) {
  if (amplitudes_.empty()) throw DimensionError("FockVector needs at least one level");
}

double FockVector::norm_squared() const {
  double sum = 0.0;
  for (const auto& c : amplitudes_) sum += std::norm(c);
  return sum;
}

std::size_t FockVector::support() const {
  for (std::size_t k = amplitudes_.size(); k > 0; --k) {
    if (std::norm(amplitudes_[k - 1]) > 1e-20) return k;
  }
  return 0;
}

namespace {

// Unnormalized amplitudes of a^{dag u} D(alpha)|n> (or a^v D(alpha)|n>) for
// levels 0..size-1, plus the squared norm of the untruncated vector.
struct CollectedLevels {
  std::vector<complex_ext> amplitudes;
  real_ext norm_squared = 0;
};

// Amplitude at output level k, collected from the double sum over (p, m):
//   c_k = e^{-|a|^2/2}/sqrt(n!) sum_p C(n,p) (-a*)^{n-p} a^m/m! * W(k),  m = j - p,
// with j the level of D(alpha)|n> feeding level k (j = k - u or j = k + v) and
// W = sqrt(k!) for addition, j!/sqrt(k!) for subtraction.
complex_ext collect_level(Family family, int photons, int n, const PolarBase& alpha, real_ext alpha_mag,
                          int k) {
  const int j = family == Family::kAdded ? k - photons : k + photons;
  if (j < 0) return {0, 0};
  const PolarBase minus_alpha_conj = alpha.conj().negated();
  const real_ext weight = family == Family::kAdded
                              ? detail::log_factorial_ext(k) / 2
                              : detail::log_factorial_ext(j) - detail::log_factorial_ext(k) / 2;
  const real_ext common = -alpha_mag * alpha_mag / 2 - detail::log_factorial_ext(n) / 2 + weight;

  complex_ext sum{0, 0};
  for (int p = 0; p <= std::min(n, j); ++p) {
    PolarTerm term;
    term.times_exp(common + detail::log_binomial_ext(n, p))
        .times_pow(minus_alpha_conj, n - p)
        .times_pow(alpha, j - p)
        .over_factorial(j - p);
    sum += term.value();
  }
  return sum;
}

CollectedLevels collect(const StateSpec& spec, int min_levels) {
  const PolarBase alpha = PolarBase::polar(spec.alpha_mag, spec.alpha_phase);
  const real_ext mag = spec.alpha_mag;
  const int spread = spec.fock_n + spec.photons;
  const double settle_after =
      spread + spec.alpha_mag * spec.alpha_mag + 6.0 * spec.alpha_mag * std::sqrt(spread + 1.0) + 10.0;
  constexpr int kMaxLevels = 20000;
  constexpr int kSmallRun = 5;

  CollectedLevels out;
  int small_run = 0;
  for (int k = 0;; ++k) {
    if (k >= kMaxLevels) {
      throw ConvergenceError("Fock amplitudes did not decay within 20000 levels", {0.0, 0.0}, k);
    }
    const complex_ext c = collect_level(spec.family, spec.photons, spec.fock_n, alpha, mag, k);
    out.amplitudes.push_back(c);
    const real_ext p = std::norm(c);
    out.norm_squared += p;
    small_run = (p <= 1e-24L * out.norm_squared) ? small_run + 1 : 0;
    if (k + 1 >= min_levels && k > settle_after && small_run >= kSmallRun) break;
  }
  return out;
}

FockVector finalize(const std::vector<complex_ext>& levels, real_ext norm_squared, int dim) {
  if (std::sqrt(norm_squared) < 1e-30L) {
    throw DegenerateStateError("state vanishes before normalization");
  }
  real_ext tail = 0;
  for (std::size_t k = levels.size(); k > static_cast<std::size_t>(dim); --k) {
    tail += std::norm(levels[k - 1]);
  }
  tail /= norm_squared;
  if (tail > kMaxTailBound) {
    throw DimensionError("truncation at " + std::to_string(dim) + " levels drops probability " +
                         format_double(static_cast<double>(tail)));
  }
  const real_ext scale = 1 / std::sqrt(norm_squared);
  std::vector<std::complex<double>> amps(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim && static_cast<std::size_t>(k) < levels.size(); ++k) {
    const complex_ext c = levels[static_cast<std::size_t>(k)] * scale;
    amps[static_cast<std::size_t>(k)] = {static_cast<double>(c.real()), static_cast<double>(c.imag())};
  }
  return FockVector(std::move(amps), static_cast<double>(tail) + 1e-14);
}

// Second construction path: apply the ladder matrices to the DFS amplitudes and
// compare with the per-level collection. A mismatch is a programming error.
void check_against_ladder_path(const StateSpec& spec, const std::vector<complex_ext>& collected, int dim) {
  const int extra = spec.family == Family::kSubtracted ? spec.photons : 0;
  const PolarBase alpha = PolarBase::polar(spec.alpha_mag, spec.alpha_phase);
  std::vector<complex_ext> v(static_cast<std::size_t>(dim + extra));
  for (int k = 0; k < dim + extra; ++k) {
    v[static_cast<std::size_t>(k)] = collect_level(Family::kAdded, 0, spec.fock_n, alpha, spec.alpha_mag, k);
  }
  for (int step = 0; step < spec.photons; ++step) {
    std::vector<complex_ext> w(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (spec.family == Family::kAdded) {
        if (k > 0) w[k] = std::sqrt(static_cast<real_ext>(k)) * v[k - 1];
      } else if (k + 1 < v.size()) {
        w[k] = std::sqrt(static_cast<real_ext>(k + 1)) * v[k + 1];
      }
    }
    v = std::move(w);
  }
  real_ext scale = 0;
  for (int k = 0; k < dim; ++k) scale = std::max(scale, std::abs(collected[static_cast<std::size_t>(k)]));
  for (int k = 0; k < dim; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    if (std::abs(collected[idx] - v[idx]) > 1e-10L * scale + 1e-300L) {
      throw std::logic_error("ladder-operator and per-level constructions disagree at level " +
                             std::to_string(k) + " for " + spec.label());
    }
  }
}

FockVector build_ladder_state(const StateSpec& spec, int dim) {
  spec.validate();
  if (dim <= 0) throw DimensionError("dimension must be positive");
  if (spec.family == Family::kSubtracted && spec.alpha_mag == 0.0) {
    // a^v|n> is proportional to |n - v>.
    const int level = spec.fock_n - spec.photons;
    if (dim <= level) throw DimensionError("dimension must exceed " + std::to_string(level));
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(dim));
    amps[static_cast<std::size_t>(level)] = 1.0;
    return FockVector(std::move(amps), 0.0);
  }
  const CollectedLevels levels = collect(spec, dim);
  if (std::sqrt(levels.norm_squared) >= 1e-30L) check_against_ladder_path(spec, levels.amplitudes, dim);
  return finalize(levels.amplitudes, levels.norm_squared, dim);
}

}  // namespace

int default_dimension(const StateSpec& spec) {
  const double a = spec.alpha_mag;
  return spec.fock_n + spec.photons + static_cast<int>(std::ceil(a * a + 10.0 * a + 20.0));
}

int choose_dimension(const StateSpec& spec, double tail_tol) {
  if (!(tail_tol > 0.0)) throw DomainError("tail tolerance must be positive");
  spec.validate();
  if (spec.family == Family::kSubtracted && spec.alpha_mag == 0.0) {
    return spec.fock_n - spec.photons + 1;
  }
  const CollectedLevels levels = collect(spec, 1);
  if (std::sqrt(levels.norm_squared) < 1e-30L) throw DegenerateStateError("state vanishes");
  // suffix[D] = probability carried by levels >= D
  const std::size_t size = levels.amplitudes.size();
  std::vector<real_ext> suffix(size + 1, 0);
  for (std::size_t k = size; k > 0; --k) {
    suffix[k - 1] = suffix[k] + std::norm(levels.amplitudes[k - 1]) / levels.norm_squared;
  }
  for (std::size_t d = 1; d <= size; ++d) {
    if (suffix[d] < tail_tol) return static_cast<int>(d);
  }
  return static_cast<int>(size);
}

FockVector build_dfs(int n, std::complex<double> alpha, int dim) {
  if (n < 0) throw DomainError("Fock index must be non-negative");
  if (dim <= n) throw DimensionError("dimension must exceed the Fock index");
  return build_ladder_state(displaced_fock(n, std::abs(alpha), std::arg(alpha)), dim);
}

FockVector build_padfs(const StateSpec& spec, int dim) {
  if (spec.family != Family::kAdded) throw DomainError("build_padfs needs a photon-added spec");
  if (dim <= spec.photons) throw DimensionError("dimension must exceed the added photon count");
  return build_ladder_state(spec, dim);
}

FockVector build_psdfs(const StateSpec& spec, int dim) {
  if (spec.family != Family::kSubtracted) throw DomainError("build_psdfs needs a photon-subtracted spec");
  return build_ladder_state(spec, dim);
}

FockVector build_state(const StateSpec& spec, int dim) {
  return spec.family == Family::kAdded ? build_padfs(spec, dim) : build_psdfs(spec, dim);
}

FockVector build_state(const StateSpec& spec) { return build_state(spec, default_dimension(spec)); }

double ladder_norm_squared(const StateSpec& spec) {
  if (spec.photons < 0 || spec.fock_n < 0) throw DomainError("negative photon count or Fock index");
  return static_cast<double>(collect(spec, 1).norm_squared);
}

std::vector<double> photon_number_distribution(const FockVector& state) {
  std::vector<double> p;
  p.reserve(state.dim());
  for (const auto& c : state.amplitudes()) p.push_back(std::norm(c));
  return p;
}

void write_csv(std::ostream& out, const FockVector& state) {
  out << "k,re,im,prob\n";
  for (std::size_t k = 0; k < state.dim(); ++k) {
    const auto c = state[k];
    out << k << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << ','
        << format_double(std::norm(c)) << '\n';
  }
}

}  // namespace fockstat
