#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "fockstat/moments.hpp"
#include "fockstat/state.hpp"

namespace fockstat {

namespace detail {
class MomentTable;
}

enum class WitnessKind { kMandelQ, kAntibunching, kHosps, kHongMandel, kAgarwalTara, kKlyshko };

std::string_view to_string(WitnessKind kind);
/// Case-insensitive; accepts the names printed by to_string plus a few aliases.
std::optional<WitnessKind> parse_witness(std::string_view text);
/// Whether the witness takes an order argument (l, or m for Klyshko).
bool witness_has_order(WitnessKind kind);

/// Every witness signals nonclassicality by a negative value.
struct WitnessResult {
  WitnessKind kind{};
  int order = 0;
  double value = 0.0;
  StateSpec spec;
  bool nonclassical = false;
};

struct AgarwalTaraDeterminants {
  double det_m = 0.0;   // Hankel matrix of normal-ordered moments <a^{dag i} a^i>
  double det_mu = 0.0;  // Hankel matrix of number moments <(a^dag a)^j>
};

/// Evaluates witnesses for one state, sharing the moment series between them.
/// Confined to one thread.
class WitnessEvaluator {
 public:
  explicit WitnessEvaluator(const StateSpec& spec, const SeriesControl& ctrl = {});
  ~WitnessEvaluator();
  WitnessEvaluator(WitnessEvaluator&&) noexcept;
  WitnessEvaluator& operator=(WitnessEvaluator&&) noexcept;

  const StateSpec& spec() const { return spec_; }

  WitnessResult mandel_q();
  WitnessResult antibunching(int l);
  WitnessResult hosps(int l);
  WitnessResult hong_mandel(int l);
  WitnessResult agarwal_tara();
  WitnessResult klyshko(int m);
  WitnessResult evaluate(WitnessKind kind, int order);

  AgarwalTaraDeterminants agarwal_tara_determinants();
  /// <a^dag a>
  double mean_photon_number();

 private:
  WitnessResult make(WitnessKind kind, int order, double value) const;
  const FockVector& state();

  StateSpec spec_;
  std::unique_ptr<detail::MomentTable> moments_;
  std::unique_ptr<FockVector> state_;
};

/// Q_M = (<(a^dag a)^2> - <a^dag a>^2 - <a^dag a>) / <a^dag a>; 0 when <a^dag a> < 1e-14.
WitnessResult mandel_q(const StateSpec& spec, const SeriesControl& ctrl = {});
/// d(l-1) = <a^{dag l} a^l> - <a^dag a>^l, l >= 2.
WitnessResult antibunching_d(const StateSpec& spec, int l, const SeriesControl& ctrl = {});
/// D_h(l-1) = sum_{e=0}^{l} sum_{f=1}^{e} S2(e,f) C(l,e) (-1)^e d(f-1) <N>^{l-e}, l >= 2.
WitnessResult higher_order_sub_poissonian(const StateSpec& spec, int l, const SeriesControl& ctrl = {});
/// S(l) = (<(Delta X)^l> - (1/2)_{l/2}) / (1/2)_{l/2}, even l.
WitnessResult hong_mandel_s(const StateSpec& spec, int l, const SeriesControl& ctrl = {});
/// A3 = det m / (det mu - det m); 0 when both determinants are below 1e-20.
WitnessResult agarwal_tara_a3(const StateSpec& spec, const SeriesControl& ctrl = {});
/// B(m) = (m+2) p_m p_{m+2} - (m+1) p_{m+1}^2 from the amplitude vector.
WitnessResult klyshko_b(const StateSpec& spec, int m);
WitnessResult klyshko_b(const StateSpec& spec, const FockVector& state, int m);

}  // namespace fockstat
