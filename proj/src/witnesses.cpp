#include "fockstat/witnesses.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "fockstat/combinatorics.hpp"
#include "fockstat/errors.hpp"
#include "moment_table.hpp"

namespace fockstat {

using detail::real_ext;

std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::kMandelQ: return "MandelQ";
    case WitnessKind::kAntibunching: return "Antibunching";
    case WitnessKind::kHosps: return "HOSPS";
    case WitnessKind::kHongMandel: return "HongMandel";
    case WitnessKind::kAgarwalTara: return "AgarwalTara";
    case WitnessKind::kKlyshko: return "Klyshko";
  }
  return "unknown";
}

std::optional<WitnessKind> parse_witness(std::string_view text) {
  std::string key;
  for (char c : text) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "mandelq" || key == "mandel" || key == "qm") return WitnessKind::kMandelQ;
  if (key == "antibunching" || key == "d" || key == "hoa") return WitnessKind::kAntibunching;
  if (key == "hosps" || key == "subpoissonian") return WitnessKind::kHosps;
  if (key == "hongmandel" || key == "squeezing" || key == "s") return WitnessKind::kHongMandel;
  if (key == "agarwaltara" || key == "a3") return WitnessKind::kAgarwalTara;
  if (key == "klyshko" || key == "b") return WitnessKind::kKlyshko;
  return std::nullopt;
}

bool witness_has_order(WitnessKind kind) {
  return kind != WitnessKind::kMandelQ && kind != WitnessKind::kAgarwalTara;
}

namespace {

real_ext det3(const std::array<std::array<real_ext, 3>, 3>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

std::array<std::array<real_ext, 3>, 3> hankel(real_ext x1, real_ext x2, real_ext x3, real_ext x4) {
  return {{{1, x1, x2}, {x1, x2, x3}, {x2, x3, x4}}};
}

}  // namespace

WitnessEvaluator::WitnessEvaluator(const StateSpec& spec, const SeriesControl& ctrl)
    : spec_(spec), moments_(std::make_unique<detail::MomentTable>(spec, ctrl)) {}

WitnessEvaluator::~WitnessEvaluator() = default;
WitnessEvaluator::WitnessEvaluator(WitnessEvaluator&&) noexcept = default;
WitnessEvaluator& WitnessEvaluator::operator=(WitnessEvaluator&&) noexcept = default;

WitnessResult WitnessEvaluator::make(WitnessKind kind, int order, double value) const {
  return {kind, order, value, spec_, value < 0.0};
}

const FockVector& WitnessEvaluator::state() {
  if (!state_) state_ = std::make_unique<FockVector>(build_state(spec_));
  return *state_;
}

double WitnessEvaluator::mean_photon_number() { return static_cast<double>(moments_->diagonal(1)); }

WitnessResult WitnessEvaluator::mandel_q() {
  const real_ext mean = moments_->diagonal(1);
  if (mean < 1e-14L) return make(WitnessKind::kMandelQ, 0, 0.0);
  // <(a^dag a)^2> - <a^dag a>^2 - <a^dag a> = <a^dag2 a^2> - <a^dag a>^2
  const real_ext excess = moments_->diagonal(2) - mean * mean;
  return make(WitnessKind::kMandelQ, 0, static_cast<double>(excess / mean));
}

WitnessResult WitnessEvaluator::antibunching(int l) {
  if (l < 2) throw DomainError("antibunching order l must be >= 2");
  const real_ext value = moments_->diagonal(l) - std::pow(moments_->diagonal(1), l);
  return make(WitnessKind::kAntibunching, l, static_cast<double>(value));
}

WitnessResult WitnessEvaluator::hosps(int l) {
  if (l < 2) throw DomainError("sub-Poissonian order l must be >= 2");
  const real_ext mean = moments_->diagonal(1);
  auto d = [&](int f) { return f == 1 ? real_ext{0} : moments_->diagonal(f) - std::pow(mean, f); };
  real_ext total = 0;
  for (int e = 0; e <= l; ++e) {
    const real_ext outer = static_cast<real_ext>(binomial(l, e)) * ((e % 2 == 0) ? 1 : -1) * std::pow(mean, l - e);
    for (int f = 1; f <= e; ++f) {
      total += static_cast<real_ext>(stirling2(e, f)) * outer * d(f);
    }
  }
  return make(WitnessKind::kHosps, l, static_cast<double>(total));
}

WitnessResult WitnessEvaluator::hong_mandel(int l) {
  if (l < 2 || l % 2 != 0) throw DomainError("Hong-Mandel order must be even and >= 2");
  const real_ext reference = pochhammer_half(l);
  const real_ext central = moments_->quadrature_central(l);
  return make(WitnessKind::kHongMandel, l, static_cast<double>((central - reference) / reference));
}

AgarwalTaraDeterminants WitnessEvaluator::agarwal_tara_determinants() {
  std::array<real_ext, 5> m{1, 0, 0, 0, 0};
  for (int i = 1; i <= 4; ++i) m[static_cast<std::size_t>(i)] = moments_->diagonal(i);
  // <(a^dag a)^j> = sum_f S2(j, f) <a^{dag f} a^f>
  std::array<real_ext, 5> mu{1, 0, 0, 0, 0};
  for (int j = 1; j <= 4; ++j) {
    for (int f = 1; f <= j; ++f) mu[static_cast<std::size_t>(j)] += static_cast<real_ext>(stirling2(j, f)) * m[static_cast<std::size_t>(f)];
  }
  return {static_cast<double>(det3(hankel(m[1], m[2], m[3], m[4]))),
          static_cast<double>(det3(hankel(mu[1], mu[2], mu[3], mu[4])))};
}

WitnessResult WitnessEvaluator::agarwal_tara() {
  const auto [det_m, det_mu] = agarwal_tara_determinants();
  if (std::abs(det_m) < 1e-20 && std::abs(det_mu) < 1e-20) return make(WitnessKind::kAgarwalTara, 0, 0.0);
  return make(WitnessKind::kAgarwalTara, 0, det_m / (det_mu - det_m));
}

WitnessResult WitnessEvaluator::klyshko(int m) {
  const WitnessResult r = klyshko_b(spec_, state(), m);
  return r;
}

WitnessResult WitnessEvaluator::evaluate(WitnessKind kind, int order) {
  switch (kind) {
    case WitnessKind::kMandelQ: return mandel_q();
    case WitnessKind::kAntibunching: return antibunching(order);
    case WitnessKind::kHosps: return hosps(order);
    case WitnessKind::kHongMandel: return hong_mandel(order);
    case WitnessKind::kAgarwalTara: return agarwal_tara();
    case WitnessKind::kKlyshko: return klyshko(order);
  }
  throw DomainError("unknown witness");
}

WitnessResult mandel_q(const StateSpec& spec, const SeriesControl& ctrl) {
  return WitnessEvaluator(spec, ctrl).mandel_q();
}

WitnessResult antibunching_d(const StateSpec& spec, int l, const SeriesControl& ctrl) {
  return WitnessEvaluator(spec, ctrl).antibunching(l);
}

WitnessResult higher_order_sub_poissonian(const StateSpec& spec, int l, const SeriesControl& ctrl) {
  return WitnessEvaluator(spec, ctrl).hosps(l);
}

WitnessResult hong_mandel_s(const StateSpec& spec, int l, const SeriesControl& ctrl) {
  return WitnessEvaluator(spec, ctrl).hong_mandel(l);
}

WitnessResult agarwal_tara_a3(const StateSpec& spec, const SeriesControl& ctrl) {
  return WitnessEvaluator(spec, ctrl).agarwal_tara();
}

WitnessResult klyshko_b(const StateSpec& spec, int m) { return klyshko_b(spec, build_state(spec), m); }

WitnessResult klyshko_b(const StateSpec& spec, const FockVector& state, int m) {
  if (m < 0) throw DomainError("Klyshko index m must be non-negative");
  if (static_cast<std::size_t>(m) + 2 >= state.dim()) {
    throw DimensionError("Klyshko B(" + std::to_string(m) + ") needs more than " + std::to_string(m + 2) +
                         " levels");
  }
  const auto p = [&](int k) { return std::norm(state[static_cast<std::size_t>(k)]); };
  const double value = (m + 2) * p(m) * p(m + 2) - (m + 1) * p(m + 1) * p(m + 1);
  return {WitnessKind::kKlyshko, m, value, spec, value < 0.0};
}

}  // namespace fockstat
