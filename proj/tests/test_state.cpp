#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fockstat/errors.hpp"
#include "fockstat/state.hpp"
#include "oracles.hpp"

using namespace fockstat;
using cplx = std::complex<double>;

namespace {

double max_diff(const FockVector& a, const oracle::CVector& b) {
  double worst = 0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const cplx ref = k < static_cast<std::size_t>(b.size()) ? b(static_cast<Eigen::Index>(k)) : cplx{};
    worst = std::max(worst, std::abs(a[k] - ref));
  }
  return worst;
}

bool is_basis_state(const FockVector& v, std::size_t level) {
  for (std::size_t k = 0; k < v.dim(); ++k) {
    const double expect = k == level ? 1.0 : 0.0;
    if (std::abs(std::abs(v[k]) - expect) > 1e-14) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(padfs(-1, 0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(padfs(1, -1, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(padfs(1, 1, -0.5).validate(), DomainError);
  CHECK_THROWS_AS(padfs(1, 1, NAN).validate(), DomainError);
  CHECK_THROWS_AS(psdfs(2, 1, 0.0).validate(), DegenerateStateError);
  CHECK_NOTHROW(psdfs(2, 1, 0.1).validate());
  CHECK(parse_family("PADFS") == Family::kAdded);
  CHECK(parse_family("subtracted") == Family::kSubtracted);
  CHECK_THROWS_AS(parse_family("squeezed"), UsageError);
}

TEST_CASE("choose_dimension") {
  CHECK(choose_dimension(coherent(0.0)) >= 1);
  CHECK(choose_dimension(padfs(2, 1, 0.0)) >= 4);
  // Poisson(4) tail beyond D-1 must be below the tolerance
  const int d = choose_dimension(coherent(2.0), 1e-12);
  const auto p = oracle::poisson(4.0, 200);
  double tail = 0;
  for (int k = d; k < 200; ++k) tail += p[static_cast<std::size_t>(k)];
  CHECK(tail < 1e-12);
  double tail_before = 0;
  for (int k = d - 1; k < 200; ++k) tail_before += p[static_cast<std::size_t>(k)];
  CHECK(tail_before >= 1e-12);
  // monotone in the tolerance
  const StateSpec s = padfs(2, 1, 1.5, 0.3);
  int prev = 0;
  for (double tol : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14}) {
    const int dim = choose_dimension(s, tol);
    CHECK(dim >= prev);
    prev = dim;
  }
  CHECK_THROWS_AS(choose_dimension(s, 0.0), DomainError);
}

TEST_CASE("build_dfs") {
  CHECK(is_basis_state(build_dfs(0, 0.0, 4), 0));
  CHECK(is_basis_state(build_dfs(1, 0.0, 4), 1));
  CHECK_THROWS_AS(build_dfs(3, 0.0, 3), DimensionError);
  CHECK_THROWS_AS(build_dfs(0, 2.0, 5), DimensionError);

  const auto v = build_dfs(1, 0.5, 30);
  CHECK(max_diff(v, oracle::displaced_fock(1, 0.5, 30)) < 1e-12);
  const cplx alpha = std::polar(1.3, 0.7);
  for (int n = 0; n <= 3; ++n) CHECK(max_diff(build_dfs(n, alpha, 40), oracle::displaced_fock(n, alpha, 40)) < 1e-12);

  // coherent amplitudes e^{-|a|^2/2} a^k / sqrt(k!)
  const auto c = build_dfs(0, alpha, 40);
  for (int k = 0; k < 40; ++k) {
    const cplx expect = std::exp(-std::norm(alpha) / 2) * std::pow(alpha, k) / std::sqrt(std::tgamma(k + 1.0));
    CHECK(std::abs(c[static_cast<std::size_t>(k)] - expect) < 1e-14);
  }
}

TEST_CASE("displacement is unitary") {
  const cplx alpha = std::polar(1.1, -0.4);
  for (int n = 0; n <= 4; ++n) {
    for (int m = 0; m <= 4; ++m) {
      const auto a = build_dfs(n, alpha, 50);
      const auto b = build_dfs(m, alpha, 50);
      cplx dot = 0;
      for (std::size_t k = 0; k < 50; ++k) dot += std::conj(a[k]) * b[k];
      CHECK(std::abs(dot - (n == m ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("build_padfs") {
  CHECK(is_basis_state(build_padfs(padfs(1, 0, 0.0), 5), 1));
  CHECK(is_basis_state(build_padfs(padfs(2, 1, 0.0), 6), 3));

  // photon-added coherent state: <N> = (|a|^4 + 3|a|^2 + 1) / (1 + |a|^2) = 2.5 at alpha = 1
  const auto pacs = build_state(padfs(1, 0, 1.0));
  double mean = 0;
  for (std::size_t k = 0; k < pacs.dim(); ++k) mean += k * std::norm(pacs[k]);
  CHECK(mean == doctest::Approx(2.5).epsilon(1e-12));

  // a^dag|alpha> moves Poisson weight e^{-1}/(k-1)! up one level with factor k: p_k = k^2 e^{-1} / k! / (1 + |a|^2)
  const auto p = photon_number_distribution(pacs);
  CHECK(p[0] == 0.0);
  for (int k = 1; k < 20; ++k) {
    CHECK(p[static_cast<std::size_t>(k)] ==
          doctest::Approx(k * k * std::exp(-1.0) / std::tgamma(k + 1.0) / 2.0).epsilon(1e-12));
  }

  // lowest occupied level is u
  const auto s = build_state(padfs(3, 2, 1.2, 0.5));
  for (int k = 0; k < 3; ++k) CHECK(s[static_cast<std::size_t>(k)] == cplx{});
}

TEST_CASE("build_psdfs") {
  CHECK(is_basis_state(build_psdfs(psdfs(1, 1, 0.0), 4), 0));
  CHECK(is_basis_state(build_psdfs(psdfs(1, 2, 0.0), 4), 1));
  CHECK_THROWS_AS(build_psdfs(psdfs(2, 1, 0.0), 4), DegenerateStateError);
  CHECK_THROWS_AS(build_state(psdfs(3, 0, 0.0)), DegenerateStateError);
}

TEST_CASE("constructed states match the matrix-exponential oracle") {
  for (Family family : {Family::kAdded, Family::kSubtracted}) {
    for (int photons = 0; photons <= 3; ++photons) {
      for (int n = 0; n <= 3; ++n) {
        for (double mag : {0.3, 1.0, 2.0}) {
          const StateSpec s{family, photons, n, mag, 0.9};
          const auto v = build_state(s);
          const auto ref = oracle::state(s, static_cast<int>(v.dim()));
          // the two can differ by a global phase only if both normalize differently; they should not
          CHECK_MESSAGE(max_diff(v, ref) < 1e-11, s.label());
        }
      }
    }
  }
}

TEST_CASE("reduction chain") {
  const cplx alpha = std::polar(0.8, 1.2);
  for (int n = 0; n <= 3; ++n) {
    const auto dfs = build_dfs(n, alpha, 40);
    const auto added = build_padfs(displaced_fock(n, 0.8, 1.2), 40);
    const auto sub = build_psdfs(psdfs(0, n, 0.8, 1.2), 40);
    for (std::size_t k = 0; k < 40; ++k) {
      CHECK(std::abs(added[k] - dfs[k]) < 1e-12);
      CHECK(std::abs(sub[k] - dfs[k]) < 1e-12);
    }
  }
}

TEST_CASE("phase covariance") {
  for (Family family : {Family::kAdded, Family::kSubtracted}) {
    const StateSpec base{family, 2, 1, 1.4, 0.0};
    StateSpec rotated = base;
    rotated.alpha_phase = 0.6;
    const auto a = build_state(base, 50);
    const auto b = build_state(rotated, 50);
    // c_k(theta) = e^{i k theta} c_k(0) up to one global phase
    std::size_t ref = 0;
    while (std::abs(a[ref]) < 1e-3) ++ref;
    const cplx global = b[ref] / (a[ref] * std::polar(1.0, ref * 0.6));
    for (std::size_t k = 0; k < 50; ++k) {
      CHECK(std::abs(b[k] - global * std::polar(1.0, k * 0.6) * a[k]) < 1e-12);
      CHECK(std::abs(std::norm(a[k]) - std::norm(b[k])) < 1e-12);
    }
  }
}

TEST_CASE("normalization and tail bound") {
  for (Family family : {Family::kAdded, Family::kSubtracted}) {
    for (double mag : {0.0, 0.5, 2.0, 5.0}) {
      const StateSpec s{family, 2, 3, mag, 0.2};
      const auto v = build_state(s);
      CHECK(v.tail_bound() <= kMaxTailBound);
      CHECK(std::abs(v.norm_squared() - 1.0) <= v.tail_bound());
    }
  }
}

TEST_CASE("ladder norm versus oracle") {
  // ||a^{dag u} D|n>||^2 from dense matrices, unnormalized
  for (Family family : {Family::kAdded, Family::kSubtracted}) {
    const StateSpec s{family, 2, 1, 1.3, 0.4};
    const int big = 80;
    oracle::CVector v = oracle::displaced_fock(1, s.alpha(), big);
    const auto a = oracle::lowering(big);
    for (int i = 0; i < 2; ++i) v = family == Family::kAdded ? oracle::CVector(a.adjoint() * v) : oracle::CVector(a * v);
    CHECK(ladder_norm_squared(s) == doctest::Approx(v.squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("photon_number_distribution") {
  const auto one = photon_number_distribution(build_state(fock(1)));
  CHECK(one[1] == doctest::Approx(1.0));
  CHECK(one[0] == 0.0);
  const auto coh = photon_number_distribution(build_state(coherent(1.0)));
  CHECK(coh[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  double total = 0;
  for (double p : coh) total += p;
  CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("state csv") {
  std::ostringstream out;
  write_csv(out, build_dfs(1, 0.0, 3));
  CHECK(out.str() == "k,re,im,prob\n0,0,0,0\n1,1,0,1\n2,0,0,0\n");
}
