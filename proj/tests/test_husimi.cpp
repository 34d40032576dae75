#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fockstat/errors.hpp"
#include "fockstat/husimi.hpp"
#include "oracles.hpp"

using namespace fockstat;
using cplx = std::complex<double>;

TEST_CASE("point values") {
  CHECK(q_value(fock(0), 0.0) == doctest::Approx(1 / std::numbers::pi).epsilon(1e-14));
  CHECK(q_value(fock(1), 0.0) == 0.0);
  const StateSpec coh = coherent(1.3, 0.8);
  CHECK(q_value(coh, coh.alpha()) == doctest::Approx(1 / std::numbers::pi).epsilon(1e-13));
  // photon-added coherent state has an exact node at the origin
  CHECK(q_value(padfs(1, 0, 1.0), 0.0) < 1e-30);
}

TEST_CASE("closed form, overlap and dense oracle agree") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-3.5, 3.5);
  std::uniform_int_distribution<int> small(0, 2);
  std::uniform_real_distribution<double> mag(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const StateSpec s{small(rng) == 0 ? Family::kSubtracted : Family::kAdded, small(rng), small(rng) + 1, mag(rng),
                      coord(rng)};
    const cplx beta(coord(rng), coord(rng));
    const auto v = build_state(s);
    const double closed = q_value(s, beta);
    CHECK_MESSAGE(std::abs(closed - q_overlap(v, beta)) < 1e-10, s.label());
    CHECK_MESSAGE(std::abs(closed - oracle::husimi(oracle::state(s, 70), beta)) < 1e-10, s.label());
  }
}

TEST_CASE("rotation covariance") {
  const StateSpec a = psdfs(2, 1, 1.2, 0.0);
  StateSpec b = a;
  b.alpha_phase = 0.9;
  for (cplx beta : {cplx(0.3, -0.4), cplx(1.5, 1.0), cplx(-2.0, 0.2)}) {
    CHECK(std::abs(q_value(b, beta) - q_value(a, beta * std::polar(1.0, -0.9))) < 1e-10);
  }
}

TEST_CASE("grids") {
  const QGrid vac = q_grid(fock(0), {-3, 3, 61}, {-3, 3, 61});
  CHECK(vac.values.size() == 61u * 61u);
  CHECK(vac.at(30, 30) == doctest::Approx(1 / std::numbers::pi));
  CHECK(*std::max_element(vac.values.begin(), vac.values.end()) == vac.at(30, 30));
  // minimum is on a corner, all four tie; the tie rule picks phase pi/4
  const auto vmin = q_min_scan(vac);
  CHECK(std::abs(vmin.beta - cplx(3, 3)) < 1e-12);

  for (Family family : {Family::kAdded, Family::kSubtracted}) {
    for (int photons = 0; photons <= 2; ++photons) {
      const StateSpec s{family, photons, 1, std::sqrt(2.0), std::numbers::pi / 4};
      const auto axis = default_axis(s);
      CHECK(axis.count == 121);
      CHECK(axis.max == doctest::Approx(std::sqrt(2.0) + 4));
      const QGrid g = q_grid(s, axis, axis);
      CHECK(std::abs(g.integral() - 1.0) < 1e-3);
      for (double q : g.values) {
        CHECK(q >= 0.0);
        CHECK(q <= 1 / std::numbers::pi + 1e-12);
      }
    }
  }

  const QGrid one = q_grid(fock(1), default_axis(fock(1)), default_axis(fock(1)));
  const auto m = q_min_scan(one);
  CHECK(std::abs(m.beta) < 1e-12);
  CHECK(m.q < 1e-6);

  CHECK_THROWS_AS(q_grid(fock(1), {-1, 1, 1}, {-1, 1, 5}), DomainError);
}

TEST_CASE("grid centroid sits at <a>") {
  // the first moment of Q is the anti-normally ordered <a> = <a>
  const StateSpec s = padfs(1, 1, std::sqrt(2.0), std::numbers::pi / 4);
  const auto axis = default_axis(s);
  const QGrid g = q_grid(s, axis, axis);
  cplx centroid = 0;
  for (int j = 0; j < g.im.count; ++j) {
    for (int i = 0; i < g.re.count; ++i) centroid += g.beta(i, j) * g.at(i, j) * g.cell_area();
  }
  CHECK(std::abs(centroid - moment_closed_form(s, 0, 1).value) < 1e-3);
  CHECK(std::abs(std::arg(centroid) - std::numbers::pi / 4) < 1e-6);
}

TEST_CASE("photon-added coherent state node") {
  const StateSpec s = padfs(1, 0, 1.0);
  const QGrid g = q_grid(s, {-4, 4, 81}, {-4, 4, 81});
  const auto m = q_min_scan(g);
  CHECK(std::abs(m.beta) < 1e-12);
  CHECK(m.q < 1e-30);
}

TEST_CASE("q csv") {
  const QGrid g = q_grid(fock(0), {-1, 1, 2}, {0, 1, 2});
  std::ostringstream out;
  write_csv(out, g);
  const std::string text = out.str();
  CHECK(text.rfind("re,im,q\n-1,0,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
