#include <doctest.h>

#include <numbers>
#include <random>

#include "hopfduet/errors.hpp"
#include "hopfduet/states.hpp"

using namespace hopfduet;

TEST_CASE("angle wrapping keeps exact representatives") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(std::numbers::pi) == std::numbers::pi);
  CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2 * std::numbers::pi));
  CHECK(wrap_angle(-1e-9) < 2 * std::numbers::pi);
  CHECK(wrap_angle(-1e-9) >= 0.0);
}

TEST_CASE("polar/reduced chart maps") {
  CHECK(polar_to_reduced({1.0, 1.0, 0.0, 0.0}).s == 2.0);
  CHECK(polar_to_reduced({1.0, 1.0, 0.0, 0.0}).d == 0.0);
  const auto r = polar_to_reduced({3.0, 1.0, 0.2, 0.5});
  CHECK(r.s == 4.0);
  CHECK(r.d == 2.0);
  CHECK(r.dphi == doctest::Approx(0.3));
  const auto p = reduced_to_polar({4.0, 2.0, 0.3});
  CHECK(p.r1 == 3.0);
  CHECK(p.r2 == 1.0);
}

TEST_CASE("round trip is exact on random states") {
  std::mt19937 gen(7u);
  std::uniform_real_distribution<double> radius(0.01, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 6.28);
  for (int k = 0; k < 100; ++k) {
    PolarState ps{radius(gen), radius(gen), angle(gen), angle(gen)};
    const auto red = polar_to_reduced(ps);
    const auto back = reduced_to_polar(red);
    CHECK(back.r1 == doctest::Approx(ps.r1).epsilon(1e-15));
    CHECK(back.r2 == doctest::Approx(ps.r2).epsilon(1e-15));
    const auto z = to_cartesian(ps);
    const auto ps2 = to_polar(z);
    CHECK(ps2.r1 == doctest::Approx(ps.r1).epsilon(1e-12));
    CHECK(ps2.phi1 == doctest::Approx(wrap_angle(ps.phi1)).epsilon(1e-12));
  }
}

TEST_CASE("invalid reduced states are rejected") {
  CHECK_THROWS_AS((void)reduced_to_polar({1.0, 2.0, 0.0}), DomainError);
  CHECK_THROWS_AS((void)to_polar({{0.0, 0.0}, {0.0, 0.0}}), SingularChartError);
}
