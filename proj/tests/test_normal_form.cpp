#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hopfduet/errors.hpp"
#include "hopfduet/normal_form.hpp"
#include "test_support.hpp"

using namespace hopfduet;
using testsupport::generic_coefficients;
using testsupport::random_complex;
using testsupport::uniform;

namespace {

// Chain-rule push-forward of the cartesian field into the polar chart.
nf::PolarDeriv polar_oracle(const PolarState& ps, const UnfoldingParams& p,
                            const NormalFormCoefficients& c) {
  const CartesianState z = to_cartesian(ps);
  const CartesianState dz = nf::eval_cartesian(z, p, c);
  nf::PolarDeriv d;
  d.dr1 = (std::conj(z.z1) * dz.z1).real() / ps.r1;
  d.dr2 = (std::conj(z.z2) * dz.z2).real() / ps.r2;
  d.dphi1 = (std::conj(z.z1) * dz.z1).imag() / (ps.r1 * ps.r1);
  d.dphi2 = (std::conj(z.z2) * dz.z2).imag() / (ps.r2 * ps.r2);
  return d;
}

PolarState random_polar() {
  return {uniform(0.05, 1.5), uniform(0.05, 1.5), uniform(0.0, 6.28), uniform(0.0, 6.28)};
}

}  // namespace

TEST_CASE("origin is a fixed point") {
  const auto c = generic_coefficients();
  for (double eps : {0.0, 0.3, 2.0}) {
    const auto d = nf::eval_cartesian({{0, 0}, {0, 0}}, {uniform(-1, 1), eps}, c);
    CHECK(std::abs(d.z1) == 0.0);
    CHECK(std::abs(d.z2) == 0.0);
  }
}

TEST_CASE("uncoupled limit cycle has vanishing radial derivative") {
  const auto c = generic_coefficients();
  const double lambda = 0.7;
  const double r = std::sqrt(-lambda / c.alpha01.real());
  const auto d = nf::eval_cartesian({{r, 0.0}, {0, 0}}, {lambda, 0.0}, c);
  // radial derivative = Re(conj(z1) dz1)/r
  CHECK((std::conj(Complex{r, 0.0}) * d.z1).real() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("S2 equivariance is exact") {
  const auto c = generic_coefficients();
  for (int k = 0; k < 100; ++k) {
    const CartesianState s{random_complex(), random_complex()};
    const UnfoldingParams p{uniform(-0.5, 0.5), uniform(0.0, 0.6)};
    const auto d = nf::eval_cartesian(s, p, c);
    const auto d_swapped = nf::eval_cartesian({s.z2, s.z1}, p, c);
    CHECK(d.z1 == d_swapped.z2);
    CHECK(d.z2 == d_swapped.z1);
  }
}

TEST_CASE("rotational equivariance to 1e-12 relative") {
  const auto c = generic_coefficients();
  for (int k = 0; k < 100; ++k) {
    const CartesianState s{random_complex(), random_complex()};
    const UnfoldingParams p{uniform(-0.5, 0.5), uniform(0.0, 0.6)};
    const Complex rot = std::polar(1.0, uniform(0.0, 6.28));
    const auto d = nf::eval_cartesian(s, p, c);
    const auto d_rot = nf::eval_cartesian({rot * s.z1, rot * s.z2}, p, c);
    const double scale = std::abs(d.z1) + std::abs(d.z2) + 1e-30;
    CHECK(std::abs(d_rot.z1 - rot * d.z1) / scale < 1e-12);
    CHECK(std::abs(d_rot.z2 - rot * d.z2) / scale < 1e-12);
  }
}

TEST_CASE("polar evaluation matches the cartesian push-forward") {
  const auto c = generic_coefficients();
  for (int k = 0; k < 200; ++k) {
    const PolarState ps = random_polar();
    const UnfoldingParams p{uniform(-0.5, 0.5), uniform(0.0, 0.6)};
    const auto got = nf::eval_polar(ps, p, c);
    const auto want = polar_oracle(ps, p, c);
    const double scale =
        std::abs(want.dr1) + std::abs(want.dr2) + std::abs(want.dphi1) + std::abs(want.dphi2);
    CHECK(std::abs(got.dr1 - want.dr1) / scale < 1e-10);
    CHECK(std::abs(got.dr2 - want.dr2) / scale < 1e-10);
    CHECK(std::abs(got.dphi1 - want.dphi1) / scale < 1e-10);
    CHECK(std::abs(got.dphi2 - want.dphi2) / scale < 1e-10);
  }
}

TEST_CASE("reduced evaluation matches the polar push-forward") {
  const auto c = generic_coefficients();
  for (int k = 0; k < 200; ++k) {
    const PolarState ps = random_polar();
    const UnfoldingParams p{uniform(-0.5, 0.5), uniform(0.0, 0.6)};
    const auto pd = nf::eval_polar(ps, p, c);
    const auto got = nf::eval_reduced(polar_to_reduced(ps), p, c);
    const double ds = pd.dr1 + pd.dr2;
    const double dd = pd.dr1 - pd.dr2;
    const double ddphi = pd.dphi2 - pd.dphi1;
    const double scale = std::abs(ds) + std::abs(dd) + std::abs(ddphi) + 1e-30;
    CHECK(std::abs(got.ds - ds) / scale < 1e-10);
    CHECK(std::abs(got.dd - dd) / scale < 1e-10);
    CHECK(std::abs(got.ddphi - ddphi) / scale < 1e-10);
  }
}

TEST_CASE("equal amplitudes and phases move together") {
  const auto c = generic_coefficients();
  const PolarState ps{0.8, 0.8, 1.1, 1.1};
  const auto d = nf::eval_polar(ps, {0.2, 0.3}, c);
  CHECK(d.dr1 == doctest::Approx(d.dr2).epsilon(1e-15));
  CHECK(d.dphi1 == doctest::Approx(d.dphi2).epsilon(1e-15));
}

TEST_CASE("f_r reduces to the beta0 term when only beta0 is set") {
  auto c = generic_coefficients();
  c.alpha_eps = {Complex{0, 0}, Complex{0, 0}, Complex{0, 0}, Complex{0, 0}};
  c.beta_eps = {Complex{0.4, -0.7}, Complex{0, 0}, Complex{0, 0}, Complex{0, 0}};
  const double r1 = 0.9, r2 = 1.4, dphi = 0.77;
  const double want = r2 * (0.4 * std::cos(dphi) + 0.7 * std::sin(dphi));
  CHECK(nf::coupling_fr(r1, r2, dphi, c) == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("invariant subspaces: d and dphi stay zero on Xi+") {
  const auto c = generic_coefficients();
  for (double s : {0.2, 0.9, 1.7}) {
    const auto d0 = nf::eval_reduced({s, 0.0, 0.0}, {0.1, 0.25}, c);
    CHECK(d0.dd == 0.0);
    CHECK(d0.ddphi == 0.0);
    const auto dpi = nf::eval_reduced({s, 0.0, std::numbers::pi}, {0.1, 0.25}, c);
    CHECK(dpi.dd == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(dpi.ddphi) < 1e-14);
  }
}

TEST_CASE("reflection equivariance of the reduced field") {
  const auto c = generic_coefficients();
  for (int k = 0; k < 50; ++k) {
    const double s = uniform(0.2, 2.0);
    const double d = uniform(-0.9, 0.9) * s;
    const double dphi = uniform(0.0, 6.28);
    const UnfoldingParams p{uniform(-0.5, 0.5), uniform(0.0, 0.6)};
    const auto a = nf::eval_reduced({s, d, dphi}, p, c);
    const auto b = nf::eval_reduced({s, -d, -dphi}, p, c);
    CHECK(a.ds == doctest::Approx(b.ds).epsilon(1e-13));
    CHECK(a.dd == doctest::Approx(-b.dd).epsilon(1e-13));
    CHECK(a.ddphi == doctest::Approx(-b.ddphi).epsilon(1e-13));
  }
}

TEST_CASE("eps = 0 reduces to the uncoupled system term by term") {
  const auto c = generic_coefficients();
  const double a01R = c.alpha01.real(), a01I = c.alpha01.imag();
  for (int k = 0; k < 50; ++k) {
    const double s = uniform(0.2, 2.0);
    const double d = uniform(-0.9, 0.9) * s;
    const double dphi = uniform(0.0, 6.28);
    const double lambda = uniform(-0.5, 0.5);
    const auto got = nf::eval_reduced({s, d, dphi}, {lambda, 0.0}, c);
    CHECK(got.ds == doctest::Approx(s * (lambda + a01R / 4 * (s * s + 3 * d * d))));
    CHECK(got.dd == doctest::Approx(d * (lambda + a01R / 4 * (d * d + 3 * s * s))));
    CHECK(got.ddphi == doctest::Approx(-a01I * s * d));
  }
  // fixed point of the uncoupled s-equation
  const double lambda = 0.4;
  const double s_fp = std::sqrt(-4.0 * lambda / a01R);
  CHECK(nf::eval_reduced({s_fp, 0.0, 1.0}, {lambda, 0.0}, c).ds ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("singular charts are rejected") {
  const auto c = generic_coefficients();
  CHECK_THROWS_AS((void)nf::eval_polar({1e-12, 1.0, 0.0, 0.0}, {0.1, 0.1}, c),
                  SingularChartError);
  CHECK_THROWS_AS((void)nf::eval_reduced({1.0, 1.0 - 1e-12, 0.1}, {0.1, 0.1}, c),
                  SingularChartError);
  const CartesianState bad{{std::nan(""), 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS((void)nf::eval_cartesian(bad, {0.1, 0.1}, c), DomainError);
}

TEST_CASE("wirtinger derivatives match central differences") {
  const auto c = generic_coefficients();
  const UnfoldingParams p{0.12, 0.34};
  for (int k = 0; k < 20; ++k) {
    const CartesianState s{random_complex(), random_complex()};
    const auto w = nf::d_eval_z1(s, p, c);
    const double h = 1e-6;
    auto f = [&](Complex z1, Complex z2) { return nf::eval_cartesian({z1, z2}, p, c).z1; };
    // numeric Wirtinger: f_z = (df/dx - i df/dy)/2, f_zbar = (df/dx + i df/dy)/2
    const Complex dfdx1 = (f(s.z1 + h, s.z2) - f(s.z1 - h, s.z2)) / (2 * h);
    const Complex dfdy1 =
        (f(s.z1 + Complex{0, h}, s.z2) - f(s.z1 - Complex{0, h}, s.z2)) / (2 * h);
    const Complex dfdx2 = (f(s.z1, s.z2 + h) - f(s.z1, s.z2 - h)) / (2 * h);
    const Complex dfdy2 =
        (f(s.z1, s.z2 + Complex{0, h}) - f(s.z1, s.z2 - Complex{0, h})) / (2 * h);
    CHECK(std::abs(w.f_z1 - (dfdx1 - Complex{0, 1} * dfdy1) / 2.0) < 1e-7);
    CHECK(std::abs(w.f_z1b - (dfdx1 + Complex{0, 1} * dfdy1) / 2.0) < 1e-7);
    CHECK(std::abs(w.f_z2 - (dfdx2 - Complex{0, 1} * dfdy2) / 2.0) < 1e-7);
    CHECK(std::abs(w.f_z2b - (dfdx2 + Complex{0, 1} * dfdy2) / 2.0) < 1e-7);
  }
}

TEST_CASE("coefficient JSON round-trips bit-exactly") {
  const auto c = generic_coefficients();
  const auto back = coefficients_from_json(to_json(c));
  CHECK(back.omega == c.omega);
  CHECK(back.alpha01 == c.alpha01);
  for (int i = 0; i < 4; ++i) {
    CHECK(back.alpha_eps[i] == c.alpha_eps[i]);
    CHECK(back.beta_eps[i] == c.beta_eps[i]);
  }
  CHECK_THROWS_AS((void)coefficients_from_json("{\"omega\": 1.0}"), ConfigError);
  auto bad = c;
  bad.alpha01 = {0.5, 1.0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
