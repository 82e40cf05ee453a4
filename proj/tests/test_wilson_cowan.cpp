#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hopfduet/errors.hpp"
#include "hopfduet/wilson_cowan.hpp"
#include "test_support.hpp"

using namespace hopfduet;
using testsupport::uniform;

TEST_CASE("sigmoid basics") {
  CHECK(wc::sigmoid(0.0, 3.0, 2.0) == 0.0);
  CHECK(wc::sigmoid(0.0, 1.7, -0.4) == 0.0);
  // S'(0) = lambda * S1 with S1 = e^theta/(1+e^theta)^2
  const double s1 = wc::sigmoid_s1(2.0);
  CHECK(s1 == doctest::Approx(0.104994).epsilon(1e-5));
  CHECK(wc::sigmoid_derivatives(0.0, 3.0, 2.0).d1 == doctest::Approx(3.0 * s1));
  // saturates without overflow
  CHECK(std::isfinite(wc::sigmoid(1e6, 3.0, 2.0)));
  CHECK(std::isfinite(wc::sigmoid(-1e6, 3.0, 2.0)));
}

TEST_CASE("sigmoid derivatives match central differences") {
  const double lambda = 2.3, theta = 1.7;
  auto s = [&](double u) { return wc::sigmoid(u, lambda, theta); };
  // Richardson-extrapolated central stencils (h^4 accurate, roundoff-safe h)
  auto fd1 = [&](double x, double h) { return (s(x + h) - s(x - h)) / (2 * h); };
  auto fd2 = [&](double x, double h) {
    return (s(x + h) - 2 * s(x) + s(x - h)) / (h * h);
  };
  auto fd3 = [&](double x, double h) {
    return (s(x + 2 * h) - 2 * s(x + h) + 2 * s(x - h) - s(x - 2 * h)) / (2 * h * h * h);
  };
  auto richardson = [](double coarse, double fine) { return (4 * fine - coarse) / 3; };
  for (double x : {-1.0, 0.3, 2.0}) {
    const auto dv = wc::sigmoid_derivatives(x, lambda, theta);
    const double h = 5e-3;
    CHECK(dv.d1 == doctest::Approx(richardson(fd1(x, h), fd1(x, h / 2))).epsilon(1e-7));
    CHECK(dv.d2 == doctest::Approx(richardson(fd2(x, h), fd2(x, h / 2))).epsilon(1e-7));
    CHECK(dv.d3 == doctest::Approx(richardson(fd3(x, h), fd3(x, h / 2))).epsilon(1e-7));
  }
}

TEST_CASE("sigmoid is strictly increasing for positive slope") {
  for (int k = 0; k < 50; ++k) {
    const double x = uniform(-8.0, 8.0);
    CHECK(wc::sigmoid_derivatives(x, 2.1, 2.0).d1 > 0.0);
  }
}

TEST_CASE("origin is an equilibrium of the coupled pair") {
  auto p = wc::preset_p();
  p.eps = 0.37;
  p.b_sp = -0.03;
  const auto d = wc::eval_coupled({0, 0, 0, 0}, p);
  CHECK(d.E1 == 0.0);
  CHECK(d.I1 == 0.0);
  CHECK(d.E2 == 0.0);
  CHECK(d.I2 == 0.0);
}

TEST_CASE("swap equivariance of the coupled pair") {
  auto p = wc::preset_p();
  p.eps = 0.21;
  p.b_sp = 0.03;
  p.lambda_slope = 3.1;
  for (int k = 0; k < 100; ++k) {
    const wc::WCState x{uniform(-0.5, 0.8), uniform(-0.5, 0.8), uniform(-0.5, 0.8),
                        uniform(-0.5, 0.8)};
    const auto d = wc::eval_coupled(x, p);
    const auto ds = wc::eval_coupled({x.E2, x.I2, x.E1, x.I1}, p);
    CHECK(d.E1 == ds.E2);
    CHECK(d.I1 == ds.I2);
    CHECK(d.E2 == ds.E1);
    CHECK(d.I2 == ds.I1);
  }
}

TEST_CASE("uncoupled subsystems are independent") {
  auto p = wc::preset_p();
  p.eps = 0.0;
  const wc::WCState a{0.2, 0.1, 0.5, -0.3};
  const wc::WCState b{0.2, 0.1, -0.7, 0.9};
  const auto da = wc::eval_coupled(a, p);
  const auto db = wc::eval_coupled(b, p);
  CHECK(da.E1 == db.E1);
  CHECK(da.I1 == db.I1);
}

TEST_CASE("hopf threshold") {
  const auto p = wc::preset_p();
  const double lc = wc::hopf_slope(p);
  // 2 / ((a-d) S1) with the reference parameter set
  CHECK(lc == doctest::Approx(2.0 / (6.3 * wc::sigmoid_s1(2.0))).epsilon(1e-14));
  // trace of the origin Jacobian vanishes at lambda_c
  auto at_c = p;
  at_c.lambda_slope = lc;
  CHECK(wc::unfolding_lambda(at_c) == doctest::Approx(0.0).epsilon(1e-14));

  auto simple = p;
  simple.a = 7.0;
  simple.d = 0.7;
  simple.theta = 0.0;  // S1 = 1/4
  CHECK(wc::hopf_slope(simple) == doctest::Approx(2.0 / (6.3 * 0.25)).epsilon(1e-12));

  auto bad = p;
  bad.d = 8.0;
  CHECK_THROWS_AS((void)wc::hopf_slope(bad), NotAdmissibleError);
}

TEST_CASE("transversality: eigenvalue real part increases through lambda_c") {
  auto p = wc::preset_p();
  const double lc = wc::hopf_slope(p);
  p.lambda_slope = lc - 1e-3;
  const double below = wc::unfolding_lambda(p);
  p.lambda_slope = lc + 1e-3;
  const double above = wc::unfolding_lambda(p);
  CHECK(below < 0.0);
  CHECK(above > 0.0);
}

TEST_CASE("emergent period and matched tau") {
  const auto p = wc::preset_p();
  const double lc = wc::hopf_slope(p);
  // consistency: 2 pi / T at lambda_c equals the linearization frequency
  const double w = 2 * std::numbers::pi / wc::emergent_period(lc, p);
  CHECK(w == doctest::Approx(wc::linear_omega([&] {
          auto q = p;
          q.lambda_slope = lc;
          return q;
        }())).epsilon(1e-12));
  CHECK(w == doctest::Approx(1.0731614440562136).epsilon(1e-12));

  // bc = ad and d = a - (degenerate shape check): radicand collapses to 1
  wc::WilsonCowanParams flat = p;
  flat.b = 2.0;
  flat.c = 3.5;  // bc = 7 = a*d with a=7,d=1 below
  flat.a = 7.0;
  flat.d = 1.0;
  const double ls1 = 0.0;  // lambda -> 0 removes the linear term too
  (void)ls1;
  // with lambda = 0 the radicand is exactly 1 -> T = 2 pi tau
  CHECK(wc::emergent_period(0.0, flat) == doctest::Approx(2 * std::numbers::pi * flat.tau));

  // matched tau: period becomes 1/(2f) exactly
  const double f = 2.5, slope = 2.6;
  const double tau = wc::matched_tau(f, slope, p);
  CHECK(tau == doctest::Approx(0.029710).epsilon(1e-4));
  auto forced = p;
  forced.tau = tau;
  CHECK(wc::emergent_period(slope, forced) * 2.0 * f == doctest::Approx(1.0).epsilon(1e-14));
  // 1/f homogeneity
  CHECK(wc::matched_tau(2 * f, slope, p) == doctest::Approx(tau / 2).epsilon(1e-14));
}

TEST_CASE("forced inputs: asymmetry semantics") {
  wc::ForcingParams fp;
  fp.A = 0.7;
  fp.f = 2.5;
  fp.n = 5;
  SUBCASE("h = 0 gives identical inputs") {
    fp.h = 0.0;
    for (double t : {0.0, 0.03, 0.11, 0.2}) {
      CHECK(wc::forcing_input1(t, fp) == doctest::Approx(wc::forcing_input2(t, fp)));
    }
  }
  SUBCASE("h = 1 gives exclusive inputs at t = 0") {
    fp.h = 1.0;
    CHECK(wc::forcing_input1(0.0, fp) == doctest::Approx(0.0));
    CHECK(wc::forcing_input2(0.0, fp) == doctest::Approx(fp.A));
  }
  SUBCASE("spatio-temporal symmetry input1(t) = input2(t + 1/(4f))") {
    for (double h : {0.0, 0.3, 1.0}) {
      fp.h = h;
      for (int k = 0; k < 40; ++k) {
        const double t = 0.4 * k / 40.0;
        CHECK(wc::forcing_input1(t, fp) ==
              doctest::Approx(wc::forcing_input2(t + 1.0 / (4.0 * fp.f), fp)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("forced system swap equivariance at h = 0") {
  auto p = wc::preset_p();
  p.lambda_slope = 2.6;
  p.eps = 0.5;
  p.tau = wc::matched_tau(2.5, 2.6, p);
  wc::ForcingParams fp;
  fp.A = 0.4;
  fp.h = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double t = uniform(0.0, 0.4);
    const wc::WCState x{uniform(-0.4, 0.8), uniform(-0.4, 0.8), uniform(-0.4, 0.8),
                        uniform(-0.4, 0.8)};
    const auto d = wc::eval_forced(x, t, p, fp);
    const auto ds = wc::eval_forced({x.E2, x.I2, x.E1, x.I1}, t, p, fp);
    CHECK(d.E1 == ds.E2);
    CHECK(d.I2 == ds.I1);
  }
}
