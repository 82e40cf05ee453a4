#include "hopfduet/wilson_cowan.hpp"

#include <cmath>
#include <numbers>

#include "hopfduet/errors.hpp"

namespace hopfduet::wc {

namespace {

constexpr double kExpClamp = 700.0;

double logistic(double u) {
  if (u > kExpClamp) u = kExpClamp;
  if (u < -kExpClamp) u = -kExpClamp;
  return 1.0 / (1.0 + std::exp(-u));
}

}  // namespace

void WilsonCowanParams::validate() const {
  for (double v : {a, b, c, d, theta, tau, lambda_slope, eps, b_sp}) {
    if (!std::isfinite(v)) throw DomainError("WilsonCowanParams: non-finite field");
  }
  if (tau <= 0.0) throw DomainError("WilsonCowanParams: tau must be positive");
  if (a <= d) throw DomainError("WilsonCowanParams: requires a > d");
  if (eps < 0.0) throw DomainError("WilsonCowanParams: eps must be >= 0");
}

void ForcingParams::validate() const {
  if (!(A >= 0.0) || !(f > 0.0) || !(h >= 0.0 && h <= 1.0) || n < 1) {
    throw DomainError("ForcingParams: need A >= 0, f > 0, h in [0,1], n >= 1");
  }
}

WilsonCowanParams preset_p() {
  WilsonCowanParams p;
  p.a = 7.0;
  p.b = 5.25;
  p.c = 5.0;
  p.d = 0.7;
  p.theta = 2.0;
  p.tau = 1.0;
  p.lambda_slope = 3.0;
  p.eps = 0.0;
  p.b_sp = 0.0;
  return p;
}

WilsonCowanParams preset_by_name(const std::string& name) {
  if (name == "paperP") return preset_p();
  throw ConfigError("unknown preset '" + name + "' (available: paperP)");
}

double sigmoid(double x, double lambda_slope, double theta) {
  return logistic(lambda_slope * x - theta) - logistic(-theta);
}

SigmoidDerivs sigmoid_derivatives(double x, double lambda_slope, double theta) {
  const double sg = logistic(lambda_slope * x - theta);
  const double sp = sg * (1.0 - sg);
  const double l = lambda_slope;
  SigmoidDerivs out;
  out.s = sg - logistic(-theta);
  out.d1 = l * sp;
  out.d2 = l * l * sp * (1.0 - 2.0 * sg);
  out.d3 = l * l * l * sp * (1.0 - 6.0 * sg + 6.0 * sg * sg);
  return out;
}

double sigmoid_s1(double theta) {
  const double s0 = logistic(-theta);
  return s0 * (1.0 - s0);
}

WCState eval_coupled(const WCState& x, const WilsonCowanParams& p) {
  const double l = p.lambda_slope, th = p.theta;
  WCState dx;
  dx.E1 = (-x.E1 + sigmoid(p.a * x.E1 - p.b * x.I1, l, th)) / p.tau;
  dx.I1 = (-x.I1 + sigmoid(p.c * x.E1 - p.d * x.I1 + p.eps * (x.E2 - p.b_sp * x.I2), l, th)) /
          p.tau;
  dx.E2 = (-x.E2 + sigmoid(p.a * x.E2 - p.b * x.I2, l, th)) / p.tau;
  dx.I2 = (-x.I2 + sigmoid(p.c * x.E2 - p.d * x.I2 + p.eps * (x.E1 - p.b_sp * x.I1), l, th)) /
          p.tau;
  return dx;
}

double forcing_input1(double t, const ForcingParams& fp) {
  const double w = 2.0 * std::numbers::pi * fp.f * t;
  const double s2n = std::pow(std::sin(w), 2 * fp.n);
  const double c2n = std::pow(std::cos(w), 2 * fp.n);
  return fp.A * s2n + (1.0 - fp.h) * fp.A * c2n;
}

double forcing_input2(double t, const ForcingParams& fp) {
  const double w = 2.0 * std::numbers::pi * fp.f * t;
  const double s2n = std::pow(std::sin(w), 2 * fp.n);
  const double c2n = std::pow(std::cos(w), 2 * fp.n);
  return fp.A * c2n + (1.0 - fp.h) * fp.A * s2n;
}

WCState eval_forced(const WCState& x, double t, const WilsonCowanParams& p,
                    const ForcingParams& fp) {
  const double l = p.lambda_slope, th = p.theta;
  WCState dx;
  dx.E1 = (-x.E1 + sigmoid(p.a * x.E1 - p.b * x.I1 + forcing_input1(t, fp), l, th)) / p.tau;
  dx.I1 = (-x.I1 + sigmoid(p.c * x.E1 - p.d * x.I1 + p.eps * (x.E2 - p.b_sp * x.I2), l, th)) /
          p.tau;
  dx.E2 = (-x.E2 + sigmoid(p.a * x.E2 - p.b * x.I2 + forcing_input2(t, fp), l, th)) / p.tau;
  dx.I2 = (-x.I2 + sigmoid(p.c * x.E2 - p.d * x.I2 + p.eps * (x.E1 - p.b_sp * x.I1), l, th)) /
          p.tau;
  return dx;
}

double hopf_slope(const WilsonCowanParams& p) {
  if (p.a <= p.d) throw NotAdmissibleError("hopf_slope: requires a > d");
  return 2.0 / ((p.a - p.d) * sigmoid_s1(p.theta));
}

double emergent_period(double lambda_slope, const WilsonCowanParams& p) {
  const double ls1 = lambda_slope * sigmoid_s1(p.theta);
  const double radicand = ls1 * ls1 * (p.b * p.c - p.a * p.d) + ls1 * (p.d - p.a) + 1.0;
  if (radicand <= 0.0) {
    throw NotAdmissibleError("emergent_period: radicand non-positive");
  }
  return p.tau * 2.0 * std::numbers::pi / std::sqrt(radicand);
}

double matched_tau(double f, double lambda_slope, const WilsonCowanParams& p) {
  if (!(f > 0.0)) throw DomainError("matched_tau: f must be positive");
  const double ls1 = lambda_slope * sigmoid_s1(p.theta);
  const double radicand = ls1 * ls1 * (p.b * p.c - p.a * p.d) + ls1 * (p.d - p.a) + 1.0;
  if (radicand <= 0.0) {
    throw NotAdmissibleError("matched_tau: radicand non-positive");
  }
  return std::sqrt(radicand) / (4.0 * f * std::numbers::pi);
}

double unfolding_lambda(const WilsonCowanParams& p) {
  const double ls1 = p.lambda_slope * sigmoid_s1(p.theta);
  return (ls1 * (p.a - p.d) - 2.0) / (2.0 * p.tau);
}

double linear_omega(const WilsonCowanParams& p) {
  const double ls1 = p.lambda_slope * sigmoid_s1(p.theta);
  const double det =
      (ls1 * ls1 * (p.b * p.c - p.a * p.d) + ls1 * (p.d - p.a) + 1.0) / (p.tau * p.tau);
  const double re = unfolding_lambda(p);
  const double disc = det - re * re;
  if (disc <= 0.0) {
    throw NotAdmissibleError("linear_omega: origin linearization is not oscillatory");
  }
  return std::sqrt(disc);
}

}  // namespace hopfduet::wc
