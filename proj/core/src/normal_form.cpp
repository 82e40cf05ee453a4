#include "hopfduet/normal_form.hpp"

#include <cmath>

#include "hopfduet/errors.hpp"

namespace hopfduet::nf {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex field_z1(Complex z1, Complex z2, const UnfoldingParams& p,
                 const NormalFormCoefficients& c) {
  const Complex i_omega{0.0, c.omega};
  const double n1 = std::norm(z1);
  const double n2 = std::norm(z2);
  const Complex self = z1 * (p.lambda + i_omega + c.alpha01 * n1);
  const Complex coup =
      z1 * (c.alpha_eps[0] + c.alpha_eps[1] * n1 + c.alpha_eps[2] * n2 +
            c.alpha_eps[3] * std::conj(z2) * z1) +
      z2 * (c.beta_eps[0] + c.beta_eps[1] * n1 + c.beta_eps[2] * n2 +
            c.beta_eps[3] * std::conj(z1) * z2);
  return self + p.eps * coup;
}

}  // namespace

CartesianState eval_cartesian(const CartesianState& state, const UnfoldingParams& p,
                              const NormalFormCoefficients& c) {
  if (!finite(state.z1) || !finite(state.z2)) {
    throw DomainError("eval_cartesian: non-finite state");
  }
  return {field_z1(state.z1, state.z2, p, c), field_z1(state.z2, state.z1, p, c)};
}

double coupling_fr(double r1, double r2, double dphi, const NormalFormCoefficients& c) {
  const double cd = std::cos(dphi), sd = std::sin(dphi);
  const double c2d = std::cos(2 * dphi), s2d = std::sin(2 * dphi);
  const auto& ae = c.alpha_eps;
  const auto& be = c.beta_eps;
  return r1 * r1 * r2 *
             ((be[1].real() + ae[3].real()) * cd - (be[1].imag() - ae[3].imag()) * sd) +
         r2 * r2 * r1 * (ae[2].real() + be[3].real() * c2d - be[3].imag() * s2d) +
         r1 * ae[0].real() + r1 * r1 * r1 * ae[1].real() +
         r2 * r2 * r2 * (be[2].real() * cd - be[2].imag() * sd) +
         r2 * (be[0].real() * cd - be[0].imag() * sd);
}

double coupling_fphi(double r1, double r2, double dphi, const NormalFormCoefficients& c) {
  const double cd = std::cos(dphi), sd = std::sin(dphi);
  const double c2d = std::cos(2 * dphi), s2d = std::sin(2 * dphi);
  const auto& ae = c.alpha_eps;
  const auto& be = c.beta_eps;
  return r1 * r1 * r2 *
             ((be[1].imag() + ae[3].imag()) * cd + (be[1].real() - ae[3].real()) * sd) +
         r2 * r2 * r1 * (ae[2].imag() + be[3].imag() * c2d + be[3].real() * s2d) +
         r1 * ae[0].imag() + r1 * r1 * r1 * ae[1].imag() +
         r2 * r2 * r2 * (be[2].imag() * cd + be[2].real() * sd) +
         r2 * (be[0].imag() * cd + be[0].real() * sd);
}

double coupling_fdphi(double r1, double r2, double dphi, const NormalFormCoefficients& c) {
  const double cd = std::cos(dphi), sd = std::sin(dphi);
  const double c2d = std::cos(2 * dphi), s2d = std::sin(2 * dphi);
  const auto& ae = c.alpha_eps;
  const auto& be = c.beta_eps;
  const double r1sq = r1 * r1, r2sq = r2 * r2;
  return (r1sq - r2sq) * (ae[2].imag() - ae[1].imag() + be[3].imag() * c2d) -
         2 * r1 * r2 * (be[1].real() - ae[3].real()) * sd -
         (r1sq + r2sq) * be[3].real() * s2d +
         (r1sq * r1 / r2 - r2sq * r2 / r1) * be[2].imag() * cd -
         (r1sq * r1 / r2 + r2sq * r2 / r1) * be[2].real() * sd +
         (r1 / r2 - r2 / r1) * be[0].imag() * cd -
         (r1 / r2 + r2 / r1) * be[0].real() * sd;
}

double coupling_gs(double s, double d, double dphi, const NormalFormCoefficients& c) {
  const double cd = std::cos(dphi), sd = std::sin(dphi);
  const double c2d = std::cos(2 * dphi), s2d = std::sin(2 * dphi);
  const auto& ae = c.alpha_eps;
  const auto& be = c.beta_eps;
  const double ssq = s * s, dsq = d * d;
  return s * (cd * be[0].real() + ae[0].real()) + d * sd * be[0].imag() +
         (s / 4) * (ssq + 3 * dsq) * (be[2].real() * cd + ae[1].real()) +
         (s / 4) * (ssq - dsq) *
             ((be[1].real() + ae[3].real()) * cd + ae[2].real() + be[3].real() * c2d) +
         (d / 4) * (ssq - dsq) *
             (be[3].imag() * s2d - (be[1].imag() - ae[3].imag()) * sd) +
         (d / 4) * (3 * ssq + dsq) * be[2].imag() * sd;
}

double coupling_gd(double s, double d, double dphi, const NormalFormCoefficients& c) {
  const double cd = std::cos(dphi), sd = std::sin(dphi);
  const double c2d = std::cos(2 * dphi), s2d = std::sin(2 * dphi);
  const auto& ae = c.alpha_eps;
  const auto& be = c.beta_eps;
  const double ssq = s * s, dsq = d * d;
  return -d * (cd * be[0].real() - ae[0].real()) - s * sd * be[0].imag() -
         (d / 4) * (dsq + 3 * ssq) * (be[2].real() * cd - ae[1].real()) +
         (d / 4) * (ssq - dsq) *
             ((be[1].real() + ae[3].real()) * cd - ae[2].real() - be[3].real() * c2d) -
         (s / 4) * (ssq - dsq) *
             (be[3].imag() * s2d + (be[1].imag() - ae[3].imag()) * sd) -
         (s / 4) * (3 * dsq + ssq) * be[2].imag() * sd;
}

double coupling_gdphi(double s, double d, double dphi, const NormalFormCoefficients& c) {
  const double cd = std::cos(dphi), sd = std::sin(dphi);
  const double c2d = std::cos(2 * dphi), s2d = std::sin(2 * dphi);
  const auto& ae = c.alpha_eps;
  const auto& be = c.beta_eps;
  const double ssq = s * s, dsq = d * d;
  const double sum = ssq + dsq, dif = ssq - dsq;
  return be[0].imag() * cd * (4 * s * d / dif) - 2 * be[0].real() * sd * (sum / dif) -
         be[2].real() * sd * (sum * sum / dif - dif / 2) +
         be[2].imag() * cd * (2 * s * d * sum / dif) -
         be[3].real() * s2d * (sum / 2) - (be[1].real() - ae[3].real()) * sd * (dif / 2) +
         (ae[2].imag() + be[3].imag() * c2d - ae[1].imag()) * s * d;
}

PolarDeriv eval_polar(const PolarState& state, const UnfoldingParams& p,
                      const NormalFormCoefficients& c) {
  const double r1 = state.r1, r2 = state.r2;
  if (near_singular(r1 + r2, r1 - r2)) {
    throw SingularChartError("eval_polar: r1 or r2 too close to zero");
  }
  const double dphi = state.phi2 - state.phi1;
  const double a01R = c.alpha01.real(), a01I = c.alpha01.imag();
  PolarDeriv dv;
  dv.dr1 = r1 * (p.lambda + a01R * r1 * r1) + p.eps * coupling_fr(r1, r2, dphi, c);
  dv.dr2 = r2 * (p.lambda + a01R * r2 * r2) + p.eps * coupling_fr(r2, r1, -dphi, c);
  dv.dphi1 = c.omega + a01I * r1 * r1 + (p.eps / r1) * coupling_fphi(r1, r2, dphi, c);
  dv.dphi2 = c.omega + a01I * r2 * r2 + (p.eps / r2) * coupling_fphi(r2, r1, -dphi, c);
  return dv;
}

ReducedDeriv eval_reduced(const ReducedState& state, const UnfoldingParams& p,
                          const NormalFormCoefficients& c) {
  const double s = state.s, d = state.d, dphi = state.dphi;
  if (near_singular(s, d)) {
    throw SingularChartError("eval_reduced: s - |d| below chart guard");
  }
  const double a01R = c.alpha01.real(), a01I = c.alpha01.imag();
  ReducedDeriv dv;
  dv.ds = s * (p.lambda + (a01R / 4) * (s * s + 3 * d * d)) +
          p.eps * coupling_gs(s, d, dphi, c);
  dv.dd = d * (p.lambda + (a01R / 4) * (d * d + 3 * s * s)) +
          p.eps * coupling_gd(s, d, dphi, c);
  dv.ddphi = -a01I * s * d + p.eps * coupling_gdphi(s, d, dphi, c);
  return dv;
}

WirtingerBlock d_eval_z1(const CartesianState& state, const UnfoldingParams& p,
                         const NormalFormCoefficients& c) {
  const Complex z1 = state.z1, z2 = state.z2;
  const Complex z1b = std::conj(z1), z2b = std::conj(z2);
  const Complex i_omega{0.0, c.omega};
  const auto& ae = c.alpha_eps;
  const auto& be = c.beta_eps;
  WirtingerBlock w;
  w.f_z1 = (p.lambda + i_omega) + 2.0 * c.alpha01 * z1 * z1b +
           p.eps * (ae[0] + 2.0 * ae[1] * z1 * z1b + ae[2] * z2 * z2b +
                    2.0 * ae[3] * z1 * z2b + be[1] * z1b * z2);
  w.f_z1b = c.alpha01 * z1 * z1 +
            p.eps * (ae[1] * z1 * z1 + be[1] * z1 * z2 + be[3] * z2 * z2);
  w.f_z2 = p.eps * (ae[2] * z1 * z2b + be[0] + be[1] * z1 * z1b +
                    2.0 * be[2] * z2 * z2b + 2.0 * be[3] * z1b * z2);
  w.f_z2b = p.eps * (ae[2] * z1 * z2 + ae[3] * z1 * z1 + be[2] * z2 * z2);
  return w;
}

}  // namespace hopfduet::nf
