#include "hopfduet/systems.hpp"

#include <cmath>

namespace hopfduet::dyn {

namespace {

CartesianState unpack(const Vec& x) {
  return {Complex{x(0), x(1)}, Complex{x(2), x(3)}};
}

// Real 2x2 block of d(Re F, Im F)/d(Re z, Im z) from Wirtinger derivatives.
void put_block(Mat& j, int row, int col, Complex fz, Complex fzb) {
  j(row, col) = (fz + fzb).real();
  j(row + 1, col) = (fz + fzb).imag();
  j(row, col + 1) = -(fz - fzb).imag();
  j(row + 1, col + 1) = (fz - fzb).real();
}

}  // namespace

void NfCartesianSystem::rhs(double, const Vec& x, Vec& dx) const {
  const CartesianState dz = nf::eval_cartesian(unpack(x), p_, c_);
  dx.resize(4);
  dx << dz.z1.real(), dz.z1.imag(), dz.z2.real(), dz.z2.imag();
}

void NfCartesianSystem::jacobian(double, const Vec& x, Mat& j) const {
  const CartesianState z = unpack(x);
  const nf::WirtingerBlock w1 = nf::d_eval_z1(z, p_, c_);
  const nf::WirtingerBlock w2 = nf::d_eval_z1({z.z2, z.z1}, p_, c_);
  j.resize(4, 4);
  put_block(j, 0, 0, w1.f_z1, w1.f_z1b);
  put_block(j, 0, 2, w1.f_z2, w1.f_z2b);
  // z2 equation is the swap image: d F2/d z2 = (d F1/d z1)(z2, z1), etc.
  put_block(j, 2, 2, w2.f_z1, w2.f_z1b);
  put_block(j, 2, 0, w2.f_z2, w2.f_z2b);
}

Vec NfCartesianSystem::swap_oscillators(const Vec& x) const {
  Vec y(4);
  y << x(2), x(3), x(0), x(1);
  return y;
}

double NfCartesianSystem::signal(const Vec& x, int oscillator) const {
  return oscillator == 1 ? x(0) : x(2);
}

double NfCartesianSystem::amplitude(const Vec& x) const { return x.norm(); }

std::optional<double> NfCartesianSystem::instant_phase_difference(const Vec& x) const {
  const CartesianState z = unpack(x);
  if (std::abs(z.z1) < 1e-12 || std::abs(z.z2) < 1e-12) return std::nullopt;
  return wrap_angle(std::arg(z.z2) - std::arg(z.z1));
}

void NfReducedSystem::rhs(double, const Vec& x, Vec& dx) const {
  const nf::ReducedDeriv d = nf::eval_reduced({x(0), x(1), x(2)}, p_, c_);
  dx.resize(3);
  dx << d.ds, d.dd, d.ddphi;
}

Vec NfReducedSystem::swap_oscillators(const Vec& x) const {
  Vec y(3);
  y << x(0), -x(1), -x(2);
  return y;
}

double NfReducedSystem::signal(const Vec& x, int oscillator) const {
  // amplitudes r1/r2 stand in for the oscillation signal in this chart
  return oscillator == 1 ? 0.5 * (x(0) + x(1)) : 0.5 * (x(0) - x(1));
}

double NfReducedSystem::amplitude(const Vec& x) const { return std::abs(x(0)); }

namespace {

void wc_jacobian_common(const wc::WilsonCowanParams& p, const Vec& args, Mat& j) {
  // args holds the four sigmoid arguments (already including any forcing).
  const double d1_e1 = wc::sigmoid_derivatives(args(0), p.lambda_slope, p.theta).d1;
  const double d1_i1 = wc::sigmoid_derivatives(args(1), p.lambda_slope, p.theta).d1;
  const double d1_e2 = wc::sigmoid_derivatives(args(2), p.lambda_slope, p.theta).d1;
  const double d1_i2 = wc::sigmoid_derivatives(args(3), p.lambda_slope, p.theta).d1;
  j.resize(4, 4);
  j.setZero();
  j(0, 0) = -1.0 + d1_e1 * p.a;
  j(0, 1) = -d1_e1 * p.b;
  j(1, 0) = d1_i1 * p.c;
  j(1, 1) = -1.0 - d1_i1 * p.d;
  j(1, 2) = d1_i1 * p.eps;
  j(1, 3) = -d1_i1 * p.eps * p.b_sp;
  j(2, 2) = -1.0 + d1_e2 * p.a;
  j(2, 3) = -d1_e2 * p.b;
  j(3, 2) = d1_i2 * p.c;
  j(3, 3) = -1.0 - d1_i2 * p.d;
  j(3, 0) = d1_i2 * p.eps;
  j(3, 1) = -d1_i2 * p.eps * p.b_sp;
  j /= p.tau;
}

}  // namespace

void WilsonCowanSystem::rhs(double, const Vec& x, Vec& dx) const {
  const wc::WCState d = wc::eval_coupled({x(0), x(1), x(2), x(3)}, p_);
  dx.resize(4);
  dx << d.E1, d.I1, d.E2, d.I2;
}

void WilsonCowanSystem::jacobian(double, const Vec& x, Mat& j) const {
  Vec args(4);
  args << p_.a * x(0) - p_.b * x(1),
      p_.c * x(0) - p_.d * x(1) + p_.eps * (x(2) - p_.b_sp * x(3)),
      p_.a * x(2) - p_.b * x(3),
      p_.c * x(2) - p_.d * x(3) + p_.eps * (x(0) - p_.b_sp * x(1));
  wc_jacobian_common(p_, args, j);
}

Vec WilsonCowanSystem::swap_oscillators(const Vec& x) const {
  Vec y(4);
  y << x(2), x(3), x(0), x(1);
  return y;
}

double WilsonCowanSystem::signal(const Vec& x, int oscillator) const {
  return oscillator == 1 ? x(0) : x(2);
}

double WilsonCowanSystem::amplitude(const Vec& x) const { return x.norm(); }

void ForcedWilsonCowanSystem::rhs(double t, const Vec& x, Vec& dx) const {
  const wc::WCState d = wc::eval_forced({x(0), x(1), x(2), x(3)}, t, p_, f_);
  dx.resize(4);
  dx << d.E1, d.I1, d.E2, d.I2;
}

void ForcedWilsonCowanSystem::jacobian(double t, const Vec& x, Mat& j) const {
  Vec args(4);
  args << p_.a * x(0) - p_.b * x(1) + wc::forcing_input1(t, f_),
      p_.c * x(0) - p_.d * x(1) + p_.eps * (x(2) - p_.b_sp * x(3)),
      p_.a * x(2) - p_.b * x(3) + wc::forcing_input2(t, f_),
      p_.c * x(2) - p_.d * x(3) + p_.eps * (x(0) - p_.b_sp * x(1));
  wc_jacobian_common(p_, args, j);
}

Vec ForcedWilsonCowanSystem::swap_oscillators(const Vec& x) const {
  Vec y(4);
  y << x(2), x(3), x(0), x(1);
  return y;
}

double ForcedWilsonCowanSystem::signal(const Vec& x, int oscillator) const {
  return oscillator == 1 ? x(0) : x(2);
}

double ForcedWilsonCowanSystem::amplitude(const Vec& x) const { return x.norm(); }

}  // namespace hopfduet::dyn
