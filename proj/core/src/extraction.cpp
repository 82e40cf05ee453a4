#include "hopfduet/extraction.hpp"

#include <cmath>

#include "hopfduet/errors.hpp"

namespace hopfduet::extract {

namespace {

constexpr double kSqrt2Inv = 0.70710678118654752440;

int degree(const Mono& m) { return m[0] + m[1] + m[2] + m[3]; }

int rotation_weight(const Mono& m) { return m[0] + m[1] - m[2] - m[3]; }

Poly linear_form(const Eigen::Vector4cd& v) {
  Poly p;
  for (int i = 0; i < 4; ++i) {
    if (v(i) == Complex{0.0, 0.0}) continue;
    Mono m{0, 0, 0, 0};
    m[i] = 1;
    p[m] = v(i);
  }
  return p;
}

void add_scaled(Poly& dst, const Poly& src, Complex w) {
  for (const auto& [m, v] : src) dst[m] += w * v;
}

// The C change mixing symmetric/antisymmetric modes into oscillator modes.
Eigen::Matrix4cd c_matrix() {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  c(0, 0) = c(0, 1) = c(1, 0) = kSqrt2Inv;
  c(1, 1) = -kSqrt2Inv;
  c(2, 2) = c(2, 3) = c(3, 2) = kSqrt2Inv;
  c(3, 3) = -kSqrt2Inv;
  return c;
}

}  // namespace

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly out;
  for (const auto& [m1, v1] : p) {
    for (const auto& [m2, v2] : q) {
      Mono m{m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]};
      out[m] += v1 * v2;
    }
  }
  return out;
}

Complex poly_eval(const Poly& p, const std::array<Complex, 4>& y) {
  Complex total{0.0, 0.0};
  for (const auto& [m, v] : p) {
    Complex term = v;
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k < m[i]; ++k) term *= y[i];
    }
    total += term;
  }
  return total;
}

Poly poly_diff(const Poly& p, int var) {
  Poly out;
  for (const auto& [m, v] : p) {
    if (m[var] == 0) continue;
    Mono dm = m;
    dm[var] -= 1;
    out[dm] += v * static_cast<double>(m[var]);
  }
  return out;
}

Poly poly_substitute(const Poly& p, const Eigen::Matrix4cd& m) {
  std::array<Poly, 4> rows;
  for (int i = 0; i < 4; ++i) rows[i] = linear_form(m.row(i).transpose());
  Poly out;
  for (const auto& [mono, v] : p) {
    Poly term;
    term[{0, 0, 0, 0}] = v;
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k < mono[i]; ++k) term = poly_mul(term, rows[i]);
    }
    for (const auto& [mm, vv] : term) out[mm] += vv;
  }
  return out;
}

TaylorModel taylor_expand(const wc::WilsonCowanParams& p, double eps,
                          Complex eigvec_scale) {
  p.validate();
  const double s1 = wc::sigmoid_s1(p.theta);
  const double sig0 = 1.0 / (1.0 + std::exp(p.theta));
  const double sig2 = s1 * (1.0 - 2.0 * sig0);
  const double sig3 = s1 * (1.0 - 6.0 * sig0 + 6.0 * sig0 * sig0);
  const double l = p.lambda_slope;
  const double c1 = l * s1;
  const double c2 = l * l * sig2 / 2.0;
  const double c3 = l * l * l * sig3 / 6.0;

  // Symmetric/antisymmetric 2x2 blocks J0 +- eps B.
  Eigen::Matrix2d j0;
  j0 << (c1 * p.a - 1.0), -c1 * p.b, c1 * p.c, (-c1 * p.d - 1.0);
  j0 /= p.tau;
  Eigen::Matrix2d bmat;
  bmat << 0.0, 0.0, c1, -c1 * p.b_sp;
  bmat /= p.tau;

  TaylorModel tm;
  tm.eps = eps;
  std::array<Eigen::Vector4cd, 2> vecs;
  for (int idx = 0; idx < 2; ++idx) {
    const double sgn = idx == 0 ? 1.0 : -1.0;
    const Eigen::Matrix2d jb = j0 + sgn * eps * bmat;
    const double tr = jb.trace();
    const double det = jb.determinant();
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
      throw NotAdmissibleError(
          "taylor_expand: linearization block has real eigenvalues (not in Hopf regime)");
    }
    const Complex mu{tr / 2.0, std::sqrt(-disc) / 2.0};
    if (std::abs(jb(0, 1)) < 1e-14) {
      throw NotAdmissibleError("taylor_expand: degenerate eigenvector basis");
    }
    const Complex v_i = (mu - jb(0, 0)) / jb(0, 1);  // E-component normalized to 1
    Eigen::Vector4cd v;
    v << 1.0, v_i, sgn * 1.0, sgn * v_i;
    v *= eigvec_scale;
    tm.mu[idx] = mu;
    tm.mu[idx + 2] = std::conj(mu);
    vecs[idx] = v;
  }
  tm.basis.col(0) = vecs[0];
  tm.basis.col(1) = vecs[1];
  tm.basis.col(2) = vecs[0].conjugate();
  tm.basis.col(3) = vecs[1].conjugate();
  tm.basis_inv = tm.basis.inverse();

  // Sigmoid arguments of the four equations as linear forms in state order
  // (E1, I1, E2, I2), then composed with the eigenbasis.
  std::array<Eigen::Vector4d, 4> args = {
      Eigen::Vector4d{p.a, -p.b, 0.0, 0.0},
      Eigen::Vector4d{p.c, -p.d, eps, -eps * p.b_sp},
      Eigen::Vector4d{0.0, 0.0, p.a, -p.b},
      Eigen::Vector4d{eps, -eps * p.b_sp, p.c, -p.d},
  };
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector4cd arg_y = tm.basis.transpose() * args[i].cast<Complex>();
    const Poly li = linear_form(arg_y);
    const Poly sqr = poly_mul(li, li);
    const Poly cub = poly_mul(sqr, li);
    for (int k = 0; k < 4; ++k) {
      const Complex wk = tm.basis_inv(k, i);
      add_scaled(tm.p2[k], sqr, wk * (c2 / p.tau));
      add_scaled(tm.p3[k], cub, wk * (c3 / p.tau));
    }
  }
  return tm;
}

QuadraticChange solve_homological(const TaylorModel& tm, double divisor_floor) {
  if (divisor_floor < 0.0) divisor_floor = 1e-8 * std::abs(tm.mu[0].imag());
  QuadraticChange qc;
  qc.smallest_divisor = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    for (const auto& [m, pv] : tm.p2[k]) {
      const Complex mdot = static_cast<double>(m[0]) * tm.mu[0] +
                           static_cast<double>(m[1]) * tm.mu[1] +
                           static_cast<double>(m[2]) * tm.mu[2] +
                           static_cast<double>(m[3]) * tm.mu[3];
      const Complex divisor = mdot - tm.mu[k];
      const double mag = std::abs(divisor);
      qc.smallest_divisor = std::min(qc.smallest_divisor, mag);
      if (mag <= divisor_floor) {
        throw ConvergenceError(
            "solve_homological: small divisor for monomial (" + std::to_string(m[0]) + "," +
            std::to_string(m[1]) + "," + std::to_string(m[2]) + "," + std::to_string(m[3]) +
            ") in component " + std::to_string(k + 1));
      }
      qc.q2[k][m] = pv / divisor;
    }
  }
  // residual of the homological equation per monomial
  double max_res = 0.0;
  for (int k = 0; k < 4; ++k) {
    for (const auto& [m, qv] : qc.q2[k]) {
      const Complex mdot = static_cast<double>(m[0]) * tm.mu[0] +
                           static_cast<double>(m[1]) * tm.mu[1] +
                           static_cast<double>(m[2]) * tm.mu[2] +
                           static_cast<double>(m[3]) * tm.mu[3];
      const Complex lhs = tm.mu[k] * qv - qv * mdot;  // A Q2 - DQ2 . Lambda y
      const Complex rhs = -tm.p2[k].at(m);
      max_res = std::max(max_res, std::abs(lhs - rhs));
    }
  }
  qc.max_residual = max_res;
  return qc;
}

std::array<Poly, 4> compute_f3(const TaylorModel& tm, const QuadraticChange& qc) {
  std::array<Poly, 4> f3 = tm.p3;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const Poly dpk = poly_diff(tm.p2[k], l);
      if (dpk.empty()) continue;
      const Poly contrib = poly_mul(dpk, qc.q2[l]);
      for (const auto& [m, v] : contrib) f3[k][m] += v;
    }
  }
  return f3;
}

std::array<Poly, 4> resonant_part(const std::array<Poly, 4>& f3) {
  std::array<Poly, 4> out;
  for (int k = 0; k < 4; ++k) {
    const int want = k < 2 ? +1 : -1;
    for (const auto& [m, v] : f3[k]) {
      if (rotation_weight(m) == want) out[k][m] = v;
    }
  }
  return out;
}

RawCoefficients run_pipeline(const wc::WilsonCowanParams& p, double eps,
                             Complex eigvec_scale) {
  const TaylorModel tm = taylor_expand(p, eps, eigvec_scale);
  const QuadraticChange qc = solve_homological(tm);
  const std::array<Poly, 4> f3 = compute_f3(tm, qc);

  const Eigen::Matrix4cd cm = c_matrix();
  // g3 = C f3(C x) (C is involutive); only component 1 is read out, the
  // z2 equation follows from the oscillator swap.
  Poly g1;
  for (int j = 0; j < 4; ++j) {
    if (cm(0, j) == Complex{0.0, 0.0}) continue;
    const Poly sub = poly_substitute(f3[j], cm);
    add_scaled(g1, sub, cm(0, j));
  }
  const Eigen::Matrix4cd lin =
      cm * Eigen::Vector4cd(tm.mu[0], tm.mu[1], tm.mu[2], tm.mu[3]).asDiagonal() * cm;

  auto coef = [&](int a, int b, int cc, int dd) {
    const auto it = g1.find(Mono{a, b, cc, dd});
    return it == g1.end() ? Complex{0.0, 0.0} : it->second;
  };
  RawCoefficients rc;
  rc.lin_self = lin(0, 0);
  rc.lin_cross = lin(0, 1);
  rc.c_self = coef(2, 0, 1, 0);  // z1 |z1|^2
  rc.c_ae2 = coef(1, 1, 0, 1);   // z1 |z2|^2
  rc.c_ae3 = coef(2, 0, 0, 1);   // z1^2 conj z2
  rc.c_be1 = coef(1, 1, 1, 0);   // z2 |z1|^2
  rc.c_be2 = coef(0, 2, 0, 1);   // z2 |z2|^2
  rc.c_be3 = coef(0, 2, 1, 0);   // z2^2 conj z1
  rc.max_residual = qc.max_residual;
  rc.smallest_divisor = qc.smallest_divisor;
  return rc;
}

ExtractionReport extract_coefficients(const wc::WilsonCowanParams& p, double eps_probe,
                                      Complex eigvec_scale) {
  if (!(eps_probe > 0.0)) throw DomainError("extract_coefficients: eps_probe must be > 0");
  const RawCoefficients base = run_pipeline(p, 0.0, eigvec_scale);
  const RawCoefficients full = run_pipeline(p, eps_probe, eigvec_scale);
  const RawCoefficients half = run_pipeline(p, eps_probe / 2.0, eigvec_scale);

  auto slope = [&](Complex c_eps, Complex c_half, Complex c0, double ep) {
    const Complex s_full = (c_eps - c0) / ep;
    const Complex s_half = (c_half - c0) / (ep / 2.0);
    return std::pair<Complex, Complex>{2.0 * s_half - s_full, s_half - s_full};
  };

  struct Slot {
    Complex base, full, half;
  };
  const std::array<Slot, 8> slots = {{
      {base.lin_self, full.lin_self, half.lin_self},
      {base.lin_cross, full.lin_cross, half.lin_cross},
      {base.c_self, full.c_self, half.c_self},
      {base.c_ae2, full.c_ae2, half.c_ae2},
      {base.c_ae3, full.c_ae3, half.c_ae3},
      {base.c_be1, full.c_be1, half.c_be1},
      {base.c_be2, full.c_be2, half.c_be2},
      {base.c_be3, full.c_be3, half.c_be3},
  }};
  std::array<Complex, 8> lin_coef;
  double delta_abs = 0.0, scale = 0.0;
  for (size_t i = 0; i < slots.size(); ++i) {
    const auto [value, delta] = slope(slots[i].full, slots[i].half, slots[i].base, eps_probe);
    lin_coef[i] = value;
    delta_abs = std::max(delta_abs, std::abs(delta));
    scale = std::max(scale, std::abs(value));
  }

  ExtractionReport report;
  report.eps_probe = eps_probe;
  report.lambda_hat = base.lin_self.real();
  const double omega = base.lin_self.imag();
  const Complex alpha01 = base.c_self;
  const std::array<Complex, 4> alpha_eps = {lin_coef[0], lin_coef[2], lin_coef[3],
                                            lin_coef[4]};
  const std::array<Complex, 4> beta_eps = {lin_coef[1], lin_coef[5], lin_coef[6],
                                           lin_coef[7]};
  report.coefficients = NormalFormCoefficients::create(omega, alpha01, alpha_eps, beta_eps);
  report.max_residual = std::max({base.max_residual, full.max_residual, half.max_residual});
  report.smallest_divisor =
      std::min({base.smallest_divisor, full.smallest_divisor, half.smallest_divisor});
  report.extrapolation_delta = scale > 0.0 ? delta_abs / scale : 0.0;
  report.warning = delta_abs > 1e-3 * scale;
  return report;
}

}  // namespace hopfduet::extract
