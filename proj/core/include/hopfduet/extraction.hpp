#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hopfduet/coefficients.hpp"
#include "hopfduet/wilson_cowan.hpp"

namespace hopfduet::extract {

/// Exponent tuple of a monomial y1^m0 y2^m1 y3^m2 y4^m3 over the complex
/// eigenbasis, with y3 = conj(y1) and y4 = conj(y2).
using Mono = std::array<int, 4>;

/// Sparse homogeneous polynomial, one component of a vector field.
using Poly = std::map<Mono, Complex>;

Poly poly_mul(const Poly& p, const Poly& q);
Complex poly_eval(const Poly& p, const std::array<Complex, 4>& y);
/// d p / d y_var as a polynomial.
Poly poly_diff(const Poly& p, int var);
/// Substitute y_i = sum_j M(i,j) x_j into p.
Poly poly_substitute(const Poly& p, const Eigen::Matrix4cd& m);

/// Degree <= 3 Taylor data of the coupled Wilson-Cowan pair at the origin,
/// in the complex eigenbasis ordered (y1, y2, conj y1, conj y2) with
/// linear part diag(mu+, mu-, conj mu+, conj mu-). mu+ belongs to the
/// symmetric (oscillator-swap even) mode.
struct TaylorModel {
  std::array<Complex, 4> mu;           // (mu+, mu-, conj mu+, conj mu-)
  Eigen::Matrix4cd basis;              // columns: eigenvectors, E1-component 1
  Eigen::Matrix4cd basis_inv;
  std::array<Poly, 4> p2;              // quadratic part per component
  std::array<Poly, 4> p3;              // cubic part per component
  double eps = 0.0;
};

/// Quadratic change of variables z = y + Q2(y) removing all quadratic terms.
struct QuadraticChange {
  std::array<Poly, 4> q2;
  double smallest_divisor = 0.0;
  double max_residual = 0.0;  // residual of the homological equations
};

struct ExtractionReport {
  NormalFormCoefficients coefficients;
  double eps_probe = 0.0;
  std::string normalization = "eigenvector E-component = 1";
  double max_residual = 0.0;
  double smallest_divisor = 0.0;
  double lambda_hat = 0.0;          // Re of the eigenvalue at the expansion slope
  double extrapolation_delta = 0.0; // Richardson error estimate, relative
  bool warning = false;             // extrapolation delta above threshold
};

/// Step 1: Taylor-expand the coupled pair at the origin at coupling eps and
/// transform to the complex eigenbasis. Throws NotAdmissibleError when the
/// symmetric/antisymmetric linearization blocks are not oscillatory.
/// eigvec_scale multiplies both eigenvectors; it exists to exercise the
/// normalization-freedom invariants (cubic coefficients scale by |c|^2).
TaylorModel taylor_expand(const wc::WilsonCowanParams& p, double eps,
                          Complex eigvec_scale = Complex{1.0, 0.0});

/// Step 2: solve the homological equations q = p/(m.mu - mu_k) per monomial.
/// divisor_floor defaults to 1e-8 * |omega|.
QuadraticChange solve_homological(const TaylorModel& tm, double divisor_floor = -1.0);

/// Step 3: resonant cubic f3 = P3 + DP2 . Q2. Returns all cubic monomials;
/// use resonant_part() to restrict to the six resonant families.
std::array<Poly, 4> compute_f3(const TaylorModel& tm, const QuadraticChange& qc);

/// Keep only monomials with m1 + m2 - m3 - m4 = +1 (components 1, 2)
/// or -1 (components 3, 4).
std::array<Poly, 4> resonant_part(const std::array<Poly, 4>& f3);

/// Oscillator-coordinate coefficients after the C change (one run at fixed eps).
struct RawCoefficients {
  Complex lin_self;   // lambda_hat + i omega + eps alpha_eps0
  Complex lin_cross;  // eps beta_eps0
  Complex c_self;     // alpha01 + eps alpha_eps1   (z1 |z1|^2)
  Complex c_ae2;      // eps alpha_eps2             (z1 |z2|^2)
  Complex c_ae3;      // eps alpha_eps3             (z1^2 conj z2)
  Complex c_be1;      // eps beta_eps1              (z2 |z1|^2)
  Complex c_be2;      // eps beta_eps2              (z2 |z2|^2)
  Complex c_be3;      // eps beta_eps3              (z2^2 conj z1)
  double max_residual = 0.0;
  double smallest_divisor = 0.0;
};
RawCoefficients run_pipeline(const wc::WilsonCowanParams& p, double eps,
                             Complex eigvec_scale = Complex{1.0, 0.0});

/// Step 4 + epsilon splitting: run at eps = 0 (fixes omega, alpha01), then at
/// eps_probe and eps_probe/2 with Richardson extrapolation for the linear-in-
/// eps coefficients. The slope lambda_slope of `p` is used as the expansion
/// point (Table-2 reproduction uses lambda_c).
ExtractionReport extract_coefficients(const wc::WilsonCowanParams& p,
                                      double eps_probe = 2e-4,
                                      Complex eigvec_scale = Complex{1.0, 0.0});

}  // namespace hopfduet::extract
