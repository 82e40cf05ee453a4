#pragma once

#include <array>
#include <complex>
#include <string>

namespace hopfduet {

using Complex = std::complex<double>;

/// Constants of the truncated normal form for two identical oscillators
/// near Hopf bifurcation:
///
///   dz1/dt = z1 (lambda + i omega + alpha01 |z1|^2)
///          + eps [ z1 (ae0 + ae1 |z1|^2 + ae2 |z2|^2 + ae3 conj(z2) z1)
///                + z2 (be0 + be1 |z1|^2 + be2 |z2|^2 + be3 conj(z1) z2) ]
///
/// and the z2 equation with indices 1 <-> 2 swapped. Supercriticality
/// requires Re(alpha01) < 0; construction rejects anything else.
struct NormalFormCoefficients {
  double omega = 1.0;
  Complex alpha01{-1.0, 0.0};
  std::array<Complex, 4> alpha_eps{};  // alpha_eps0..alpha_eps3
  std::array<Complex, 4> beta_eps{};   // beta_eps0..beta_eps3

  /// Validating constructor helper. Throws DomainError on non-finite
  /// values or Re(alpha01) >= 0.
  static NormalFormCoefficients create(double omega, Complex alpha01,
                                       const std::array<Complex, 4>& alpha_eps,
                                       const std::array<Complex, 4>& beta_eps);

  void validate() const;

  // Branch combinations used throughout the bifurcation analysis.
  // K_stb^{+-} = ae2R + ae1R + be3R +- (be2R + be1R + ae3R)
  double k_stb(int branch) const;
  // alpha_bar^{+-} = lambda + eps (ae0R +- be0R)
  double alpha_bar(double lambda, double eps, int branch) const;
  // C_det = be0I * alpha01I / alpha01R
  double c_det() const;
};

/// Flat JSON (de)serialisation with the fixed key list
/// omega, alpha01_re, alpha01_im, alpha_eps0_re, ..., beta_eps3_im.
/// Round-trips finite doubles bit-exactly.
std::string to_json(const NormalFormCoefficients& c);
NormalFormCoefficients coefficients_from_json(const std::string& json_text);

}  // namespace hopfduet
