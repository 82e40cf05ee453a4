#pragma once

#include "hopfduet/coefficients.hpp"
#include "hopfduet/states.hpp"

namespace hopfduet::nf {

struct PolarDeriv {
  double dr1 = 0, dr2 = 0, dphi1 = 0, dphi2 = 0;
};

struct ReducedDeriv {
  double ds = 0, dd = 0, ddphi = 0;
};

/// Truncated normal form vector field in complex coordinates.
CartesianState eval_cartesian(const CartesianState& state, const UnfoldingParams& p,
                              const NormalFormCoefficients& c);

/// Polar chart evaluation; requires r1, r2 > 0 (throws SingularChartError).
PolarDeriv eval_polar(const PolarState& state, const UnfoldingParams& p,
                      const NormalFormCoefficients& c);

/// Reduced (s, d, dphi) evaluation; requires s > |d| away from the guard.
ReducedDeriv eval_reduced(const ReducedState& state, const UnfoldingParams& p,
                          const NormalFormCoefficients& c);

// Coupling terms, literal transcriptions. f_r/f_phi take (r1, r2, dphi);
// the mirrored oscillator uses (r2, r1, -dphi).
double coupling_fr(double r1, double r2, double dphi, const NormalFormCoefficients& c);
double coupling_fphi(double r1, double r2, double dphi, const NormalFormCoefficients& c);
double coupling_fdphi(double r1, double r2, double dphi, const NormalFormCoefficients& c);
double coupling_gs(double s, double d, double dphi, const NormalFormCoefficients& c);
double coupling_gd(double s, double d, double dphi, const NormalFormCoefficients& c);
double coupling_gdphi(double s, double d, double dphi, const NormalFormCoefficients& c);

/// Wirtinger derivatives of the z1 equation; the z2 equation follows by the
/// oscillator swap. Used to assemble the real 4x4 Jacobian of the flow.
struct WirtingerBlock {
  Complex f_z1, f_z1b, f_z2, f_z2b;
};
WirtingerBlock d_eval_z1(const CartesianState& state, const UnfoldingParams& p,
                         const NormalFormCoefficients& c);

}  // namespace hopfduet::nf
