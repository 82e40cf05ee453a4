#pragma once

#include <complex>

#include "hopfduet/coefficients.hpp"

namespace hopfduet {

/// Point of the 4D system in complex oscillator amplitudes.
struct CartesianState {
  Complex z1{};
  Complex z2{};
};

/// Polar chart, valid for r1, r2 > 0. Angles live in [0, 2*pi).
struct PolarState {
  double r1 = 0.0;
  double r2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// Sum/difference chart: s = r1 + r2, d = r1 - r2, dphi = phi2 - phi1.
/// Valid on s > |d| (the phase-difference equation has 1/(s^2 - d^2) terms).
struct ReducedState {
  double s = 0.0;
  double d = 0.0;
  double dphi = 0.0;
};

/// Amplitude pair plus phase difference (a reduced state without the s/d mix).
struct PolarPair {
  double r1 = 0.0;
  double r2 = 0.0;
  double dphi = 0.0;
};

/// Unfolding parameters: lambda = distance from the Hopf, eps = coupling.
struct UnfoldingParams {
  double lambda = 0.0;
  double eps = 0.0;
};

/// Wrap to [0, 2*pi). Exact at 0 and pi: values already in range pass through.
double wrap_angle(double phi);

/// Chart maps. to_polar throws SingularChartError at r ~ 0 (the polar
/// angles are undefined there); the guard is s - |d| < 1e-9 * max(1, s).
PolarState to_polar(const CartesianState& z);
CartesianState to_cartesian(const PolarState& p);
ReducedState polar_to_reduced(const PolarState& p);
PolarPair reduced_to_polar(const ReducedState& r);

/// Chart-singularity guard used by the polar/reduced evaluations.
bool near_singular(double s, double d);

}  // namespace hopfduet
