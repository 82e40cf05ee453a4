#pragma once

#include <string>

#include "hopfduet/coefficients.hpp"

namespace hopfduet::wc {

/// Wilson-Cowan E-I pair parameters. lambda_slope is the sigmoid slope
/// (the model's bifurcation parameter); eps the mutual coupling strength;
/// b_sp the cross-inhibition weight inside the coupling term.
struct WilsonCowanParams {
  double a = 7.0;
  double b = 5.25;
  double c = 5.0;
  double d = 0.7;
  double theta = 2.0;
  double tau = 1.0;
  double lambda_slope = 3.0;
  double eps = 0.0;
  double b_sp = 0.0;

  void validate() const;  // tau > 0, a > d, finite
};

/// The parameter set used for all reference computations.
WilsonCowanParams preset_p();

/// Resolve "paperP" (or load nothing) by name; throws ConfigError otherwise.
WilsonCowanParams preset_by_name(const std::string& name);

struct WCState {
  double E1 = 0, I1 = 0, E2 = 0, I2 = 0;
};

struct ForcingParams {
  double A = 0.0;   // amplitude, >= 0
  double f = 2.5;   // frequency (Hz), > 0
  double h = 0.0;   // input asymmetry in [0, 1]
  int n = 5;        // forcing raised to power 2n
  void validate() const;
};

/// S(x) = 1/(1+exp(-lambda x + theta)) - 1/(1+exp(theta)); S(0) = 0.
/// Exponent argument clamped at +-700 (no effect in the explored region).
double sigmoid(double x, double lambda_slope, double theta);

struct SigmoidDerivs {
  double s = 0, d1 = 0, d2 = 0, d3 = 0;
};
/// Value and first three derivatives, closed logistic forms.
SigmoidDerivs sigmoid_derivatives(double x, double lambda_slope, double theta);

/// S1 = exp(theta)/(1+exp(theta))^2, so that S'(0) = lambda * S1.
double sigmoid_s1(double theta);

/// Coupled unforced pair. Coupling enters only the I equations:
/// tau I1' = -I1 + S(c E1 - d I1 + eps (E2 - b_sp I2)), and symmetrically.
WCState eval_coupled(const WCState& x, const WilsonCowanParams& p);

/// Periodically forced pair with anti-phase inputs in the E equations.
WCState eval_forced(const WCState& x, double t, const WilsonCowanParams& p,
                    const ForcingParams& fp);

/// Inputs to the two E-populations at time t (exposed for tests).
double forcing_input1(double t, const ForcingParams& fp);
double forcing_input2(double t, const ForcingParams& fp);

/// Hopf threshold of the single oscillator: lambda_c = 2/((a-d) S1).
double hopf_slope(const WilsonCowanParams& p);

/// Emergent period at the Hopf branch:
/// T = tau * 2 pi / sqrt(lambda^2 S1^2 (bc - ad) + lambda S1 (d - a) + 1).
double emergent_period(double lambda_slope, const WilsonCowanParams& p);

/// tau that makes emergent_period(lambda_slope) equal 1/(2 f).
double matched_tau(double f, double lambda_slope, const WilsonCowanParams& p);

/// Unfolding parameter for a WC configuration: the real part of the
/// uncoupled single-oscillator eigenvalue at the origin, tr(J0)/2.
double unfolding_lambda(const WilsonCowanParams& p);

/// Imaginary part of that eigenvalue (throws if the linearization is not
/// oscillatory).
double linear_omega(const WilsonCowanParams& p);

}  // namespace hopfduet::wc
