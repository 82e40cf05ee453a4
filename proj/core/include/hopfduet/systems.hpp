#pragma once

#include <memory>
#include <optional>
#include <string>

#include "hopfduet/coefficients.hpp"
#include "hopfduet/normal_form.hpp"
#include "hopfduet/ode.hpp"
#include "hopfduet/states.hpp"
#include "hopfduet/wilson_cowan.hpp"

namespace hopfduet::dyn {

using ode::Mat;
using ode::Vec;

/// A coupled oscillator-pair system exposing the structure the engine needs:
/// the swap symmetry, an oscillation signal per oscillator, and (for normal
/// form systems) instantaneous phases.
class OscillatorPairSystem : public ode::DynamicalSystem {
 public:
  virtual std::string id() const = 0;
  /// Exchange the two oscillators in the state vector.
  virtual Vec swap_oscillators(const Vec& x) const = 0;
  /// Scalar oscillation signal for oscillator 1 or 2 (E activity / Re z).
  virtual double signal(const Vec& x, int oscillator) const = 0;
  /// Distance of the state from the quiescent equilibrium.
  virtual double amplitude(const Vec& x) const = 0;
  /// Instantaneous phase difference when directly available (NF systems).
  virtual std::optional<double> instant_phase_difference(const Vec& x) const {
    (void)x;
    return std::nullopt;
  }
};

/// Truncated normal form in real coordinates (Re z1, Im z1, Re z2, Im z2).
class NfCartesianSystem final : public OscillatorPairSystem {
 public:
  NfCartesianSystem(const UnfoldingParams& p, const NormalFormCoefficients& c)
      : p_(p), c_(c) {
    c_.validate();
  }
  int dim() const override { return 4; }
  std::string id() const override { return "nf-cartesian"; }
  void rhs(double t, const Vec& x, Vec& dx) const override;
  void jacobian(double t, const Vec& x, Mat& j) const override;
  Vec swap_oscillators(const Vec& x) const override;
  double signal(const Vec& x, int oscillator) const override;
  double amplitude(const Vec& x) const override;
  std::optional<double> instant_phase_difference(const Vec& x) const override;
  const UnfoldingParams& params() const { return p_; }
  const NormalFormCoefficients& coefficients() const { return c_; }

 private:
  UnfoldingParams p_;
  NormalFormCoefficients c_;
};

/// Reduced (s, d, dphi) system. The angle is NOT wrapped inside the flow.
class NfReducedSystem final : public OscillatorPairSystem {
 public:
  NfReducedSystem(const UnfoldingParams& p, const NormalFormCoefficients& c)
      : p_(p), c_(c) {
    c_.validate();
  }
  int dim() const override { return 3; }
  std::string id() const override { return "nf-reduced"; }
  void rhs(double t, const Vec& x, Vec& dx) const override;
  Vec swap_oscillators(const Vec& x) const override;  // (s, -d, -dphi)
  double signal(const Vec& x, int oscillator) const override;
  double amplitude(const Vec& x) const override;

 private:
  UnfoldingParams p_;
  NormalFormCoefficients c_;
};

/// Coupled unforced Wilson-Cowan pair, state (E1, I1, E2, I2).
class WilsonCowanSystem final : public OscillatorPairSystem {
 public:
  explicit WilsonCowanSystem(const wc::WilsonCowanParams& p) : p_(p) { p_.validate(); }
  int dim() const override { return 4; }
  std::string id() const override { return "wc"; }
  void rhs(double t, const Vec& x, Vec& dx) const override;
  void jacobian(double t, const Vec& x, Mat& j) const override;
  Vec swap_oscillators(const Vec& x) const override;
  double signal(const Vec& x, int oscillator) const override;
  double amplitude(const Vec& x) const override;
  const wc::WilsonCowanParams& params() const { return p_; }

 private:
  wc::WilsonCowanParams p_;
};

/// Periodically forced Wilson-Cowan pair (non-autonomous).
class ForcedWilsonCowanSystem final : public OscillatorPairSystem {
 public:
  ForcedWilsonCowanSystem(const wc::WilsonCowanParams& p, const wc::ForcingParams& f)
      : p_(p), f_(f) {
    p_.validate();
    f_.validate();
  }
  int dim() const override { return 4; }
  bool autonomous() const override { return false; }
  std::string id() const override { return "wc-forced"; }
  void rhs(double t, const Vec& x, Vec& dx) const override;
  void jacobian(double t, const Vec& x, Mat& j) const override;
  Vec swap_oscillators(const Vec& x) const override;
  double signal(const Vec& x, int oscillator) const override;
  double amplitude(const Vec& x) const override;
  const wc::WilsonCowanParams& params() const { return p_; }
  const wc::ForcingParams& forcing() const { return f_; }
  /// Base stroboscopic period 1/(2 f).
  double base_period() const { return 0.5 / f_.f; }

 private:
  wc::WilsonCowanParams p_;
  wc::ForcingParams f_;
};

}  // namespace hopfduet::dyn
