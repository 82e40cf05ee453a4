#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hopfduet/ode.hpp"
#include "hopfduet/systems.hpp"

namespace hopfduet::dyn {

enum class OrbitSymmetry { IP, AP, asym, symmetric_fixed_pattern };
std::string to_string(OrbitSymmetry s);

struct OrbitRecord {
  std::string system_id;
  double period = 0.0;
  std::vector<double> sample_times;  // over one period
  std::vector<Vec> samples;
  std::vector<Complex> floquet;      // sorted by modulus, descending
  double dphi = 0.0;                 // in [0, 2 pi)
  OrbitSymmetry symmetry = OrbitSymmetry::asym;
  bool stable = false;
  Vec x0;                            // converged point on the orbit

  /// Largest non-trivial multiplier modulus (trivial unit multiplier of
  /// autonomous orbits excluded).
  double max_nontrivial_modulus = 0.0;
};

struct ShootingOptions {
  int max_iterations = 50;
  double tolerance = 1e-9;       // Newton residual norm
  int strobe_multiple = 1;       // forced systems: period = k * base_period
  int record_samples = 128;      // samples stored over one period
  /// Project Newton iterates onto the swap-invariant subspace. Used when
  /// following a symmetric orbit family through its pitchfork, where the
  /// full shooting Jacobian is singular and iterates can hop onto the
  /// bifurcating asymmetric solutions.
  bool enforce_swap_symmetry = false;
};

/// Newton shooting. Autonomous systems solve for (x0, T) with a Poincare
/// phase condition through the guess; forced systems solve the stroboscopic
/// fixed point at fixed period strobe_multiple * base_period. Floquet
/// multipliers, phase difference and symmetry class are filled in.
OrbitRecord find_periodic_orbit(const OscillatorPairSystem& sys, const Vec& guess,
                                double guess_period, const ode::IntegratorConfig& cfg,
                                const ShootingOptions& opts = {});

/// Multipliers of the monodromy matrix around one period, modulus-descending.
std::vector<Complex> floquet_multipliers(const OscillatorPairSystem& sys, const Vec& x0,
                                         double period, const ode::IntegratorConfig& cfg,
                                         double t0 = 0.0);

/// Peak-timing phase difference (2 pi (t_peak2 - t_peak1)/T, circular mean
/// over the cycles found). For NF systems the complex phases are used
/// directly. Throws DomainError when no oscillation is detected.
double measure_phase_difference(const OscillatorPairSystem& sys, const ode::Trajectory& tr);

/// Swap-symmetry residuals of a closed orbit, normalized by amplitude:
/// IP residual max|swap x(t) - x(t)|, AP residual max|swap x(t) - x(t+T/2)|,
/// and shift residual max|x(t+T/2) - x(t)| (temporal symmetry).
struct SymmetryResiduals {
  double ip = 0.0;
  double ap = 0.0;
  double shift = 0.0;
};
SymmetryResiduals orbit_symmetry(const OscillatorPairSystem& sys, const OrbitRecord& orbit);

}  // namespace hopfduet::dyn
