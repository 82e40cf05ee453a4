#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hopfduet/ode.hpp"
#include "hopfduet/orbits.hpp"
#include "hopfduet/systems.hpp"

namespace hopfduet::dyn {

enum class AttractorClass { FP, IP, AP, LA, HA, OTHER, UNRESOLVED };
std::string to_string(AttractorClass c);
using ClassSet = std::set<AttractorClass>;
std::string to_string(const ClassSet& s);  // '+'-joined sorted labels

struct ClassifyConfig {
  double intrinsic_period = 0.0;   // must be set by the caller (2 pi / omega)
  double transient_periods = 200.0;
  double window_periods = 50.0;
  double fp_floor = 1e-6;          // oscillation floor for FP classification
  double dphi_tol = 0.05;          // |dphi| and |dphi - pi| tolerances
  double ha_threshold = 0.5;       // forced systems: peak-to-peak above -> HA
  bool forced = false;             // LA/HA classification instead of FP
};

/// Fixed IC policy: symmetric (0.1, 0.05) replicated; anti-phase with
/// oscillator 2 negated in the E-like component; near-origin 1e-3 uniform;
/// high-amplitude probe 0.8 uniform. (Reduced chart gets its own images.)
std::vector<Vec> default_ic_policy(const OscillatorPairSystem& sys);

struct AttractorResult {
  AttractorClass cls = AttractorClass::UNRESOLVED;
  double dphi = 0.0;
  double amplitude = 0.0;  // half peak-to-peak of the oscillator-1 signal
};

/// Classify the attractor reached from one initial condition.
AttractorResult classify_single(const OscillatorPairSystem& sys, const Vec& ic,
                                const ClassifyConfig& cc, const ode::IntegratorConfig& ic_cfg);

/// Union of classifications over the IC policy (never drops UNRESOLVED).
ClassSet classify_attractor(const OscillatorPairSystem& sys, const ClassifyConfig& cc,
                            const ode::IntegratorConfig& cfg,
                            const std::vector<Vec>& extra_ics = {});

struct SweepAxis {
  std::string name;
  double lo = 0.0, hi = 1.0;
  int count = 2;
};

using SystemFactory =
    std::function<std::unique_ptr<OscillatorPairSystem>(double p1, double p2)>;

struct SweepCell {
  int i = 0, j = 0;
  double p1 = 0.0, p2 = 0.0;
  ClassSet classes;
};

struct BifurcationEvent {
  std::string type;  // HB, PF, PD, TR, FOLD (BOUNDARY when undetermined)
  double p1 = 0.0, p2 = 0.0;
  std::string branch;
};

struct BifurcationDiagram {
  SweepAxis axis1, axis2;
  std::vector<SweepCell> cells;  // row-major (i over axis1, j over axis2)
  std::vector<BifurcationEvent> events;
};

struct SweepConfig {
  SweepAxis axis1, axis2;
  ClassifyConfig classify;
  int jobs = 0;                   // 0: hardware concurrency
  bool locate_boundaries = true;  // bisect boundary events between cells
  double boundary_tol = 1e-3;     // bisection tolerance in the varying parameter
};

BifurcationDiagram sweep(const SystemFactory& make, const SweepConfig& sc,
                         const ode::IntegratorConfig& cfg);

/// Branch continuation in one parameter with Floquet-based event detection.
struct BranchOptions {
  double initial_step = 5e-3;
  double min_step = 1e-5;
  double event_tol = 1e-3;     // bisection accuracy in the parameter
  int max_points = 400;
  ShootingOptions shooting;
};

struct BranchPoint {
  double param = 0.0;
  double period = 0.0;
  double max_nontrivial_modulus = 0.0;
  bool stable = false;
  double dphi = 0.0;
  Vec x0;
};

struct BranchEvent {
  std::string type;  // TR, PF, PD, FOLD
  double param = 0.0;
};

struct BranchResult {
  std::vector<BranchPoint> points;
  std::vector<BranchEvent> events;
  bool ended_at_fold = false;
};

using ParamSystemFactory =
    std::function<std::unique_ptr<OscillatorPairSystem>(double param)>;

BranchResult follow_branch(const ParamSystemFactory& make, const OrbitRecord& orbit0,
                           double param0, double param1, const ode::IntegratorConfig& cfg,
                           const BranchOptions& opts = {});

/// Empirical stability edge of a symmetric orbit family: bisects the flip of
/// the orbit's max non-trivial multiplier modulus through 1 between lo and hi.
/// orbit_at must locate the family member at the given parameter.
double empirical_stability_boundary(
    const std::function<OrbitRecord(double)>& orbit_at, double lo, double hi,
    double tol = 1e-3);

}  // namespace hopfduet::dyn
