#include "hopfduet/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hopfduet/errors.hpp"
#include "hopfduet/states.hpp"

namespace hopfduet::dyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTrivialMultiplierTol = 1e-4;
constexpr double kStabilityMargin = 1e-6;
constexpr double kAmplitudeFloor = 1e-6;

std::vector<Complex> monodromy_eigenvalues(const Mat& m) {
  Eigen::EigenSolver<Mat> es(m);
  std::vector<Complex> vals(m.rows());
  for (int i = 0; i < m.rows(); ++i) vals[i] = es.eigenvalues()(i);
  std::sort(vals.begin(), vals.end(),
            [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
  return vals;
}

/// Quadratically refined local maxima times of a sampled scalar signal.
std::vector<double> peak_times(const std::vector<double>& t, const std::vector<double>& v) {
  std::vector<double> peaks;
  for (size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] >= v[i - 1] && v[i] > v[i + 1]) {
      const double denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
      double shift = 0.0;
      if (denom < 0.0) shift = 0.5 * (v[i - 1] - v[i + 1]) / denom;
      const double dt = 0.5 * (t[i + 1] - t[i - 1]);
      peaks.push_back(t[i] + shift * dt);
    }
  }
  return peaks;
}

double circular_mean(const std::vector<double>& angles) {
  double cx = 0.0, sx = 0.0;
  for (double a : angles) {
    cx += std::cos(a);
    sx += std::sin(a);
  }
  return wrap_angle(std::atan2(sx, cx));
}

}  // namespace

std::string to_string(OrbitSymmetry s) {
  switch (s) {
    case OrbitSymmetry::IP: return "IP";
    case OrbitSymmetry::AP: return "AP";
    case OrbitSymmetry::asym: return "asym";
    case OrbitSymmetry::symmetric_fixed_pattern: return "symmetric-fixed-pattern";
  }
  return "?";
}

std::vector<Complex> floquet_multipliers(const OscillatorPairSystem& sys, const Vec& x0,
                                         double period, const ode::IntegratorConfig& cfg,
                                         double t0) {
  const auto flow = ode::integrate_with_variational(sys, x0, t0, t0 + period, cfg);
  return monodromy_eigenvalues(flow.monodromy);
}

double measure_phase_difference(const OscillatorPairSystem& sys,
                                const ode::Trajectory& tr) {
  if (tr.t.size() < 8) throw DomainError("measure_phase_difference: trajectory too short");

  // Normal form systems expose phases directly.
  bool direct = true;
  std::vector<double> inst;
  inst.reserve(tr.x.size());
  for (const auto& x : tr.x) {
    const auto ph = sys.instant_phase_difference(x);
    if (!ph) {
      direct = false;
      break;
    }
    inst.push_back(*ph);
  }
  if (direct && !inst.empty()) return circular_mean(inst);

  std::vector<double> s1(tr.t.size()), s2(tr.t.size());
  double lo1 = 1e300, hi1 = -1e300;
  for (size_t i = 0; i < tr.t.size(); ++i) {
    s1[i] = sys.signal(tr.x[i], 1);
    s2[i] = sys.signal(tr.x[i], 2);
    lo1 = std::min(lo1, s1[i]);
    hi1 = std::max(hi1, s1[i]);
  }
  if (hi1 - lo1 < kAmplitudeFloor) {
    throw DomainError("measure_phase_difference: no oscillation detected");
  }
  const std::vector<double> p1 = peak_times(tr.t, s1);
  const std::vector<double> p2 = peak_times(tr.t, s2);
  if (p1.size() < 6 || p2.empty()) {
    throw DomainError("measure_phase_difference: too few oscillation cycles");
  }
  // Period from successive oscillator-1 peaks (mean over the window).
  const double period = (p1.back() - p1.front()) / static_cast<double>(p1.size() - 1);
  std::vector<double> angles;
  for (size_t i = 1; i + 1 < p1.size(); ++i) {
    // nearest oscillator-2 peak
    const auto it = std::lower_bound(p2.begin(), p2.end(), p1[i]);
    double best = 1e300;
    for (int off : {-1, 0}) {
      const auto jt = it + off;
      if (jt < p2.begin() || jt >= p2.end()) continue;
      if (std::abs(*jt - p1[i]) < std::abs(best)) best = *jt - p1[i];
    }
    if (best > 1e299) continue;
    angles.push_back(kTwoPi * best / period);
  }
  if (angles.size() < 5) {
    throw DomainError("measure_phase_difference: fewer than 5 usable cycles");
  }
  return circular_mean(angles);
}

SymmetryResiduals orbit_symmetry(const OscillatorPairSystem& sys, const OrbitRecord& o) {
  SymmetryResiduals r;
  const size_t n = o.samples.size();
  if (n < 4) return r;
  const size_t half = n / 2;  // samples are uniform over one period
  double scale = 0.0;
  for (const auto& x : o.samples) scale = std::max(scale, x.norm());
  scale = std::max(scale, 1e-12);
  for (size_t i = 0; i < n; ++i) {
    const Vec swapped = sys.swap_oscillators(o.samples[i]);
    const Vec& here = o.samples[i];
    const Vec& shifted = o.samples[(i + half) % n];
    r.ip = std::max(r.ip, (swapped - here).norm());
    r.ap = std::max(r.ap, (swapped - shifted).norm());
    r.shift = std::max(r.shift, (shifted - here).norm());
  }
  r.ip /= scale;
  r.ap /= scale;
  r.shift /= scale;
  return r;
}

namespace {

OrbitSymmetry classify_symmetry(const SymmetryResiduals& r, double dphi) {
  constexpr double kSymTol = 1e-5;
  if (r.ip < kSymTol && r.shift < kSymTol) return OrbitSymmetry::symmetric_fixed_pattern;
  if (r.ip < kSymTol) return OrbitSymmetry::IP;
  if (r.ap < kSymTol) return OrbitSymmetry::AP;
  // fall back on the measured phase difference
  const double api = std::abs(dphi - std::numbers::pi);
  if (dphi < 0.05 || kTwoPi - dphi < 0.05) return OrbitSymmetry::IP;
  if (api < 0.05) return OrbitSymmetry::AP;
  return OrbitSymmetry::asym;
}

}  // namespace

OrbitRecord find_periodic_orbit(const OscillatorPairSystem& sys, const Vec& guess,
                                double guess_period, const ode::IntegratorConfig& cfg,
                                const ShootingOptions& opts) {
  const int n = sys.dim();
  if (guess.size() != n) throw DomainError("find_periodic_orbit: dimension mismatch");
  if (!(guess_period > 0.0)) throw DomainError("find_periodic_orbit: period must be > 0");

  Vec x = guess;
  if (opts.enforce_swap_symmetry) x = 0.5 * (x + sys.swap_oscillators(x));
  double period = guess_period;
  const bool autonomous = sys.autonomous();

  Vec section_normal(n);
  double section_offset = 0.0;
  if (autonomous) {
    Vec f(n);
    sys.rhs(0.0, x, f);
    const double fn = f.norm();
    if (fn < 1e-14) {
      throw DomainError("find_periodic_orbit: guess is an equilibrium (degenerate section)");
    }
    section_normal = f / fn;
    section_offset = section_normal.dot(x);
  }

  Mat monodromy(n, n);
  bool converged = false;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const auto flow = ode::integrate_with_variational(sys, x, 0.0, period, cfg);
    monodromy = flow.monodromy;
    if (autonomous) {
      Vec f_end(n);
      sys.rhs(period, flow.x, f_end);
      Eigen::VectorXd rhs(n + 1);
      rhs.head(n) = flow.x - x;
      rhs(n) = section_normal.dot(x) - section_offset;
      if (rhs.head(n).norm() <= opts.tolerance && std::abs(rhs(n)) <= opts.tolerance) {
        converged = true;
        break;
      }
      Mat jac = Mat::Zero(n + 1, n + 1);
      jac.topLeftCorner(n, n) = flow.monodromy - Mat::Identity(n, n);
      jac.block(0, n, n, 1) = f_end;
      jac.block(n, 0, 1, n) = section_normal.transpose();
      const Eigen::VectorXd delta = jac.fullPivLu().solve(-rhs);
      x += delta.head(n);
      if (opts.enforce_swap_symmetry) x = 0.5 * (x + sys.swap_oscillators(x));
      period += delta(n);
      if (!(period > 0.0) || !x.allFinite()) {
        throw ConvergenceError("find_periodic_orbit: Newton left the valid domain");
      }
    } else {
      const Vec rhs = flow.x - x;
      if (rhs.norm() <= opts.tolerance) {
        converged = true;
        break;
      }
      const Mat jac = flow.monodromy - Mat::Identity(n, n);
      const Vec delta = jac.fullPivLu().solve(-rhs);
      x += delta;
      if (opts.enforce_swap_symmetry) x = 0.5 * (x + sys.swap_oscillators(x));
      if (!x.allFinite()) {
        throw ConvergenceError("find_periodic_orbit: Newton left the valid domain");
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("find_periodic_orbit: no convergence in " +
                           std::to_string(opts.max_iterations) + " iterations");
  }

  OrbitRecord rec;
  rec.system_id = sys.id();
  rec.period = period;
  rec.x0 = x;
  rec.floquet = monodromy_eigenvalues(monodromy);

  // Forced responses may close after a fraction of the stroboscopic period
  // (identical inputs have period T/2); report the minimal closure.
  if (!autonomous) {
    const double scale = std::max(1.0, x.norm());
    for (const double frac : {0.25, 0.5}) {
      const Vec xf = ode::integrate_to(sys, x, 0.0, frac * period, cfg);
      if ((xf - x).norm() <= 1e-7 * scale) {
        rec.period = frac * period;
        break;
      }
    }
  }

  // samples over one period
  const int m = std::max(16, opts.record_samples);
  const auto tr = ode::integrate(sys, x, 0.0, period, cfg, period / m);
  rec.sample_times = tr.t;
  rec.samples = tr.x;

  // phase difference over several periods for robustness
  const auto tr_long = ode::integrate(sys, x, 0.0, 8.0 * period, cfg, period / 64.0);
  try {
    rec.dphi = measure_phase_difference(sys, tr_long);
  } catch (const DomainError&) {
    rec.dphi = 0.0;
  }

  // stability from non-trivial multipliers
  std::vector<Complex> nontrivial = rec.floquet;
  if (autonomous) {
    auto closest = nontrivial.begin();
    double best = 1e300;
    for (auto it2 = nontrivial.begin(); it2 != nontrivial.end(); ++it2) {
      const double d = std::abs(*it2 - Complex{1.0, 0.0});
      if (d < best) {
        best = d;
        closest = it2;
      }
    }
    if (best > kTrivialMultiplierTol) {
      throw ConvergenceError(
          "find_periodic_orbit: autonomous orbit lacks a trivial unit multiplier");
    }
    nontrivial.erase(closest);
  }
  double max_mod = 0.0;
  for (const auto& mlt : nontrivial) max_mod = std::max(max_mod, std::abs(mlt));
  rec.max_nontrivial_modulus = max_mod;
  rec.stable = max_mod < 1.0 - kStabilityMargin;

  rec.symmetry = classify_symmetry(orbit_symmetry(sys, rec), rec.dphi);
  return rec;
}

}  // namespace hopfduet::dyn
