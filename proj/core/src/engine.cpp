#include "hopfduet/engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "hopfduet/errors.hpp"
#include "hopfduet/states.hpp"

namespace hopfduet::dyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double peak_to_peak(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace

std::string to_string(AttractorClass c) {
  switch (c) {
    case AttractorClass::FP: return "FP";
    case AttractorClass::IP: return "IP";
    case AttractorClass::AP: return "AP";
    case AttractorClass::LA: return "LA";
    case AttractorClass::HA: return "HA";
    case AttractorClass::OTHER: return "OTHER";
    case AttractorClass::UNRESOLVED: return "UNRESOLVED";
  }
  return "?";
}

std::string to_string(const ClassSet& s) {
  std::set<std::string> labels;
  for (const auto c : s) labels.insert(to_string(c));
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += '+';
    out += l;
  }
  return out.empty() ? "none" : out;
}

std::vector<Vec> default_ic_policy(const OscillatorPairSystem& sys) {
  std::vector<Vec> ics;
  const int n = sys.dim();
  if (n == 4) {
    // The E-negated seed follows the documented policy; the full anti-state
    // probe sits exactly on the anti-phase subspace, which the E-negated
    // seed can miss when the in-phase basin dominates at its angle.
    Vec sym(4), anti(4), origin(4), high(4), anti_full(4);
    sym << 0.1, 0.05, 0.1, 0.05;
    anti << 0.1, 0.05, -0.1, 0.05;
    origin << 1e-3, 1e-3, 1e-3, 1e-3;
    high << 0.8, 0.8, 0.8, 0.8;
    anti_full << 0.1, 0.05, -0.1, -0.05;
    ics = {sym, anti, origin, high, anti_full};
  } else {
    // reduced chart images of the same policy
    Vec sym(3), anti(3), origin(3), high(3);
    sym << 0.2236, 0.0, 0.0;     // |z| = sqrt(0.1^2+0.05^2) on each oscillator
    anti << 0.2236, 0.0, std::numbers::pi;
    origin << 2e-3, 0.0, 0.0;
    high << 1.6, 0.0, 0.1;
    ics = {sym, anti, origin, high};
  }
  return ics;
}

AttractorResult classify_single(const OscillatorPairSystem& sys, const Vec& ic,
                                const ClassifyConfig& cc,
                                const ode::IntegratorConfig& cfg) {
  if (!(cc.intrinsic_period > 0.0)) {
    throw DomainError("classify_single: intrinsic_period must be set");
  }
  AttractorResult res;
  const double t_tr = cc.transient_periods * cc.intrinsic_period;
  const double t_w = cc.window_periods * cc.intrinsic_period;
  // Fixed symmetry-breaking offset (1e-4 relative): seeds placed exactly on
  // an invariant subspace would otherwise track transversally unstable
  // orbits forever. Deterministic, so classification stays reproducible.
  Vec seed = ic;
  {
    const double scale = 1e-4 * std::max(ic.cwiseAbs().maxCoeff(), 1e-2);
    for (int i = 0; i < seed.size(); ++i) {
      seed(i) += scale * ((i % 2 == 0 ? 1.0 : -1.0) * (1.0 + 0.5 * i));
    }
  }
  Vec x0;
  try {
    x0 = ode::integrate_to(sys, seed, 0.0, t_tr, cfg);
  } catch (const Error&) {
    return res;  // UNRESOLVED
  }
  ode::Trajectory tr;
  try {
    tr = ode::integrate(sys, x0, t_tr, t_tr + t_w, cfg, cc.intrinsic_period / 64.0);
  } catch (const Error&) {
    return res;
  }

  std::vector<double> s1(tr.t.size()), s2(tr.t.size());
  for (size_t i = 0; i < tr.t.size(); ++i) {
    s1[i] = sys.signal(tr.x[i], 1);
    s2[i] = sys.signal(tr.x[i], 2);
  }
  const double p2p = std::max(peak_to_peak(s1), peak_to_peak(s2));
  res.amplitude = 0.5 * p2p;

  if (cc.forced) {
    // Responses are entrained; distinguish LA/HA/IP/AP by the residuals of
    // the spatio-temporal symmetries over the last stroboscopic cycles.
    const size_t per_cycle = 64;
    if (tr.t.size() < 3 * per_cycle) return res;
    double r_swap = 0.0, r_shift = 0.0, r_swapshift = 0.0, scale = 1e-12;
    const size_t start = tr.t.size() - 2 * per_cycle;
    const size_t half = per_cycle / 2;
    for (size_t i = start; i + half < tr.t.size(); ++i) {
      const Vec& here = tr.x[i];
      const Vec shifted = tr.x[i + half];
      const Vec swapped = sys.swap_oscillators(here);
      r_swap = std::max(r_swap, (swapped - here).norm());
      r_shift = std::max(r_shift, (shifted - here).norm());
      r_swapshift = std::max(r_swapshift, (sys.swap_oscillators(shifted) - here).norm());
      scale = std::max(scale, here.norm());
    }
    r_swap /= scale;
    r_shift /= scale;
    r_swapshift /= scale;
    constexpr double tol = 2e-2;
    // closure over one stroboscopic period
    double r_close = 0.0;
    for (size_t i = start; i + per_cycle < tr.t.size(); ++i) {
      r_close = std::max(r_close, (tr.x[i + per_cycle] - tr.x[i]).norm() / scale);
    }
    if (r_close > tol) {
      res.cls = AttractorClass::OTHER;  // no period-1 closure of the 1/(2f) map
      return res;
    }
    if (r_swap < tol && r_shift < tol) {
      res.cls = p2p > cc.ha_threshold ? AttractorClass::HA : AttractorClass::LA;
    } else if (r_swap < tol) {
      res.cls = AttractorClass::IP;
      res.dphi = 0.0;
    } else if (r_swapshift < tol) {
      res.cls = AttractorClass::AP;
      res.dphi = std::numbers::pi;
    } else {
      res.cls = AttractorClass::OTHER;
    }
    return res;
  }

  if (res.amplitude < cc.fp_floor) {
    res.cls = AttractorClass::FP;
    return res;
  }
  // A trajectory whose oscillation amplitude keeps decaying across the
  // window is ringing down onto the equilibrium; converged orbits have a
  // stationary window (ratio ~ 1).
  const size_t mid = s1.size() / 2;
  const double a_first =
      peak_to_peak(std::vector<double>(s1.begin(), s1.begin() + mid));
  const double a_second = peak_to_peak(std::vector<double>(s1.begin() + mid, s1.end()));
  if (a_second < 0.7 * a_first) {
    res.cls = AttractorClass::FP;
    return res;
  }

  double dphi = 0.0;
  try {
    dphi = measure_phase_difference(sys, tr);
  } catch (const DomainError&) {
    return res;  // UNRESOLVED
  }
  res.dphi = dphi;

  // Detect phase drift (torus-like states): compare the phase difference on
  // the two halves of the window.
  ode::Trajectory first_half, second_half;
  const size_t cut = tr.t.size() / 2;
  first_half.t.assign(tr.t.begin(), tr.t.begin() + cut);
  first_half.x.assign(tr.x.begin(), tr.x.begin() + cut);
  second_half.t.assign(tr.t.begin() + cut, tr.t.end());
  second_half.x.assign(tr.x.begin() + cut, tr.x.end());
  double drift = 0.0;
  try {
    const double d1 = measure_phase_difference(sys, first_half);
    const double d2 = measure_phase_difference(sys, second_half);
    drift = std::abs(std::remainder(d2 - d1, kTwoPi));
  } catch (const DomainError&) {
    drift = 0.0;
  }

  const double to_ip = std::min(dphi, kTwoPi - dphi);
  const double to_ap = std::abs(dphi - std::numbers::pi);
  if (drift > 10.0 * cc.dphi_tol) {
    res.cls = AttractorClass::OTHER;
  } else if (to_ip <= cc.dphi_tol && drift <= cc.dphi_tol) {
    res.cls = AttractorClass::IP;
  } else if (to_ap <= cc.dphi_tol && drift <= cc.dphi_tol) {
    res.cls = AttractorClass::AP;
  } else if (drift > cc.dphi_tol) {
    res.cls = AttractorClass::OTHER;
  }
  return res;
}

ClassSet classify_attractor(const OscillatorPairSystem& sys, const ClassifyConfig& cc,
                            const ode::IntegratorConfig& cfg,
                            const std::vector<Vec>& extra_ics) {
  ClassSet out;
  std::vector<Vec> ics = default_ic_policy(sys);
  ics.insert(ics.end(), extra_ics.begin(), extra_ics.end());
  for (const auto& ic : ics) {
    out.insert(classify_single(sys, ic, cc, cfg).cls);
  }
  return out;
}

namespace {

double axis_value(const SweepAxis& ax, int k) {
  if (ax.count <= 1) return ax.lo;
  return ax.lo + (ax.hi - ax.lo) * static_cast<double>(k) / (ax.count - 1);
}

}  // namespace

BifurcationDiagram sweep(const SystemFactory& make, const SweepConfig& sc,
                         const ode::IntegratorConfig& cfg) {
  BifurcationDiagram dia;
  dia.axis1 = sc.axis1;
  dia.axis2 = sc.axis2;
  const int n1 = std::max(1, sc.axis1.count);
  const int n2 = std::max(1, sc.axis2.count);
  dia.cells.resize(static_cast<size_t>(n1) * n2);

  const int jobs = sc.jobs > 0
                       ? sc.jobs
                       : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  auto work = [&]() {
    while (true) {
      const int idx = next.fetch_add(1);
      if (idx >= n1 * n2) break;
      const int i = idx / n2;
      const int j = idx % n2;
      SweepCell cell;
      cell.i = i;
      cell.j = j;
      cell.p1 = axis_value(sc.axis1, i);
      cell.p2 = axis_value(sc.axis2, j);
      const auto sys = make(cell.p1, cell.p2);
      cell.classes = classify_attractor(*sys, sc.classify, cfg);
      dia.cells[idx] = std::move(cell);
    }
  };
  for (int k = 0; k < jobs; ++k) pool.emplace_back(work);
  for (auto& th : pool) th.join();

  if (!sc.locate_boundaries) return dia;

  // Boundary events: bisect along axis1 between horizontally adjacent cells
  // with different class sets.
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i + 1 < n1; ++i) {
      const auto& a = dia.cells[static_cast<size_t>(i) * n2 + j];
      const auto& b = dia.cells[static_cast<size_t>(i + 1) * n2 + j];
      if (a.classes == b.classes) continue;
      double lo = a.p1, hi = b.p1;
      ClassSet lo_set = a.classes;
      while (hi - lo > sc.boundary_tol) {
        const double mid = 0.5 * (lo + hi);
        const auto sys = make(mid, a.p2);
        const ClassSet mid_set = classify_attractor(*sys, sc.classify, cfg);
        if (mid_set == lo_set) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      BifurcationEvent ev;
      ev.type = "BOUNDARY";
      ev.p1 = 0.5 * (lo + hi);
      ev.p2 = a.p2;
      ev.branch = to_string(a.classes) + "->" + to_string(b.classes);
      dia.events.push_back(ev);
    }
  }
  return dia;
}

namespace {

struct CrossingProbe {
  // signed distances of the leading real-positive, real-negative and complex
  // multipliers from the unit circle
  double real_pos = -1.0;
  double real_neg = -1.0;
  double complex_pair = -1.0;
};

CrossingProbe probe_multipliers(const std::vector<Complex>& nontrivial) {
  CrossingProbe p;
  for (const auto& m : nontrivial) {
    const double mod = std::abs(m);
    if (std::abs(m.imag()) > 1e-6 * (1.0 + std::abs(m.real()))) {
      p.complex_pair = std::max(p.complex_pair, mod - 1.0);
    } else if (m.real() >= 0.0) {
      p.real_pos = std::max(p.real_pos, mod - 1.0);
    } else {
      p.real_neg = std::max(p.real_neg, mod - 1.0);
    }
  }
  return p;
}

std::vector<Complex> nontrivial_multipliers(const OrbitRecord& rec, bool autonomous) {
  std::vector<Complex> v = rec.floquet;
  if (autonomous && !v.empty()) {
    auto closest = v.begin();
    double best = 1e300;
    for (auto it = v.begin(); it != v.end(); ++it) {
      const double d = std::abs(*it - Complex{1.0, 0.0});
      if (d < best) {
        best = d;
        closest = it;
      }
    }
    v.erase(closest);
  }
  return v;
}

}  // namespace

BranchResult follow_branch(const ParamSystemFactory& make, const OrbitRecord& orbit0,
                           double param0, double param1, const ode::IntegratorConfig& cfg,
                           const BranchOptions& opts) {
  BranchResult out;
  const double dir = param1 >= param0 ? 1.0 : -1.0;
  double step = opts.initial_step;
  double param = param0;

  auto converge = [&](double prm, const Vec& guess, double period_guess) -> OrbitRecord {
    const auto sys = make(prm);
    return find_periodic_orbit(*sys, guess, period_guess, cfg, opts.shooting);
  };

  OrbitRecord current = orbit0;
  {
    const auto sys = make(param0);
    current = find_periodic_orbit(*sys, orbit0.x0, orbit0.period, cfg, opts.shooting);
  }
  auto push_point = [&](double prm, const OrbitRecord& rec) {
    BranchPoint bp;
    bp.param = prm;
    bp.period = rec.period;
    bp.max_nontrivial_modulus = rec.max_nontrivial_modulus;
    bp.stable = rec.stable;
    bp.dphi = rec.dphi;
    bp.x0 = rec.x0;
    out.points.push_back(bp);
  };
  push_point(param, current);

  const auto sys0 = make(param0);
  const bool autonomous = sys0->autonomous();

  auto detect_events = [&](double p_lo, const OrbitRecord& lo, double p_hi,
                           const OrbitRecord& hi) {
    const CrossingProbe a = probe_multipliers(nontrivial_multipliers(lo, autonomous));
    const CrossingProbe b = probe_multipliers(nontrivial_multipliers(hi, autonomous));
    struct Kind {
      double CrossingProbe::*field;
      const char* tr_name;
    };
    const std::array<Kind, 3> kinds = {{{&CrossingProbe::complex_pair, "TR"},
                                        {&CrossingProbe::real_pos, "PF"},
                                        {&CrossingProbe::real_neg, "PD"}}};
    for (const auto& kind : kinds) {
      const double fa = a.*(kind.field);
      const double fb = b.*(kind.field);
      if (fa == -1.0 || fb == -1.0) continue;  // category absent on one side
      if ((fa > 0.0) == (fb > 0.0)) continue;
      // bisect the crossing
      double lo_p = p_lo, hi_p = p_hi, flo = fa;
      OrbitRecord lo_rec = lo;
      while (hi_p - lo_p > opts.event_tol) {
        const double mid = 0.5 * (lo_p + hi_p);
        OrbitRecord mid_rec;
        try {
          mid_rec = converge(mid, lo_rec.x0, lo_rec.period);
        } catch (const Error&) {
          break;
        }
        const CrossingProbe pm =
            probe_multipliers(nontrivial_multipliers(mid_rec, autonomous));
        const double fm = pm.*(kind.field);
        if ((fm > 0.0) == (flo > 0.0)) {
          lo_p = mid;
          flo = fm;
          lo_rec = mid_rec;
        } else {
          hi_p = mid;
        }
      }
      BranchEvent ev;
      ev.type = kind.tr_name;
      ev.param = 0.5 * (lo_p + hi_p);
      // A +1 crossing on a symmetry-broken orbit is a fold candidate, not PF.
      if (std::string(kind.tr_name) == "PF") {
        const auto sym = lo.symmetry;
        if (sym == OrbitSymmetry::asym) ev.type = "FOLD";
      }
      out.events.push_back(ev);
    }
  };

  int guard = 0;
  double rate_prev = -1.0;  // ||dx0|| per unit parameter along the branch
  while (dir * (param1 - param) > 1e-12 && ++guard < opts.max_points) {
    double trial = step;
    bool advanced = false;
    while (trial >= opts.min_step) {
      const double dp = std::min(trial, dir * (param1 - param));
      const double p_next = param + dir * dp;
      try {
        const OrbitRecord next = converge(p_next, current.x0, current.period);
        // Continuity guard: Newton can land on a different solution family
        // past a fold; treat such jumps like non-convergence.
        const double dist = (next.x0 - current.x0).norm();
        const double allowed =
            rate_prev < 0.0 ? 0.1 * (1.0 + current.x0.norm())
                            : std::max(8.0 * rate_prev * dp,
                                       1e-3 * (1.0 + current.x0.norm()));
        if (dist > allowed) {
          trial *= 0.5;
          continue;
        }
        detect_events(param, current, p_next, next);
        rate_prev = std::max(dist / std::max(dp, 1e-12), 1e-12);
        current = next;
        param = p_next;
        push_point(param, current);
        advanced = true;
        break;
      } catch (const Error&) {
        trial *= 0.5;
      }
    }
    if (!advanced) {
      out.ended_at_fold = true;
      BranchEvent ev;
      ev.type = "FOLD";
      ev.param = param;
      out.events.push_back(ev);
      break;
    }
    // mild step adaptation: grow back after successful steps
    step = std::min(opts.initial_step, std::max(trial * 1.6, opts.min_step));
  }
  std::sort(out.events.begin(), out.events.end(),
            [](const BranchEvent& a, const BranchEvent& b) { return a.param < b.param; });
  return out;
}

double empirical_stability_boundary(const std::function<OrbitRecord(double)>& orbit_at,
                                    double lo, double hi, double tol) {
  OrbitRecord rec_lo = orbit_at(lo);
  OrbitRecord rec_hi = orbit_at(hi);
  double f_lo = rec_lo.max_nontrivial_modulus - 1.0;
  const double f_hi = rec_hi.max_nontrivial_modulus - 1.0;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw DomainError("empirical_stability_boundary: no stability flip in [lo, hi]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const OrbitRecord rec = orbit_at(mid);
    const double fm = rec.max_nontrivial_modulus - 1.0;
    if ((fm > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hopfduet::dyn
