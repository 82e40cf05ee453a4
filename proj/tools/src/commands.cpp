#include "hopfduet/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "hopfduet/analysis.hpp"
#include "hopfduet/cli/output.hpp"
#include "hopfduet/engine.hpp"
#include "hopfduet/errors.hpp"
#include "hopfduet/extraction.hpp"
#include "hopfduet/orbits.hpp"
#include "hopfduet/systems.hpp"

namespace hopfduet::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path out_dir(const RunConfig& rc) {
  fs::path dir = rc.output.directory;
  if (const char* env = std::getenv("HOPFDUET_OUTDIR")) dir = env;
  fs::create_directories(dir);
  return dir;
}

fs::path out_path(const RunConfig& rc, const std::string& stem, const std::string& ext) {
  return out_dir(rc) / (stem + "_" + rc.config_hash + "." + ext);
}

const NormalFormCoefficients& need_nf(const RunConfig& rc) {
  if (!rc.nf_coefficients) {
    throw ConfigError("this command needs an 'nf' block with coefficients");
  }
  return *rc.nf_coefficients;
}

const wc::WilsonCowanParams& need_wc(const RunConfig& rc) {
  if (!rc.wc_params) throw ConfigError("this command needs a 'wc' block (or --preset)");
  return *rc.wc_params;
}

void write_json(const fs::path& path, const json& j, const std::string& hash = "") {
  json out_j = j;
  if (!hash.empty()) {
    out_j["_schema"] = 1;
    out_j["_config"] = hash;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write output file: " + path.string());
  out << out_j.dump(2) << "\n";
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    v.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  }
  return v;
}

dyn::ClassifyConfig classify_config_for(const RunConfig& rc, double period, bool forced) {
  dyn::ClassifyConfig cc;
  cc.intrinsic_period = period;
  cc.forced = forced;
  (void)rc;
  return cc;
}

}  // namespace

FileList cmd_nf_curves(const RunConfig& rc) {
  const auto& c = need_nf(rc);
  const AxisConfig eps_axis = rc.axis1 ? *rc.axis1 : AxisConfig{"eps", 0.0, 0.5, 51};
  const auto eps_grid = linspace(eps_axis.lo, eps_axis.hi, eps_axis.count);
  const auto model = rc.curve_model == "exact" ? analysis::CurveModel::exact
                                               : analysis::CurveModel::series;

  CsvWriter csv("branch,curve,eps,lambda", rc.config_hash);
  std::vector<analysis::CurvePoint> all;
  for (const auto b : {analysis::Branch::plus, analysis::Branch::minus}) {
    const auto pts = analysis::region_boundaries(eps_grid, b, c, model);
    all.insert(all.end(), pts.begin(), pts.end());
  }
  double lam_lo = 0.0, lam_hi = 0.0;
  for (const auto& pt : all) {
    csv.row({pt.branch == analysis::Branch::plus ? "plus" : "minus",
             analysis::to_string(pt.curve), format_g12(pt.eps), format_g12(pt.lambda)});
    lam_lo = std::min(lam_lo, pt.lambda);
    lam_hi = std::max(lam_hi, pt.lambda);
  }

  FileList files;
  const auto csv_path = out_path(rc, "nf-curves", "csv");
  csv.write(csv_path);
  files.push_back(csv_path);

  // region-label JSON: case classification plus sampled bistability region
  const auto cls = analysis::classify_case(c);
  json regions;
  regions["case_label"] = analysis::to_string(cls.case_label);
  regions["hopf_subcase"] = analysis::to_string(cls.hopf_subcase);
  regions["c_det"] = cls.cdet;
  try {
    regions["eps_bt"] = analysis::bautin_estimate(c);
  } catch (const NotAdmissibleError&) {
    regions["eps_bt"] = nullptr;
  }
  json bistable = json::array();
  const double pad = 0.25 * (lam_hi - lam_lo) + 1e-6;
  const auto lam_grid = linspace(lam_lo - pad, lam_hi + pad, 61);
  for (const double eps : eps_grid) {
    for (const double lam : lam_grid) {
      if (analysis::bistable_region({lam, eps}, c)) {
        bistable.push_back(json::array({lam, eps}));
      }
    }
  }
  regions["bistable"] = bistable;
  const auto json_path = out_path(rc, "nf-curves-regions", "json");
  write_json(json_path, regions, rc.config_hash);
  files.push_back(json_path);

  if (rc.output.svg) {
    SvgRegionPlot plot(lam_lo - pad, lam_hi + pad, eps_axis.lo, eps_axis.hi);
    for (const auto& pt : bistable) {
      plot.marker(pt[0].get<double>(), pt[1].get<double>(), "#dddddd");
    }
    const char* colours[] = {"#1f78b4", "#33a02c", "#e31a1c", "#ff7f00"};
    for (const auto b : {analysis::Branch::plus, analysis::Branch::minus}) {
      for (const auto kind : {analysis::CurveKind::HB, analysis::CurveKind::TR0,
                              analysis::CurveKind::DET0, analysis::CurveKind::DISC0}) {
        // curves with two roots per eps (quadratic boundaries) are drawn as
        // separate lower/upper polylines
        std::vector<std::pair<double, double>> lower, upper;
        double last_eps = -1.0;
        for (const auto& pt : all) {
          if (pt.branch != b || pt.curve != kind) continue;
          if (pt.eps == last_eps) {
            upper.push_back({pt.lambda, pt.eps});
          } else {
            lower.push_back({pt.lambda, pt.eps});
            last_eps = pt.eps;
          }
        }
        plot.polyline(lower, colours[static_cast<int>(kind)]);
        plot.polyline(upper, colours[static_cast<int>(kind)]);
      }
    }
    const auto svg_path = out_path(rc, "nf-curves", "svg");
    plot.write(svg_path, "hopf duet curves (" + rc.curve_model + " model)");
    files.push_back(svg_path);
  }
  return files;
}

namespace {

FileList write_trajectories(const RunConfig& rc, const dyn::OscillatorPairSystem& sys,
                            const std::string& stem, const std::string& header) {
  const SimConfig sim = rc.sim ? *rc.sim : SimConfig{};
  std::vector<ode::Vec> ics;
  if (sim.ics.empty()) {
    ics = dyn::default_ic_policy(sys);
  } else {
    for (const auto& row : sim.ics) {
      if (static_cast<int>(row.size()) != sys.dim()) {
        throw ConfigError("sim.ics: wrong state dimension");
      }
      ics.push_back(Eigen::Map<const ode::Vec>(row.data(), row.size()));
    }
  }
  FileList files;
  for (size_t k = 0; k < ics.size(); ++k) {
    const auto tr =
        ode::integrate(sys, ics[k], 0.0, sim.t_end, rc.integrator, sim.sample_dt);
    CsvWriter csv(header, rc.config_hash);
    for (size_t i = 0; i < tr.t.size(); ++i) {
      std::vector<double> row{tr.t[i]};
      for (int j = 0; j < sys.dim(); ++j) row.push_back(tr.x[i](j));
      csv.numeric_row(row);
    }
    const auto path = out_path(rc, stem + "-ic" + std::to_string(k), "csv");
    csv.write(path);
    files.push_back(path);
  }
  return files;
}

}  // namespace

FileList cmd_nf_sim(const RunConfig& rc) {
  const dyn::NfCartesianSystem sys(rc.nf_params, need_nf(rc));
  return write_trajectories(rc, sys, "nf-sim", "t,re_z1,im_z1,re_z2,im_z2");
}

FileList cmd_nf_classify(const RunConfig& rc) {
  const auto& c = need_nf(rc);
  const dyn::NfCartesianSystem sys(rc.nf_params, c);
  const auto cc = classify_config_for(rc, 2.0 * std::numbers::pi / c.omega, false);
  CsvWriter csv("ic,class,dphi,amplitude", rc.config_hash);
  dyn::ClassSet set;
  const auto ics = dyn::default_ic_policy(sys);
  for (size_t k = 0; k < ics.size(); ++k) {
    const auto res = dyn::classify_single(sys, ics[k], cc, rc.integrator);
    set.insert(res.cls);
    csv.row({std::to_string(k), dyn::to_string(res.cls), format_g12(res.dphi),
             format_g12(res.amplitude)});
  }
  csv.row({"union", dyn::to_string(set), "", ""});
  const auto path = out_path(rc, "nf-classify", "csv");
  csv.write(path);
  return {path};
}

FileList cmd_wc_extract(const RunConfig& rc) {
  auto params = need_wc(rc);
  // Extraction runs at the Hopf slope of the single oscillator.
  params.lambda_slope = wc::hopf_slope(params);
  const auto report = extract::extract_coefficients(params);
  const auto& c = report.coefficients;

  FileList files;
  const auto coef_path = out_path(rc, "wc-extract-coefficients", "json");
  {
    std::ofstream out(coef_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + coef_path.string());
    out << to_json(c) << "\n";
  }
  files.push_back(coef_path);

  CsvWriter csv("name,value", rc.config_hash);
  csv.row({"omega", format_g12(c.omega)});
  csv.row({"alpha01R", format_g12(c.alpha01.real())});
  csv.row({"alpha01I", format_g12(c.alpha01.imag())});
  for (int i = 0; i < 4; ++i) {
    csv.row({"alpha_eps" + std::to_string(i) + "R", format_g12(c.alpha_eps[i].real())});
    csv.row({"alpha_eps" + std::to_string(i) + "I", format_g12(c.alpha_eps[i].imag())});
  }
  for (int i = 0; i < 4; ++i) {
    csv.row({"beta_eps" + std::to_string(i) + "R", format_g12(c.beta_eps[i].real())});
    csv.row({"beta_eps" + std::to_string(i) + "I", format_g12(c.beta_eps[i].imag())});
  }
  csv.row({"lambda_c", format_g12(params.lambda_slope)});
  csv.row({"lambda_hat", format_g12(report.lambda_hat)});
  csv.row({"eps_probe", format_g12(report.eps_probe)});
  csv.row({"max_residual", format_g12(report.max_residual)});
  csv.row({"smallest_divisor", format_g12(report.smallest_divisor)});
  csv.row({"extrapolation_delta", format_g12(report.extrapolation_delta)});
  csv.row({"warning", report.warning ? "1" : "0"});
  const auto report_path = out_path(rc, "wc-extract-report", "csv");
  csv.write(report_path);
  files.push_back(report_path);

  const auto cls = analysis::classify_case(c);
  json summary;
  summary["normalization"] = report.normalization;
  summary["case_label"] = analysis::to_string(cls.case_label);
  summary["hopf_subcase"] = analysis::to_string(cls.hopf_subcase);
  summary["c_det"] = cls.cdet;
  summary["omega"] = c.omega;
  summary["lambda_c"] = params.lambda_slope;
  try {
    summary["eps_bt"] = analysis::bautin_estimate(c);
  } catch (const NotAdmissibleError&) {
    summary["eps_bt"] = nullptr;
  }
  summary["warning"] = report.warning;
  const auto summary_path = out_path(rc, "wc-extract-summary", "json");
  write_json(summary_path, summary, rc.config_hash);
  files.push_back(summary_path);
  return files;
}

FileList cmd_wc_sim(const RunConfig& rc) {
  const auto& p = need_wc(rc);
  if (rc.forcing) {
    const dyn::ForcedWilsonCowanSystem sys(p, *rc.forcing);
    return write_trajectories(rc, sys, "wc-sim", "t,E1,I1,E2,I2");
  }
  const dyn::WilsonCowanSystem sys(p);
  return write_trajectories(rc, sys, "wc-sim", "t,E1,I1,E2,I2");
}

namespace {

FileList write_sweep_outputs(const RunConfig& rc, const dyn::BifurcationDiagram& dia,
                             const std::string& stem) {
  FileList files;
  CsvWriter csv("p1,p2,classes,events", rc.config_hash);
  for (const auto& cell : dia.cells) {
    csv.row({format_g12(cell.p1), format_g12(cell.p2), dyn::to_string(cell.classes), ""});
  }
  const auto cells_path = out_path(rc, stem, "csv");
  csv.write(cells_path);
  files.push_back(cells_path);

  CsvWriter ev("type,p1,p2,branch", rc.config_hash);
  for (const auto& e : dia.events) {
    ev.row({e.type, format_g12(e.p1), format_g12(e.p2), e.branch});
  }
  const auto ev_path = out_path(rc, stem + "-events", "csv");
  ev.write(ev_path);
  files.push_back(ev_path);

  if (rc.output.svg) {
    SvgRegionPlot plot(dia.axis1.lo, dia.axis1.hi, dia.axis2.lo, dia.axis2.hi);
    const double dx = dia.axis1.count > 1
                          ? (dia.axis1.hi - dia.axis1.lo) / (dia.axis1.count - 1)
                          : 1.0;
    const double dy = dia.axis2.count > 1
                          ? (dia.axis2.hi - dia.axis2.lo) / (dia.axis2.count - 1)
                          : 1.0;
    for (const auto& cell : dia.cells) {
      plot.cell(cell.p1 - dx / 2, cell.p1 + dx / 2, cell.p2 - dy / 2, cell.p2 + dy / 2,
                dyn::to_string(cell.classes));
    }
    for (const auto& e : dia.events) plot.marker(e.p1, e.p2, "#000000");
    const auto svg_path = out_path(rc, stem, "svg");
    plot.write(svg_path, stem + " (" + dia.axis1.name + " vs " + dia.axis2.name + ")");
    files.push_back(svg_path);
  }
  return files;
}

}  // namespace

FileList cmd_wc_sweep(const RunConfig& rc) {
  const auto base = need_wc(rc);
  dyn::SweepConfig sc;
  sc.axis1 = rc.axis1 ? dyn::SweepAxis{rc.axis1->name, rc.axis1->lo, rc.axis1->hi,
                                       rc.axis1->count}
                      : dyn::SweepAxis{"lambda", 2.9, 3.4, 26};
  sc.axis2 = rc.axis2 ? dyn::SweepAxis{rc.axis2->name, rc.axis2->lo, rc.axis2->hi,
                                       rc.axis2->count}
                      : dyn::SweepAxis{"eps", 0.0, 0.4, 11};
  sc.jobs = rc.jobs;
  auto at_c = base;
  at_c.lambda_slope = wc::hopf_slope(base);
  sc.classify = classify_config_for(rc, wc::emergent_period(at_c.lambda_slope, at_c), false);
  const dyn::SystemFactory make = [&](double lambda, double eps) {
    auto p = base;
    p.lambda_slope = lambda;
    p.eps = eps;
    return std::make_unique<dyn::WilsonCowanSystem>(p);
  };
  const auto dia = dyn::sweep(make, sc, rc.integrator);
  return write_sweep_outputs(rc, dia, "wc-sweep");
}

FileList cmd_wc_forced_sweep(const RunConfig& rc) {
  const auto base = need_wc(rc);
  if (!rc.forcing) throw ConfigError("wc forced-sweep needs a wc.forcing block");
  const auto forcing = *rc.forcing;
  dyn::SweepConfig sc;
  sc.axis1 = rc.axis1 ? dyn::SweepAxis{rc.axis1->name, rc.axis1->lo, rc.axis1->hi,
                                       rc.axis1->count}
                      : dyn::SweepAxis{"A", 0.0, 1.5, 31};
  sc.axis2 = rc.axis2 ? dyn::SweepAxis{rc.axis2->name, rc.axis2->lo, rc.axis2->hi,
                                       rc.axis2->count}
                      : dyn::SweepAxis{"eps", 0.5, 0.5, 1};
  sc.jobs = rc.jobs;
  sc.classify = classify_config_for(rc, 0.5 / forcing.f, true);
  sc.classify.transient_periods = 400.0;  // stroboscopic periods are short
  sc.classify.window_periods = 50.0;
  const dyn::SystemFactory make = [&](double a_amp, double eps) {
    auto p = base;
    p.eps = eps;
    auto f = forcing;
    f.A = a_amp;
    return std::make_unique<dyn::ForcedWilsonCowanSystem>(p, f);
  };
  const auto dia = dyn::sweep(make, sc, rc.integrator);
  return write_sweep_outputs(rc, dia, "wc-forced-sweep");
}

FileList cmd_wc_branch(const RunConfig& rc) {
  const auto base = need_wc(rc);
  if (!rc.branch) throw ConfigError("wc branch needs a 'branch' block");
  const auto bc = *rc.branch;
  if (bc.param != "lambda") {
    throw ConfigError("wc branch: only param = 'lambda' is supported");
  }
  const bool ap = bc.branch == "AP";

  const dyn::ParamSystemFactory make = [&](double lambda) {
    auto p = base;
    p.lambda_slope = lambda;
    return std::make_unique<dyn::WilsonCowanSystem>(p);
  };

  // Linear Hopf predictor at the branch start: eigenvector of the
  // symmetric/antisymmetric block scaled by the local amplitude estimate.
  auto p0 = base;
  p0.lambda_slope = bc.lo;
  const auto tm = extract::taylor_expand(p0, p0.eps);
  const int col = ap ? 1 : 0;
  const Eigen::Vector4cd mode = tm.basis.col(col);
  const double omega0 = tm.mu[col].imag();
  const double period0 = 2.0 * std::numbers::pi / omega0;

  dyn::OrbitRecord orbit0;
  bool seeded = false;
  for (const double amp : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
    ode::Vec guess(4);
    for (int i = 0; i < 4; ++i) guess(i) = 2.0 * amp * mode(i).real();
    try {
      const auto sys = make(bc.lo);
      orbit0 = dyn::find_periodic_orbit(*sys, guess, period0, rc.integrator);
      if (orbit0.period > 0.2 * period0 && orbit0.x0.norm() > 1e-8) {
        seeded = true;
        break;
      }
    } catch (const Error&) {
      continue;
    }
  }
  if (!seeded) {
    throw ConvergenceError("wc branch: could not seed the " + bc.branch +
                           " orbit at the branch start");
  }

  dyn::BranchOptions opts;
  opts.initial_step = bc.step;
  opts.shooting.enforce_swap_symmetry = !ap;  // symmetric family for IP branches
  const auto branch = dyn::follow_branch(make, orbit0, bc.lo, bc.hi, rc.integrator, opts);

  FileList files;
  CsvWriter csv("param,period,max_multiplier,stable,dphi", rc.config_hash);
  for (const auto& pt : branch.points) {
    csv.row({format_g12(pt.param), format_g12(pt.period),
             format_g12(pt.max_nontrivial_modulus), pt.stable ? "1" : "0",
             format_g12(pt.dphi)});
  }
  const auto path = out_path(rc, "wc-branch", "csv");
  csv.write(path);
  files.push_back(path);

  CsvWriter ev("type,param,branch", rc.config_hash);
  for (const auto& e : branch.events) {
    ev.row({e.type, format_g12(e.param), bc.branch});
  }
  const auto ev_path = out_path(rc, "wc-branch-events", "csv");
  ev.write(ev_path);
  files.push_back(ev_path);
  return files;
}

}  // namespace hopfduet::cli
