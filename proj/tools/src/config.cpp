#include "hopfduet/cli/config.hpp"

#include <fstream>
#include <set>

#include "hopfduet/errors.hpp"

namespace hopfduet::cli {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

double number(const json& j, const std::string& where, const std::string& key,
              std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(where + ": missing key '" + key + "'");
  }
  if (!j[key].is_number()) throw ConfigError(where + ": key '" + key + "' must be a number");
  return j[key].get<double>();
}

AxisConfig parse_axis(const json& j, const std::string& where) {
  require_keys(j, where, {"name", "lo", "hi", "count"});
  AxisConfig ax;
  if (j.contains("name")) ax.name = j["name"].get<std::string>();
  ax.lo = number(j, where, "lo");
  ax.hi = number(j, where, "hi");
  ax.count = static_cast<int>(number(j, where, "count"));
  if (ax.count < 1 || ax.count > 100000) throw ConfigError(where + ": bad count");
  return ax;
}

NormalFormCoefficients parse_inline_coefficients(const json& j) {
  return coefficients_from_json(j.dump());
}

}  // namespace

std::string config_hash(const json& j) {
  const std::string canon = j.dump();  // nlohmann objects iterate key-sorted
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config(const json& j, const std::string& preset) {
  require_keys(j, "config",
               {"nf", "wc", "sweep", "sim", "branch", "integrator", "output", "jobs"});
  RunConfig rc;

  if (!preset.empty()) rc.wc_params = wc::preset_by_name(preset);

  if (j.contains("nf")) {
    const auto& nf = j["nf"];
    require_keys(nf, "nf", {"coefficients", "coefficients_file", "lambda", "eps"});
    if (nf.contains("coefficients") && nf.contains("coefficients_file")) {
      throw ConfigError("nf: give either coefficients or coefficients_file, not both");
    }
    if (nf.contains("coefficients")) {
      rc.nf_coefficients = parse_inline_coefficients(nf["coefficients"]);
    } else if (nf.contains("coefficients_file")) {
      std::ifstream in(nf["coefficients_file"].get<std::string>());
      if (!in) throw ConfigError("nf: cannot open coefficients_file");
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      rc.nf_coefficients = coefficients_from_json(text);
    }
    rc.nf_params.lambda = number(nf, "nf", "lambda", 0.0);
    rc.nf_params.eps = number(nf, "nf", "eps", 0.0);
  }

  if (j.contains("wc")) {
    const auto& w = j["wc"];
    require_keys(w, "wc",
                 {"preset", "a", "b", "c", "d", "theta", "tau", "lambda", "eps", "b_sp",
                  "forcing"});
    wc::WilsonCowanParams p =
        w.contains("preset") ? wc::preset_by_name(w["preset"].get<std::string>())
                             : (rc.wc_params ? *rc.wc_params : wc::preset_p());
    p.a = number(w, "wc", "a", p.a);
    p.b = number(w, "wc", "b", p.b);
    p.c = number(w, "wc", "c", p.c);
    p.d = number(w, "wc", "d", p.d);
    p.theta = number(w, "wc", "theta", p.theta);
    p.tau = number(w, "wc", "tau", p.tau);
    p.lambda_slope = number(w, "wc", "lambda", p.lambda_slope);
    p.eps = number(w, "wc", "eps", p.eps);
    p.b_sp = number(w, "wc", "b_sp", p.b_sp);
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("wc: ") + e.what());
    }
    rc.wc_params = p;
    if (w.contains("forcing")) {
      const auto& f = w["forcing"];
      require_keys(f, "wc.forcing", {"A", "f", "h", "n"});
      wc::ForcingParams fp;
      fp.A = number(f, "wc.forcing", "A", 0.0);
      fp.f = number(f, "wc.forcing", "f", 2.5);
      fp.h = number(f, "wc.forcing", "h", 0.0);
      fp.n = static_cast<int>(number(f, "wc.forcing", "n", 5.0));
      try {
        fp.validate();
      } catch (const DomainError& e) {
        throw ConfigError(std::string("wc.forcing: ") + e.what());
      }
      rc.forcing = fp;
    }
  }

  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    require_keys(s, "sweep", {"axis1", "axis2", "model"});
    if (s.contains("axis1")) rc.axis1 = parse_axis(s["axis1"], "sweep.axis1");
    if (s.contains("axis2")) rc.axis2 = parse_axis(s["axis2"], "sweep.axis2");
    if (s.contains("model")) {
      rc.curve_model = s["model"].get<std::string>();
      if (rc.curve_model != "series" && rc.curve_model != "exact") {
        throw ConfigError("sweep.model must be 'series' or 'exact'");
      }
    }
  }

  if (j.contains("sim")) {
    const auto& s = j["sim"];
    require_keys(s, "sim", {"t_end", "sample_dt", "ics"});
    SimConfig sc;
    sc.t_end = number(s, "sim", "t_end", 100.0);
    sc.sample_dt = number(s, "sim", "sample_dt", 0.05);
    if (s.contains("ics")) {
      for (const auto& row : s["ics"]) {
        sc.ics.push_back(row.get<std::vector<double>>());
      }
    }
    rc.sim = sc;
  }

  if (j.contains("branch")) {
    const auto& b = j["branch"];
    require_keys(b, "branch", {"param", "lo", "hi", "step", "branch"});
    BranchConfig bc;
    if (b.contains("param")) bc.param = b["param"].get<std::string>();
    bc.lo = number(b, "branch", "lo");
    bc.hi = number(b, "branch", "hi");
    bc.step = number(b, "branch", "step", 5e-3);
    if (b.contains("branch")) bc.branch = b["branch"].get<std::string>();
    if (bc.branch != "AP" && bc.branch != "IP") {
      throw ConfigError("branch.branch must be 'AP' or 'IP'");
    }
    rc.branch = bc;
  }

  if (j.contains("integrator")) {
    const auto& i = j["integrator"];
    require_keys(i, "integrator",
                 {"method", "rel_tol", "abs_tol", "max_step", "max_time"});
    if (i.contains("method")) {
      const std::string m = i["method"].get<std::string>();
      if (m == "fixed-RK4") {
        rc.integrator.method = ode::IntegratorConfig::Method::fixed_rk4;
      } else if (m == "adaptive-embedded-RK") {
        rc.integrator.method = ode::IntegratorConfig::Method::adaptive_rk;
      } else {
        throw ConfigError("integrator.method must be fixed-RK4 or adaptive-embedded-RK");
      }
    }
    rc.integrator.rel_tol = number(i, "integrator", "rel_tol", rc.integrator.rel_tol);
    rc.integrator.abs_tol = number(i, "integrator", "abs_tol", rc.integrator.abs_tol);
    rc.integrator.max_step = number(i, "integrator", "max_step", rc.integrator.max_step);
    rc.integrator.max_time = number(i, "integrator", "max_time", rc.integrator.max_time);
    rc.integrator.validate();
  }

  if (j.contains("output")) {
    const auto& o = j["output"];
    require_keys(o, "output", {"directory", "formats"});
    if (o.contains("directory")) {
      rc.output.directory = o["directory"].get<std::string>();
    }
    if (o.contains("formats")) {
      rc.output.csv = rc.output.json = rc.output.svg = false;
      for (const auto& f : o["formats"]) {
        const std::string name = f.get<std::string>();
        if (name == "csv") {
          rc.output.csv = true;
        } else if (name == "json") {
          rc.output.json = true;
        } else if (name == "svg") {
          rc.output.svg = true;
        } else {
          throw ConfigError("output.formats: unknown format '" + name + "'");
        }
      }
    }
  }

  if (j.contains("jobs")) {
    rc.jobs = static_cast<int>(number(j, "config", "jobs"));
    if (rc.jobs < 0) throw ConfigError("jobs must be >= 0");
  }

  rc.config_hash = config_hash(j);
  return rc;
}

RunConfig load_config_file(const std::filesystem::path& path, const std::string& preset) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config JSON parse error: ") + e.what());
  }
  return parse_config(j, preset);
}

RunConfig default_config(const std::string& preset) {
  json j = json::object();
  return parse_config(j, preset.empty() ? "paperP" : preset);
}

}  // namespace hopfduet::cli
