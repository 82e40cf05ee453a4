#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfduet/analysis.hpp"
#include "hopfduet/coefficients.hpp"
#include "hopfduet/ode.hpp"
#include "hopfduet/wilson_cowan.hpp"

namespace hopfduet::cli {

struct AxisConfig {
  std::string name;
  double lo = 0.0, hi = 1.0;
  int count = 2;
};

struct OutputConfig {
  std::filesystem::path directory = ".";
  bool csv = true;
  bool json = true;
  bool svg = false;
};

struct SimConfig {
  double t_end = 100.0;
  double sample_dt = 0.05;
  std::vector<std::vector<double>> ics;  // empty: default IC policy
};

struct BranchConfig {
  std::string param = "lambda";
  double lo = 0.0, hi = 1.0;
  double step = 5e-3;
  std::string branch = "AP";  // AP or IP
};

struct RunConfig {
  // nf block
  std::optional<NormalFormCoefficients> nf_coefficients;
  UnfoldingParams nf_params{};
  // wc block
  std::optional<wc::WilsonCowanParams> wc_params;
  std::optional<wc::ForcingParams> forcing;
  // sweep block
  std::optional<AxisConfig> axis1, axis2;
  std::string curve_model = "series";  // nf curves: series | exact
  std::optional<SimConfig> sim;
  std::optional<BranchConfig> branch;
  ode::IntegratorConfig integrator{};
  OutputConfig output{};
  int jobs = 0;

  std::string config_hash;  // FNV-1a of the canonical JSON
};

/// Parse and validate a run configuration. Unknown keys anywhere are a
/// ConfigError. The optional preset name pre-fills the wc block.
RunConfig parse_config(const nlohmann::json& j, const std::string& preset = "");
RunConfig load_config_file(const std::filesystem::path& path, const std::string& preset = "");

/// Minimal config for CLI runs without --config (preset-driven).
RunConfig default_config(const std::string& preset);

/// FNV-1a 64-bit of the canonical (sorted-key) JSON dump.
std::string config_hash(const nlohmann::json& j);

}  // namespace hopfduet::cli
