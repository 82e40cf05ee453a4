#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "hopfduet/cli/commands.hpp"
#include "hopfduet/cli/config.hpp"
#include "hopfduet/errors.hpp"

namespace {

using hopfduet::cli::FileList;
using hopfduet::cli::RunConfig;

struct CommonOpts {
  std::string config_file;
  std::string preset;
  std::string out_dir;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_file, "run configuration JSON file");
  cmd->add_option("--preset", opts.preset, "named parameter preset (paperP)");
  cmd->add_option("--jobs", opts.jobs, "parallel workers (default: cores)");
  cmd->add_option("--out", opts.out_dir, "output directory");
}

RunConfig build_config(const CommonOpts& opts) {
  RunConfig rc = opts.config_file.empty()
                     ? hopfduet::cli::default_config(opts.preset)
                     : hopfduet::cli::load_config_file(opts.config_file, opts.preset);
  if (!opts.out_dir.empty()) rc.output.directory = opts.out_dir;
  if (opts.jobs > 0) rc.jobs = opts.jobs;
  return rc;
}

int run(const CommonOpts& opts, FileList (*fn)(const RunConfig&)) {
  try {
    const RunConfig rc = build_config(opts);
    const FileList files = fn(rc);
    for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
    return 0;
  } catch (const hopfduet::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopfduet: coupled-oscillator Hopf normal form toolkit"};
  app.require_subcommand(1);

  CLI::App* nf = app.add_subcommand("nf", "truncated normal form commands");
  nf->require_subcommand(1);
  CLI::App* wc = app.add_subcommand("wc", "Wilson-Cowan pair commands");
  wc->require_subcommand(1);

  struct Entry {
    CLI::App* cmd;
    CommonOpts opts;
    FileList (*fn)(const RunConfig&);
  };
  std::vector<Entry> entries;
  entries.reserve(16);  // option targets are pointed at; no reallocation allowed
  auto reg = [&](CLI::App* parent, const char* name, const char* help,
                 FileList (*fn)(const RunConfig&)) {
    entries.push_back({parent->add_subcommand(name, help), {}, fn});
    add_common(entries.back().cmd, entries.back().opts);
  };

  reg(nf, "curves", "analytic bifurcation curves and region labels",
      hopfduet::cli::cmd_nf_curves);
  reg(nf, "sim", "integrate the normal form", hopfduet::cli::cmd_nf_sim);
  reg(nf, "classify", "classify attractors of the normal form",
      hopfduet::cli::cmd_nf_classify);
  reg(wc, "extract", "normal form coefficients from the Wilson-Cowan pair",
      hopfduet::cli::cmd_wc_extract);
  reg(wc, "sim", "integrate the (possibly forced) Wilson-Cowan pair",
      hopfduet::cli::cmd_wc_sim);
  reg(wc, "sweep", "two-parameter attractor sweep", hopfduet::cli::cmd_wc_sweep);
  reg(wc, "branch", "follow a periodic-orbit branch with event detection",
      hopfduet::cli::cmd_wc_branch);
  reg(wc, "forced-sweep", "forcing-amplitude sweep of the forced pair",
      hopfduet::cli::cmd_wc_forced_sweep);

  CLI11_PARSE(app, argc, argv);
  for (auto& e : entries) {
    if (e.cmd->parsed()) return run(e.opts, e.fn);
  }
  return 2;
}
