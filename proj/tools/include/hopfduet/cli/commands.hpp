#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hopfduet/cli/config.hpp"

namespace hopfduet::cli {

/// Every command writes its outputs under rc.output.directory (created if
/// missing) with names <command>_<confighash>.<ext> and returns the list of
/// files written. ConfigError maps to exit 2, other errors to exit 3.
using FileList = std::vector<std::filesystem::path>;

FileList cmd_nf_curves(const RunConfig& rc);
FileList cmd_nf_sim(const RunConfig& rc);
FileList cmd_nf_classify(const RunConfig& rc);

FileList cmd_wc_extract(const RunConfig& rc);
FileList cmd_wc_sim(const RunConfig& rc);
FileList cmd_wc_sweep(const RunConfig& rc);
FileList cmd_wc_branch(const RunConfig& rc);
FileList cmd_wc_forced_sweep(const RunConfig& rc);

}  // namespace hopfduet::cli
