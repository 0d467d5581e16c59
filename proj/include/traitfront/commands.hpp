#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "traitfront/config.hpp"
#include "traitfront/verify.hpp"

namespace traitfront {

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Throws ConfigError unless cfg.out_dir is an existing directory.
std::filesystem::path output_dir(const RunConfig& cfg);

/// dispersion.csv and cstar.csv.
void cmd_spectral(const RunConfig& cfg);

/// snapshot_<k>.csv, front_track.csv, sup_track.csv.
void cmd_simulate(const RunConfig& cfg);

/// hj_fronts.csv (zero-set boundaries per mu and time next to the distance
/// law) and hj_profile.csv (final u per mu).
void cmd_hj(const RunConfig& cfg);

/// Runs the checks listed in cfg.checks in the canonical order.
VerificationReport run_verification(const RunConfig& cfg);

std::string report_csv(const VerificationReport& report);

/// Writes report.csv; returns the process exit code (1 if any check failed).
int cmd_verify(const RunConfig& cfg);

}  // namespace traitfront
