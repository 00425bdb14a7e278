/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_CLI_HPP
#define ESBOX_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "esbox/report.hpp"

namespace esbox::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInconclusive = 3;

enum class Command { Verify, Report, Export };
enum class OutputFormat { Text, Json, Csv };

struct RunConfig {
  Command command = Command::Verify;
  std::string box_selector = "teleport";  // teleport | twirled-teleport |
                                          // random4 | random8 | ghz |
                                          // bell-from-ghz
  std::optional<std::string> box_file;    // wins over the selector
  std::uint64_t seed = 42;
  int trials = 1000;
  int restarts = 200;
  int iters = 300;
  double tol_algebra = kTolAlgebra;
  double tol_opt = kTolOpt;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::string> out_path;  // stdout when absent
};

/// Applies the ESBOX_SEED environment override unless the seed came from a
/// flag.
void apply_env_seed(RunConfig& config, bool seed_flag_given);

/// Builds the selected box (constructors are seeded from config.seed).
/// Throws std::invalid_argument for unknown selectors and propagates file
/// errors from --box-file.
boxes::AnyBox resolve_box(const RunConfig& config);

/// Structural validation of the selected box. Prints the check table in the
/// requested format; exit 0 iff all checks pass, 2 on input errors.
int run_verify(const RunConfig& config);

/// Full claims table for the selected box. Exit 0 iff every claim passes,
/// 1 on failures, 2 on input errors, 3 when the capacity search did not
/// converge (claim marked inconclusive).
int run_report(const RunConfig& config);

/// Writes the selected box in the JSON wire format (for --box-file reuse).
int run_export(const RunConfig& config);

// Formatting backends, exposed for golden tests. Every floating-point value
// is rendered with 12 significant digits; identical configs produce
// byte-identical bytes.
std::string format_validation(const boxes::ValidationReport& report,
                              const std::string& box_id, OutputFormat format);
std::string format_report(const comm::CommReport& report, OutputFormat format);

}  // namespace esbox::cli

#endif
