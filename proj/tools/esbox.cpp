/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <CLI11.hpp>
#include <iostream>

#include "esbox/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, esbox::cli::RunConfig& config,
                      bool& seed_given, std::string& format) {
  cmd->add_option("--box", config.box_selector,
                  "Box selector: teleport, twirled-teleport, random4, random8, "
                  "ghz, bell-from-ghz")
      ->default_val("teleport");
  cmd->add_option(
      "--box-file",
      [&config](const std::vector<std::string>& v) {
        config.box_file = v.front();
        return true;
      },
      "Load the box from a JSON file instead of --box");
  cmd->add_option("--seed", config.seed, "Master seed (or ESBOX_SEED env)")
      ->each([&seed_given](const std::string&) { seed_given = true; });
  cmd->add_option("--trials", config.trials, "Trials per property sweep")
      ->default_val(1000);
  cmd->add_option("--restarts", config.restarts, "Capacity search restarts")
      ->default_val(200);
  cmd->add_option("--iters", config.iters, "Capacity search iterations")
      ->default_val(300);
  cmd->add_option("--tol-algebra", config.tol_algebra,
                  "Tolerance for algebraic identities")
      ->default_val(1e-10);
  cmd->add_option("--tol-opt", config.tol_opt, "Tolerance for optimizer outputs")
      ->default_val(1e-6);
  cmd->add_option("--format", format, "Output format: text, json, csv")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option(
      "--out",
      [&config](const std::vector<std::string>& v) {
        config.out_path = v.front();
        return true;
      },
      "Write output to a file instead of stdout");
}

esbox::cli::OutputFormat parse_format(const std::string& name) {
  if (name == "json") return esbox::cli::OutputFormat::Json;
  if (name == "csv") return esbox::cli::OutputFormat::Csv;
  return esbox::cli::OutputFormat::Text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"esbox: construct, validate, and stress entanglement-swapping boxes"};
  app.require_subcommand(1);

  esbox::cli::RunConfig verify_cfg, report_cfg, export_cfg;
  bool verify_seed = false, report_seed = false, export_seed = false;
  std::string verify_fmt = "text", report_fmt = "text", export_fmt = "text";

  CLI::App* verify = app.add_subcommand("verify", "Run the structural validator");
  add_common_flags(verify, verify_cfg, verify_seed, verify_fmt);

  CLI::App* report = app.add_subcommand(
      "report", "Run the full claims table (costs, signaling, capacity)");
  add_common_flags(report, report_cfg, report_seed, report_fmt);

  CLI::App* exporter =
      app.add_subcommand("export", "Write the box in the JSON wire format");
  add_common_flags(exporter, export_cfg, export_seed, export_fmt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : esbox::cli::kExitInputError;
  }

  try {
    if (verify->parsed()) {
      verify_cfg.command = esbox::cli::Command::Verify;
      verify_cfg.format = parse_format(verify_fmt);
      esbox::cli::apply_env_seed(verify_cfg, verify_seed);
      return esbox::cli::run_verify(verify_cfg);
    }
    if (report->parsed()) {
      report_cfg.command = esbox::cli::Command::Report;
      report_cfg.format = parse_format(report_fmt);
      esbox::cli::apply_env_seed(report_cfg, report_seed);
      return esbox::cli::run_report(report_cfg);
    }
    export_cfg.command = esbox::cli::Command::Export;
    export_cfg.format = parse_format(export_fmt);
    esbox::cli::apply_env_seed(export_cfg, export_seed);
    return esbox::cli::run_export(export_cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return esbox::cli::kExitInputError;
  }
}
