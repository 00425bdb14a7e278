/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "esbox/box_io.hpp"
#include "esbox/cli.hpp"

using namespace esbox;
using namespace esbox::cli;

namespace {

namespace fs = std::filesystem;

RunConfig fast_report_config() {
  RunConfig config;
  config.command = Command::Report;
  config.trials = 50;
  config.restarts = 5;
  config.iters = 80;
  return config;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("box selectors resolve") {
  for (const char* name : {"teleport", "twirled-teleport", "random4", "random8",
                           "ghz", "bell-from-ghz"}) {
    RunConfig config;
    config.box_selector = name;
    CHECK(boxes::validate_box(resolve_box(config)).all_pass());
  }
  RunConfig config;
  config.box_selector = "nope";
  CHECK_THROWS_AS(resolve_box(config), std::invalid_argument);
}

TEST_CASE("report on an invalid box stops at the validation claim") {
  boxes::ESBox broken = boxes::teleportation_box();
  broken.branches.pop_back();
  const std::string path =
      (fs::temp_directory_path() / "esbox-broken-report.json").string();
  boxes::save_box(boxes::AnyBox{broken}, path);

  RunConfig config = fast_report_config();
  config.box_file = path;
  config.out_path = (fs::temp_directory_path() / "esbox-broken-report.txt").string();
  CHECK(run_report(config) == kExitFail);

  const std::string text = slurp(*config.out_path);
  CHECK(text.find("T1") != std::string::npos);
  CHECK(text.find("T2") == std::string::npos);
  fs::remove(path);
  fs::remove(*config.out_path);
}

TEST_CASE("verify exit codes") {
  RunConfig ok;
  ok.box_selector = "teleport";
  ok.out_path = (fs::temp_directory_path() / "esbox-verify.txt").string();
  CHECK(run_verify(ok) == kExitPass);

  // a box file with a deleted branch fails completeness
  boxes::ESBox broken = boxes::teleportation_box();
  broken.branches.pop_back();
  const std::string path =
      (fs::temp_directory_path() / "esbox-broken.json").string();
  boxes::save_box(boxes::AnyBox{broken}, path);
  RunConfig bad;
  bad.box_file = path;
  bad.out_path = ok.out_path;
  CHECK(run_verify(bad) == kExitFail);

  RunConfig missing;
  missing.box_file = "/nonexistent/box.json";
  CHECK(run_verify(missing) == kExitInputError);
  fs::remove(path);
  fs::remove(*ok.out_path);
}

TEST_CASE("verify report formats are deterministic") {
  RunConfig config = fast_report_config();
  config.box_selector = "random4";
  config.seed = 7;

  for (const OutputFormat format :
       {OutputFormat::Text, OutputFormat::Json, OutputFormat::Csv}) {
    config.format = format;
    const auto box = resolve_box(config);
    comm::ReportOptions opts;
    opts.seed = config.seed;
    opts.trials = config.trials;
    opts.restarts = config.restarts;
    opts.iters = config.iters;
    const std::string once = format_report(comm::build_comm_report(box, opts), format);
    const std::string twice = format_report(comm::build_comm_report(box, opts), format);
    CHECK(once == twice);
    CHECK(!once.empty());

    // seeded construction makes the validation report reproducible too
    const std::string v_once = format_validation(
        boxes::validate_box(resolve_box(config)), "random4", format);
    const std::string v_twice = format_validation(
        boxes::validate_box(resolve_box(config)), "random4", format);
    CHECK(v_once == v_twice);
  }
}

TEST_CASE("report json carries the claim schema") {
  RunConfig config = fast_report_config();
  config.box_selector = "ghz";
  config.seed = 9;
  config.format = OutputFormat::Json;
  const std::string path =
      (fs::temp_directory_path() / "esbox-report.json").string();
  config.out_path = path;

  CHECK(run_report(config) == kExitPass);
  const auto doc = nlohmann::json::parse(slurp(path));
  CHECK(doc.at("box_id") == "ghz");
  CHECK(doc.at("seed") == 9);
  REQUIRE(doc.at("claims").is_array());
  bool saw_sub1 = false;
  for (const auto& claim : doc["claims"]) {
    CHECK(claim.contains("id"));
    CHECK(claim.contains("value"));
    CHECK(claim.contains("bound"));
    CHECK(claim.contains("residual"));
    CHECK(claim.contains("pass"));
    saw_sub1 = saw_sub1 || claim["id"] == "SUB1";
  }
  CHECK(saw_sub1);
  fs::remove(path);
}

TEST_CASE("report csv flattens one row per claim") {
  RunConfig config = fast_report_config();
  config.box_selector = "bell-from-ghz";
  config.format = OutputFormat::Csv;
  const std::string path =
      (fs::temp_directory_path() / "esbox-report.csv").string();
  config.out_path = path;
  CHECK(run_report(config) == kExitPass);

  const std::string csv = slurp(path);
  CHECK(csv.rfind("box_id,seed,claim,value,bound,residual,pass\n", 0) == 0);
  CHECK(csv.find("SUB2") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("inconclusive claims render as null in json") {
  comm::CommReport report;
  report.box_id = "synthetic";
  report.seed = 1;
  report.verdicts.push_back(
      {"T4-cap", 0.9, 1.0, 0.0, comm::VerdictStatus::Inconclusive});
  CHECK(report.any_inconclusive());
  CHECK(!report.all_pass());

  const std::string json_text = format_report(report, OutputFormat::Json);
  const auto doc = nlohmann::json::parse(json_text);
  CHECK(doc["claims"][0]["pass"].is_null());

  const std::string text = format_report(report, OutputFormat::Text);
  CHECK(text.find("INCONCLUSIVE") != std::string::npos);

  const std::string csv = format_report(report, OutputFormat::Csv);
  CHECK(csv.find("inconclusive") != std::string::npos);
}

TEST_CASE("environment seed applies only without the flag") {
  setenv("ESBOX_SEED", "777", 1);
  RunConfig config;
  config.seed = 42;
  apply_env_seed(config, /*seed_flag_given=*/false);
  CHECK(config.seed == 777);

  config.seed = 42;
  apply_env_seed(config, /*seed_flag_given=*/true);
  CHECK(config.seed == 42);

  unsetenv("ESBOX_SEED");
  config.seed = 42;
  apply_env_seed(config, false);
  CHECK(config.seed == 42);
}

TEST_CASE("export emits the wire format") {
  RunConfig config;
  config.command = Command::Export;
  config.box_selector = "random8";
  config.seed = 13;
  const std::string path =
      (fs::temp_directory_path() / "esbox-export.json").string();
  config.out_path = path;
  CHECK(run_export(config) == kExitPass);

  const auto box = boxes::load_box(path);
  CHECK(boxes::validate_box(box).all_pass());
  CHECK(std::get<boxes::ESBox>(box).branches.size() == 8);
  fs::remove(path);
}
