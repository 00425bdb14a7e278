/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "esbox/box_io.hpp"
#include "esbox/random.hpp"

namespace esbox::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Doubles are rounded through their 12-significant-digit decimal form before
// JSON serialization, so numeric output bytes match the text/csv renderings.
double round12(double v) { return std::strtod(fmt_double(v).c_str(), nullptr); }

const char* status_name(comm::VerdictStatus s) {
  switch (s) {
    case comm::VerdictStatus::Pass: return "PASS";
    case comm::VerdictStatus::Fail: return "FAIL";
    default: return "INCONCLUSIVE";
  }
}

int write_out(const RunConfig& config, const std::string& payload) {
  if (!config.out_path) {
    std::cout << payload;
    return kExitPass;
  }
  std::ofstream out(*config.out_path);
  if (!out) {
    std::cerr << "error: cannot open output file '" << *config.out_path << "'\n";
    return kExitInputError;
  }
  out << payload;
  return kExitPass;
}

}  // namespace

void apply_env_seed(RunConfig& config, bool seed_flag_given) {
  if (seed_flag_given) return;
  if (const char* env = std::getenv("ESBOX_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') config.seed = v;
  }
}

boxes::AnyBox resolve_box(const RunConfig& config) {
  if (config.box_file) return boxes::load_box(*config.box_file);

  const std::string& name = config.box_selector;
  if (name == "teleport") return boxes::teleportation_box();
  if (name == "twirled-teleport")
    return boxes::twirled_box(boxes::teleportation_box());
  if (name == "random4") return boxes::random_es_box(4, config.seed);
  if (name == "random8") return boxes::random_es_box(8, config.seed);
  if (name == "ghz") return boxes::ghz_box();
  if (name == "bell-from-ghz") return boxes::bell_from_ghz_box();
  throw std::invalid_argument("unknown box selector '" + name + "'");
}

std::string format_validation(const boxes::ValidationReport& report,
                              const std::string& box_id, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json doc;
      doc["box_id"] = box_id;
      doc["checks"] = json::array();
      for (const auto& c : report.checks) {
        json row;
        row["name"] = c.name;
        row["residual"] = round12(c.residual);
        row["pass"] = c.pass;
        doc["checks"].push_back(std::move(row));
      }
      doc["all_pass"] = report.all_pass();
      return doc.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::ostringstream out;
      out << "box_id,check,residual,pass\n";
      for (const auto& c : report.checks)
        out << box_id << ',' << c.name << ',' << fmt_double(c.residual) << ','
            << (c.pass ? "true" : "false") << '\n';
      return out.str();
    }
    case OutputFormat::Text:
    default: {
      std::ostringstream out;
      out << "box: " << box_id << '\n';
      char line[128];
      for (const auto& c : report.checks) {
        std::snprintf(line, sizeof(line), "  %-16s %-6s residual=%s\n",
                      c.name.c_str(), c.pass ? "PASS" : "FAIL",
                      fmt_double(c.residual).c_str());
        out << line;
      }
      out << (report.all_pass() ? "all checks passed\n" : "validation FAILED\n");
      return out.str();
    }
  }
}

std::string format_report(const comm::CommReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json doc;
      doc["box_id"] = report.box_id;
      doc["seed"] = report.seed;
      doc["claims"] = json::array();
      for (const auto& v : report.verdicts) {
        json row;
        row["id"] = v.id;
        row["value"] = round12(v.value);
        row["bound"] = round12(v.bound);
        row["residual"] = round12(v.residual);
        if (v.status == comm::VerdictStatus::Inconclusive)
          row["pass"] = nullptr;
        else
          row["pass"] = (v.status == comm::VerdictStatus::Pass);
        doc["claims"].push_back(std::move(row));
      }
      return doc.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::ostringstream out;
      out << "box_id,seed,claim,value,bound,residual,pass\n";
      for (const auto& v : report.verdicts)
        out << report.box_id << ',' << report.seed << ',' << v.id << ','
            << fmt_double(v.value) << ',' << fmt_double(v.bound) << ','
            << fmt_double(v.residual) << ','
            << (v.status == comm::VerdictStatus::Pass
                    ? "true"
                    : (v.status == comm::VerdictStatus::Fail ? "false"
                                                             : "inconclusive"))
            << '\n';
      return out.str();
    }
    case OutputFormat::Text:
    default: {
      std::ostringstream out;
      out << "box: " << report.box_id << "   seed: " << report.seed << '\n';
      char line[160];
      std::snprintf(line, sizeof(line), "  %-8s %-18s %-18s %-18s %s\n", "claim",
                    "value", "bound", "residual", "verdict");
      out << line;
      for (const auto& v : report.verdicts) {
        std::snprintf(line, sizeof(line), "  %-8s %-18s %-18s %-18s %s\n",
                      v.id.c_str(), fmt_double(v.value).c_str(),
                      fmt_double(v.bound).c_str(), fmt_double(v.residual).c_str(),
                      status_name(v.status));
        out << line;
      }
      out << "  broadcast entropy: " << fmt_double(report.outcome_entropy_bits)
          << " bits, cost bound: " << fmt_double(report.cc_lower_bound_bits)
          << " bits, signal value: " << fmt_double(report.cv_lower_bound_bits)
          << " bits";
      if (report.capacity_upper_bound_bits)
        out << ", capacity estimate: "
            << fmt_double(*report.capacity_upper_bound_bits) << " bits";
      out << '\n';
      if (!report.nonsignaling.empty()) {
        out << "  signaling:";
        for (const auto& [dir, entry] : report.nonsignaling)
          out << ' ' << dir << '=' << (entry.is_signaling ? "yes" : "no")
              << " (residual " << fmt_double(entry.max_residual) << ')';
        out << '\n';
      }
      for (const auto& note : report.notes) out << "  note: " << note << '\n';
      out << (report.all_pass() ? "all claims passed\n" : "claims FAILED\n");
      return out.str();
    }
  }
}

int run_verify(const RunConfig& config) {
  boxes::AnyBox box{boxes::ESBox{}};
  try {
    box = resolve_box(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  const boxes::ValidationReport report = boxes::validate_box(box);
  const int write_rc =
      write_out(config, format_validation(report, boxes::box_id(box), config.format));
  if (write_rc != kExitPass) return write_rc;
  return report.all_pass() ? kExitPass : kExitFail;
}

int run_report(const RunConfig& config) {
  boxes::AnyBox box{boxes::ESBox{}};
  try {
    box = resolve_box(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  comm::ReportOptions opts;
  opts.seed = config.seed;
  opts.trials = config.trials;
  opts.restarts = config.restarts;
  opts.iters = config.iters;
  opts.tol_algebra = config.tol_algebra;
  opts.tol_opt = config.tol_opt;

  const comm::CommReport report = comm::build_comm_report(box, opts);
  const int write_rc = write_out(config, format_report(report, config.format));
  if (write_rc != kExitPass) return write_rc;
  if (report.any_inconclusive()) return kExitInconclusive;
  return report.all_pass() ? kExitPass : kExitFail;
}

int run_export(const RunConfig& config) {
  boxes::AnyBox box{boxes::ESBox{}};
  try {
    box = resolve_box(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return write_out(config, boxes::box_to_json(box));
}

}  // namespace esbox::cli
