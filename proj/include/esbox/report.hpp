/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_REPORT_HPP
#define ESBOX_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esbox/comm.hpp"

namespace esbox::comm {

enum class VerdictStatus { Pass, Fail, Inconclusive };

/// One row of the claims table. Claim ids:
///   T1  standard-form validation        L1  ensemble-gap property suite
///   T2  broadcast-cost chain            T3  phase-signal protocol
///   T4-cap  capacity bound (twirled)    T4-ns  marginal signaling checks
///   DC  dense-coding protocol           SUB1/SUB2  sub-primitive claims
struct Verdict {
  std::string id;
  double value = 0.0;
  double bound = 0.0;
  double residual = 0.0;
  VerdictStatus status = VerdictStatus::Fail;
};

struct SignalingEntry {
  bool is_signaling = false;
  double max_residual = 0.0;
};

struct CommReport {
  std::string box_id;
  std::uint64_t seed = 0;
  double outcome_entropy_bits = 0.0;
  double cc_lower_bound_bits = 0.0;
  double cv_lower_bound_bits = 0.0;
  std::optional<double> capacity_upper_bound_bits;
  bool capacity_converged = true;
  std::map<std::string, SignalingEntry> nonsignaling;  // "C->A", "C->B", "C->AB"
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;  // informational, text output only

  bool all_pass() const;
  bool any_inconclusive() const;
  /// cv <= capacity (+tol) and cc-chain >= cv: both hold whenever the
  /// quantities coexist in a report.
  void check_consistency(double tol = kTolOpt) const;
};

struct ReportOptions {
  std::uint64_t seed = 42;
  int trials = 1000;
  int restarts = 200;
  int iters = 300;
  double tol_algebra = kTolAlgebra;
  double tol_derived = kTolDerived;
  double tol_opt = kTolOpt;
};

/// Runs the full verification pipeline applicable to the box and assembles
/// the claims table. Expensive capacity maximization runs only where the
/// claim needs it (twirled boxes; a reduced informational estimate for the
/// GHZ-step box).
CommReport build_comm_report(const AnyBox& box, const ReportOptions& opts);

/// Property sweep behind the L1 claim: seeded random ensembles of two-qubit
/// states. Returns (max over trials of dI - dS, max identity residual).
std::pair<double, double> ensemble_gap_sweep(int trials, std::uint64_t seed);

}  // namespace esbox::comm

#endif
