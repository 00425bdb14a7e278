/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/report.hpp"

#include <algorithm>
#include <cmath>

#include "esbox/ops.hpp"
#include "esbox/random.hpp"

namespace esbox::comm {

namespace {

using boxes::kA;
using boxes::kB;

// chi of the one-bit randomization signal through the GHZ-step box:
// S({3/8, 3/8, 1/8, 1/8}) - (1 + 2)/2.
constexpr double kGhzSignalBits = 0.3112781244591328;

VerdictStatus status_of(bool pass) {
  return pass ? VerdictStatus::Pass : VerdictStatus::Fail;
}

}  // namespace

bool CommReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) {
    return v.status == VerdictStatus::Pass;
  });
}

bool CommReport::any_inconclusive() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) {
    return v.status == VerdictStatus::Inconclusive;
  });
}

void CommReport::check_consistency(double tol) const {
  if (capacity_upper_bound_bits &&
      cv_lower_bound_bits > *capacity_upper_bound_bits + tol)
    throw std::logic_error("CommReport: cv lower bound exceeds capacity bound");
  if (cc_lower_bound_bits < cv_lower_bound_bits - tol)
    throw std::logic_error("CommReport: cc chain below cv value");
  if (cc_lower_bound_bits > outcome_entropy_bits + kTolDerived)
    throw std::logic_error("CommReport: cc bound exceeds broadcast entropy");
}

std::pair<double, double> ensemble_gap_sweep(int trials, std::uint64_t seed) {
  Rng rng(seed);
  const Register pair = Register::qubits({kA, kB});
  std::uniform_int_distribution<int> members(2, 6);
  std::uniform_int_distribution<int> ranks(1, 4);
  std::uniform_real_distribution<double> weight(0.05, 1.0);

  double worst_gap = -1e9;
  double worst_identity = 0.0;
  const std::vector<std::string> part_a{kA};
  const std::vector<std::string> part_b{kB};

  for (int t = 0; t < trials; ++t) {
    const int n = members(rng);
    Ensemble ens;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = weight(rng);
      ens.entries.push_back({w, random_density(pair, ranks(rng), rng)});
      total += w;
    }
    for (auto& e : ens.entries) e.p /= total;

    const EnsembleGap gap = ensemble_gap(ens, part_a, part_b);
    worst_gap = std::max(worst_gap, gap.delta_mutual_info - gap.delta_entropy);
    worst_identity = std::max(worst_identity, gap.identity_residual);
  }
  return {worst_gap, worst_identity};
}

namespace {

void add_validation_verdict(CommReport& report, const AnyBox& box,
                            const ReportOptions& opts) {
  const boxes::ValidationReport vr = boxes::validate_box(box);
  double structural = 0.0;
  for (const auto& c : vr.checks)
    if (c.name != "canonical") structural = std::max(structural, c.residual);
  double canonical = vr.check("canonical").residual;
  report.verdicts.push_back({"T1", 1.0 - canonical, 1.0 - opts.tol_derived,
                             structural, status_of(vr.all_pass())});
}

void add_gap_sweep_verdict(CommReport& report, const ReportOptions& opts) {
  const auto [worst_gap, worst_identity] =
      ensemble_gap_sweep(opts.trials, derive_seed(opts.seed, "ensemble-gap"));
  const bool pass =
      worst_gap <= opts.tol_derived && worst_identity <= opts.tol_derived;
  report.verdicts.push_back(
      {"L1", worst_gap, 0.0, worst_identity, status_of(pass)});
}

void add_cost_verdict(CommReport& report, const AnyBox& box,
                      const ReportOptions& opts) {
  const CcChain chain = cc_lower_bound(box);
  report.outcome_entropy_bits = chain.outcome_entropy_bits;
  report.cc_lower_bound_bits = chain.outcome_entropy_bits;

  bool pass;
  double bound;
  if (chain.chain_checked) {
    bound = 2.0;
    pass = chain.chain_ok &&
           chain.outcome_entropy_bits >= bound - opts.tol_derived;
  } else {
    bound = 1.0;  // both sub-primitive boxes broadcast exactly one bit
    pass = std::abs(chain.outcome_entropy_bits - bound) <= opts.tol_derived;
  }
  report.verdicts.push_back({"T2", chain.outcome_entropy_bits, bound,
                             chain.max_link_violation, status_of(pass)});
}

void add_phase_signal_verdict(CommReport& report, const ESBox& box,
                              const ReportOptions& opts) {
  const PhaseSignal sig = phase_signal_protocol(box);
  report.cv_lower_bound_bits =
      std::max(report.cv_lower_bound_bits, sig.accessible_bits);
  const bool pass = std::abs(sig.accessible_bits - 1.0) <= opts.tol_derived &&
                    sig.orthogonality_residual <= opts.tol_algebra;
  report.verdicts.push_back({"T3", sig.accessible_bits, 1.0,
                             sig.orthogonality_residual, status_of(pass)});
}

void add_capacity_verdict(CommReport& report, const ESBox& box,
                          const ReportOptions& opts) {
  const CapacityResult cap = ea_capacity_maximize(
      AnyBox{box}, opts.restarts, opts.iters, derive_seed(opts.seed, "capacity"));
  report.capacity_upper_bound_bits = cap.value_bits;
  report.capacity_converged = cap.converged;

  // The exact capacity of a twirled box is 1; the ascent must land in
  // [1 - 1e-3, 1 + tol_opt] to certify the claim.
  const bool in_band =
      cap.value_bits >= 1.0 - 1e-3 && cap.value_bits <= 1.0 + opts.tol_opt;
  VerdictStatus status = status_of(in_band);
  if (!in_band && !cap.converged) status = VerdictStatus::Inconclusive;
  report.verdicts.push_back({"T4-cap", cap.value_bits, 1.0,
                             std::max(0.0, cap.value_bits - 1.0), status});
}

void add_nonsignaling_verdict(CommReport& report, const AnyBox& box,
                              const ReportOptions& opts) {
  const int trials = std::max(1, std::min(opts.trials, 100));
  const auto run = [&](Direction dir, const char* tag) {
    const SignalingResult r =
        nonsignaling_check(box, dir, trials, derive_seed(opts.seed, tag));
    return r;
  };
  const SignalingResult to_a = run(Direction::CtoA, "ns-a");
  const SignalingResult to_b = run(Direction::CtoB, "ns-b");
  const SignalingResult to_ab = run(Direction::CtoAB, "ns-ab");
  report.nonsignaling["C->A"] = {to_a.is_signaling, to_a.max_residual};
  report.nonsignaling["C->B"] = {to_b.is_signaling, to_b.max_residual};
  report.nonsignaling["C->AB"] = {to_ab.is_signaling, to_ab.max_residual};

  const double side_residual = std::max(to_a.max_residual, to_b.max_residual);
  bool pass;
  double bound;
  if (boxes::is_twirled(box)) {
    // Twirled boxes must hide the signal from each side separately while
    // still carrying it to A and B jointly.
    bound = opts.tol_algebra;
    pass = !to_a.is_signaling && !to_b.is_signaling && to_ab.is_signaling &&
           side_residual <= opts.tol_algebra;
  } else {
    bound = 1e-8;
    pass = to_ab.is_signaling;
  }
  report.verdicts.push_back(
      {"T4-ns", to_ab.max_residual, bound, side_residual, status_of(pass)});
}

void add_dense_coding_verdict(CommReport& report, const ESBox& box,
                              const ReportOptions& opts) {
  DenseCoding dc;
  try {
    dc = dense_coding_value(box);
  } catch (const ProtocolInapplicable&) {
    report.notes.push_back(
        "dense coding skipped: box does not implement teleportation");
    return;
  }
  report.cv_lower_bound_bits = std::max(report.cv_lower_bound_bits, dc.bits);

  bool pass;
  if (box.post_twirl) {
    // The twirl must break the protocol: strictly below two bits.
    pass = dc.bits < 2.0 - opts.tol_opt;
    report.notes.push_back("dense coding through the twirl decodes " +
                           std::to_string(dc.bits) + " bits of 2");
  } else {
    pass = std::abs(dc.bits - 2.0) <= opts.tol_opt;
  }
  const double identity_defect =
      (dc.confusion - Eigen::MatrixXd::Identity(dc.confusion.rows(),
                                                dc.confusion.cols()))
          .cwiseAbs()
          .maxCoeff();
  report.verdicts.push_back(
      {"DC", dc.bits, 2.0, identity_defect, status_of(pass)});
}

void add_sub_primitive_verdicts(CommReport& report, const SubPrimitiveBox& box,
                                const ReportOptions& opts) {
  if (box.kind == boxes::SubPrimitiveKind::GhzFromTwoEpr) {
    const GhzSignal sig = ghz_randomization_signal();
    report.cv_lower_bound_bits = sig.holevo_bits;
    const double residual = std::abs(sig.holevo_bits - kGhzSignalBits);
    report.verdicts.push_back({"SUB1", sig.holevo_bits, kGhzSignalBits,
                               residual, status_of(residual <= opts.tol_opt)});

    // Unrestricted capacity-style estimate, informational only: it does not
    // bound the box's signaling value tightly, so the strict sub-unit claim
    // stays out of the verdict table.
    const CapacityResult cap =
        ea_capacity_maximize(AnyBox{box}, std::min(opts.restarts, 10),
                             std::min(opts.iters, 150),
                             derive_seed(opts.seed, "ghz-capacity"));
    report.notes.push_back(
        "ghz-step signal lower bound " + std::to_string(sig.holevo_bits) +
        " bits; unrestricted capacity estimate " +
        std::to_string(cap.value_bits) +
        " bits (informational; sub-unit signaling ceiling not certifiable here)");
  } else {
    const BinarySignal sig = bell_from_ghz_signal();
    report.cv_lower_bound_bits = sig.accessible_bits;
    const bool pass = std::abs(sig.accessible_bits - 1.0) <= opts.tol_derived &&
                      sig.orthogonality_residual <= opts.tol_algebra;
    report.verdicts.push_back({"SUB2", sig.accessible_bits, 1.0,
                               sig.orthogonality_residual, status_of(pass)});
  }
}

}  // namespace

CommReport build_comm_report(const AnyBox& box, const ReportOptions& opts) {
  CommReport report;
  report.box_id = boxes::box_id(box);
  report.seed = opts.seed;

  add_validation_verdict(report, box, opts);
  if (report.verdicts.front().status != VerdictStatus::Pass) {
    // The communication claims are statements about valid boxes; an invalid
    // candidate stops at the failed validation verdict.
    report.notes.push_back("box failed validation; remaining claims skipped");
    return report;
  }

  if (const auto* es = std::get_if<ESBox>(&box)) {
    add_gap_sweep_verdict(report, opts);
    add_cost_verdict(report, box, opts);
    add_phase_signal_verdict(report, *es, opts);
    if (es->post_twirl) add_capacity_verdict(report, *es, opts);
    add_nonsignaling_verdict(report, box, opts);
    add_dense_coding_verdict(report, *es, opts);
  } else {
    add_cost_verdict(report, box, opts);
    add_sub_primitive_verdicts(report, std::get<SubPrimitiveBox>(box), opts);
  }

  report.check_consistency(opts.tol_opt);
  return report;
}

}  // namespace esbox::comm
