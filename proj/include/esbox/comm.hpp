/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_COMM_HPP
#define ESBOX_COMM_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "esbox/boxes.hpp"
#include "esbox/entropy.hpp"
#include "esbox/state.hpp"

namespace esbox::comm {

using boxes::AnyBox;
using boxes::ESBox;
using boxes::SubPrimitiveBox;

/// Raised when a protocol's precondition on the box fails (the box is fine,
/// the protocol just does not apply to it).
class ProtocolInapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Information/entropy balance of learning which ensemble member is shared.
///   delta_mutual_info = sum_i p_i I(rho_i) - I(avg)   (average gain)
///   delta_entropy     = S(avg) - sum_i p_i S(rho_i)   (average drop)
/// delta_mutual_info <= delta_entropy always; identity_residual is
/// |(dI - dS) + I(A:R) + I(B:R)| on the classically flagged extension
/// rho_ABR, which vanishes identically.
struct EnsembleGap {
  double delta_mutual_info = 0.0;
  double delta_entropy = 0.0;
  double identity_residual = 0.0;
};

EnsembleGap ensemble_gap(const Ensemble& ensemble,
                         std::span<const std::string> part_a,
                         std::span<const std::string> part_b);

/// Broadcast-cost bound from the canonical run: Charlie's outcome entropy
/// H({p_i}) dominates the entropy drop, which dominates the mutual-information
/// gain, which equals 2 bits for any valid standard-form box. The sub-primitive
/// boxes skip the chain (their bound is the bare outcome entropy).
struct CcChain {
  double outcome_entropy_bits = 0.0;
  double delta_entropy = 0.0;
  double delta_mutual_info = 0.0;
  double max_link_violation = 0.0;
  bool chain_checked = false;
  bool chain_ok = false;
};

CcChain cc_lower_bound(const ESBox& box);
CcChain cc_lower_bound(const SubPrimitiveBox& box);
CcChain cc_lower_bound(const AnyBox& box);

/// Charlie encodes one bit with {1, Z on C1} before the box. The two outputs
/// are orthogonal for every valid box, so the joint {P+, 1-P+} measurement
/// recovers the bit: accessible information 1. holevo_bits is the chi of the
/// binary output ensemble.
struct PhaseSignal {
  double holevo_bits = 0.0;
  double accessible_bits = 0.0;
  double orthogonality_residual = 0.0;
};

PhaseSignal phase_signal_protocol(const ESBox& box);

/// Four-message dense coding through a teleporting box: Charlie rotates his
/// half of a |Psi+>_{A'C2} ancilla pair with {1, Z, X, XZ}, the box carries
/// C2 to A, Alice Bell-measures A'A. Requires the (untwirled) branch
/// structure to satisfy the teleportation contract, else throws
/// ProtocolInapplicable. n_messages = 2 restricts the encodings to {1, Z}.
struct DenseCoding {
  double bits = 0.0;
  Eigen::MatrixXd confusion;  // confusion(m, k) = P(decode k | sent m)
};

DenseCoding dense_coding_value(const ESBox& box, int n_messages = 4);

/// Entanglement-assisted capacity objective of the box viewed as a channel
/// with the sender controlling the whole input:
///   S(rho) + S(box(rho)) - S((box ⊗ id_E)(purify(rho)))
/// The environment has the input dimension.
double ea_capacity_objective(const AnyBox& box, const DensityMatrix& rho);

struct CapacityResult {
  double value_bits = 0.0;
  DensityMatrix argmax_state;
  int restarts = 0;
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free mixing ascent of the (concave) capacity objective: from
/// each random full-rank start, propose rho' = (1-t) rho + t sigma toward
/// random pure sigma over a coarse t grid {0.5, 0.1, 0.02}, refining t by
/// bisection along improving chords. Best value over all restarts.
/// converged reports whether the winning restart's last 10% of iterations
/// improved by less than 1e-8.
CapacityResult ea_capacity_maximize(const AnyBox& box, int restarts, int iters,
                                    std::uint64_t seed);

enum class Direction { CtoA, CtoB, CtoAB };

/// Probes whether operations on Charlie's factors before the box can move
/// the output marginal on the target side: random inputs, and per input both
/// a Haar-random unitary and a computational-basis measurement at C.
/// max_residual is the worst trace distance observed.
struct SignalingResult {
  bool is_signaling = false;
  double max_residual = 0.0;
};

SignalingResult nonsignaling_check(const AnyBox& box, Direction direction,
                                   int trials, std::uint64_t seed);

/// The sub-unit signal through the GHZ-step box: AB output of the canonical
/// run vs the AB output after Charlie randomizes the input to 1/4 ⊗ 1/4.
struct GhzSignal {
  double holevo_bits = 0.0;
  DensityMatrix rho_ghz;         // AB marginal of the canonical run
  DensityMatrix rho_randomized;  // AB marginal after Charlie randomizes
};

GhzSignal ghz_randomization_signal();

/// Charlie encodes {1, Z} on his GHZ qubit before the Bell-from-GHZ box;
/// the outputs are |Psi+> vs its phase-flipped partner in every branch, so
/// the joint measurement decodes one full bit.
struct BinarySignal {
  double accessible_bits = 0.0;
  double orthogonality_residual = 0.0;
};

BinarySignal bell_from_ghz_signal();

}  // namespace esbox::comm

#endif
