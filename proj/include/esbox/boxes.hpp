/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_BOXES_HPP
#define ESBOX_BOXES_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "esbox/ops.hpp"
#include "esbox/state.hpp"

namespace esbox::boxes {

using esbox::DensityMatrix;
using esbox::Matrix;
using esbox::Register;
using esbox::StateVector;

// Wire labels used by every box in this library. Charlie holds C1 and C2
// (or the single qubit C for the Bell-from-GHZ step); A' is Alice's local
// ancilla in the dense-coding protocol; E is the purification environment.
inline const std::string kA = "A";
inline const std::string kB = "B";
inline const std::string kC1 = "C1";
inline const std::string kC2 = "C2";
inline const std::string kC = "C";
inline const std::string kAncilla = "A'";
inline const std::string kEnv = "E";

/// The four Bell states: (1 ⊗ sigma)|Psi+> with sigma in {1, Z, X, XZ}
/// for which = 0..3. Two-qubit register [l0, l1].
StateVector bell_state(int which, const std::string& l0 = kA,
                       const std::string& l1 = kB);

/// (|000> + |111>)/sqrt(2).
StateVector ghz_state(const std::string& l0 = kA, const std::string& l1 = kB,
                      const std::string& l2 = kC);

/// |Psi+>_{A C1} ⊗ |Psi+>_{B C2}, reordered to register [A, B, C1, C2].
StateVector canonical_input();

/// One measurement branch in standard form: a rank-one measurement operator
/// e_c = |u><psi+| on Charlie's two qubits [C1, C2], with <psi+| the dual of
/// a normalized maximally entangled state, plus the conditional correction
/// unitaries at A and B.
struct Branch {
  Matrix e_c;  // 4x4 on [C1, C2]
  Matrix u_a;  // 2x2 on A
  Matrix u_b;  // 2x2 on B
};

/// Standard-form box: rho ->
///   Tr_C( sum_i (U_A^i ⊗ U_B^i) E_C^i rho E_C^i† (U_A^i ⊗ U_B^i)† ),
/// optionally followed by the UU*-twirl on the AB output.
struct ESBox {
  std::vector<Branch> branches;
  bool post_twirl = false;
  std::string id = "es-box";
};

enum class SubPrimitiveKind { GhzFromTwoEpr, BellFromGhz };

/// One branch of a sub-primitive box: a Kraus operator on Charlie's labels
/// (unitary pre-processing folded into the measurement operator) plus
/// conditional corrections.
struct SubBranch {
  Matrix kraus;
  Matrix u_a;
  Matrix u_b;
};

/// One of the two intermediate-step boxes: two EPR pairs -> GHZ, or
/// GHZ -> EPR pair. Each broadcasts a single bit.
struct SubPrimitiveBox {
  SubPrimitiveKind kind;
  std::vector<SubBranch> branches;
  std::vector<std::string> c_labels;       // labels the Kraus operators act on
  std::vector<std::string> traced_labels;  // Charlie factors dropped from the output
  std::string id;
};

using AnyBox = std::variant<ESBox, SubPrimitiveBox>;

/// Bell measurement on [C1, C2] with Pauli corrections at A; realizes
/// standard teleportation from Charlie to Alice.
ESBox teleportation_box();

/// Marks the box as twirled (twirl composed after the branch sum). The inner
/// box must validate.
ESBox twirled_box(ESBox inner);

/// Haar-rotated Bell-basis box. n_outcomes = 4 gives one rotated basis;
/// n_outcomes = 8 superposes two rotated bases with weight 1/2 each.
/// Corrections are derived numerically from the canonical action and
/// phase-fixed, so construction is reproducible bit-for-bit.
ESBox random_es_box(int n_outcomes, std::uint64_t seed);

/// Exact isotropic projection of a two-qubit state:
///   F P+ + (1-F)(1 - P+)/3  with  F = <Psi+| sigma |Psi+>.
/// Closed form, no sampling.
DensityMatrix twirl(const DensityMatrix& sigma);

/// Twirl on the (a, b) factors of a larger state, identity on the rest.
DensityMatrix twirl_on(const DensityMatrix& rho, const std::string& a = kA,
                       const std::string& b = kB);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
  const ValidationCheck& check(const std::string& name) const;
};

/// Structural + functional checks on a candidate box:
///   rank_one:      every e_c has second singular value <= 1e-10
///   max_entangled: every right-singular vector is maximally entangled
///   completeness:  sum_i e_c† e_c = 1 on C1C2 within 1e-10
///   unitary:       every correction is unitary within 1e-10
///   canonical:     canonical input maps to |Psi+>_AB with fidelity >= 1-1e-9
/// Failures are carried in the report, never thrown.
ValidationReport validate_es_box(const ESBox& box);

/// Verdicts for a sub-primitive box: target-state fidelity on its canonical
/// input, outcome distribution, and broadcast accounting.
ValidationReport validate_sub_box(const SubPrimitiveBox& box);
ValidationReport validate_box(const AnyBox& box);

struct Transcript {
  int broadcast_bits = 0;
  double outcome_entropy_bits = 0.0;
};

struct BoxRun {
  DensityMatrix output;
  Eigen::VectorXd outcome_probs;
  Transcript transcript;
};

/// Runs a box on rho. The register must contain the box's labels; any other
/// factor (e.g. the ancilla A') passes through untouched apart from the
/// identity extension of the corrections. Charlie's traced factors are
/// dropped from the output register. Zero-probability branches are skipped.
BoxRun apply_box(const ESBox& box, const DensityMatrix& rho);
BoxRun apply_box(const SubPrimitiveBox& box, const DensityMatrix& rho);
BoxRun apply_box(const AnyBox& box, const DensityMatrix& rho);

/// Pure-input fast path (identical output, branch amplitudes kept as
/// vectors until the trace).
BoxRun apply_box(const ESBox& box, const StateVector& psi);
BoxRun apply_box(const SubPrimitiveBox& box, const StateVector& psi);
BoxRun apply_box(const AnyBox& box, const StateVector& psi);

/// Post-measurement, pre-correction ensemble {p_i, rho_i} on the non-C
/// factors. This is the ensemble Charlie's broadcast disambiguates; branches
/// with p_i < 1e-12 are skipped.
Ensemble branch_ensemble(const ESBox& box, const DensityMatrix& rho);

/// Charlie applies CNOT(C1 -> C2) and measures C2; Bob flips on outcome 1.
/// Canonical input -> GHZ on [A, B, C1] at the cost of one broadcast bit.
SubPrimitiveBox ghz_box();

/// Charlie measures his GHZ qubit in the |+->' basis; Alice applies Z on
/// the minus outcome. GHZ input -> |Psi+>_AB, one broadcast bit.
SubPrimitiveBox bell_from_ghz_box();

/// Canonical input state for any box kind (the ES input, or GHZ for the
/// Bell-from-GHZ step).
DensityMatrix canonical_box_input(const AnyBox& box);

const std::string& box_id(const AnyBox& box);
bool is_twirled(const AnyBox& box);

}  // namespace esbox::boxes

#endif
