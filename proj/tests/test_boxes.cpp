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

#include <cmath>

#include "esbox/boxes.hpp"
#include "esbox/entropy.hpp"
#include "esbox/ops.hpp"
#include "esbox/random.hpp"

using namespace esbox;
using namespace esbox::boxes;

namespace {

Matrix pauli_z() {
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

DensityMatrix dephase_charlie(const DensityMatrix& rho) {
  const std::vector<std::string> c{kC1, kC2};
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (int k = 0; k < 4; ++k) {
    Matrix p = Matrix::Zero(4, 4);
    p(k, k) = 1.0;
    const Matrix full = embed_operator(p, c, rho.reg);
    out += full * rho.mat * full;
  }
  return {out, rho.reg};
}

}  // namespace

TEST_CASE("bell and ghz states") {
  for (int i = 0; i < 4; ++i) {
    const StateVector a = bell_state(i, "A", "B");
    CHECK(a.norm_defect() < 1e-14);
    for (int j = 0; j < 4; ++j)
      CHECK(overlap(a, bell_state(j, "A", "B")) ==
            doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  }

  const DensityMatrix ab = partial_trace(to_density(ghz_state()), {"A", "B"});
  Matrix corr = Matrix::Zero(4, 4);
  corr(0, 0) = 0.5;
  corr(3, 3) = 0.5;
  CHECK((ab.mat - corr).norm() < 1e-14);
}

TEST_CASE("teleportation box validates and swaps") {
  const ESBox box = teleportation_box();
  const ValidationReport report = validate_es_box(box);
  CHECK(report.all_pass());
  for (const auto& check : report.checks) CHECK(check.residual <= 1e-10);

  const BoxRun run = apply_box(box, to_density(canonical_input()));
  CHECK(fidelity(run.output, bell_state(0, kA, kB)) >= 1.0 - 1e-12);
  CHECK(run.transcript.broadcast_bits == 2);
  CHECK(run.transcript.outcome_entropy_bits == doctest::Approx(2.0).epsilon(1e-12));
  for (int i = 0; i < 4; ++i)
    CHECK(run.outcome_probs(i) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("teleportation contract on product inputs") {
  const ESBox box = teleportation_box();

  // basis teleportation: |0> at C2 lands at A
  Vector zero(2), plus(2);
  zero << 1, 0;
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const StateVector in = tensor(
      bell_state(0, kA, kC1),
      tensor(StateVector{plus, Register::qubits({kB})},
             StateVector{zero, Register::qubits({kC2})}));
  const DensityMatrix out = apply_box(box, to_density(in)).output;
  const StateVector want = tensor(StateVector{zero, Register::qubits({kA})},
                                  StateVector{plus, Register::qubits({kB})});
  CHECK(fidelity(out, want) >= 1.0 - 1e-12);

  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const StateVector psi_b = random_pure(Register::qubits({kB}), rng);
    const StateVector phi = random_pure(Register::qubits({kC2}), rng);
    const StateVector input = tensor(bell_state(0, kA, kC1), tensor(psi_b, phi));
    const DensityMatrix moved = apply_box(box, to_density(input)).output;
    const StateVector expect =
        tensor(StateVector{phi.amps, Register::qubits({kA})}, psi_b);
    CHECK(fidelity(moved, expect) >= 1.0 - 1e-10);
  }
}

TEST_CASE("twirl closed form") {
  const DensityMatrix pplus = to_density(bell_state(0, kA, kB));
  CHECK(trace_distance(twirl(pplus), pplus) < 1e-14);

  const Register pair = Register::qubits({kA, kB});
  const DensityMatrix mixed{Matrix::Identity(4, 4) / 4.0, pair};
  CHECK(trace_distance(twirl(mixed), mixed) < 1e-14);

  // F = 0 input lands on the orthogonal isotropic edge
  const DensityMatrix flipped =
      apply(UnitaryOp{pauli_z(), {kA}}, pplus);
  const Matrix proj = pplus.mat;
  const DensityMatrix edge{(Matrix::Identity(4, 4) - proj) / 3.0, pair};
  CHECK(trace_distance(twirl(flipped), edge) < 1e-14);
}

TEST_CASE("twirl is idempotent and needs no communication") {
  Rng rng(151);
  const Register pair = Register::qubits({kA, kB});
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density(pair, 1 + trial % 4, rng);
    CHECK(trace_distance(twirl(twirl(rho)), twirl(rho)) <= 1e-12);
  }
  // invariance under any pre-shared U ⊗ U*: shared randomness suffices
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density(pair, 4, rng);
    const Matrix u = haar_unitary(2, rng);
    DensityMatrix rotated = apply(UnitaryOp{u, {kA}}, rho);
    rotated = apply(UnitaryOp{u.conjugate(), {kB}}, rotated);
    CHECK(trace_distance(twirl(rotated), twirl(rho)) <= 1e-12);
  }
}

TEST_CASE("monte carlo twirl matches the exact projection") {
  Rng rng(4242);
  const Register pair = Register::qubits({kA, kB});
  const DensityMatrix sigma = random_density(pair, 3, rng);

  Matrix mean = Matrix::Zero(4, 4);
  const int samples = 10000;
  for (int s = 0; s < samples; ++s) {
    const Matrix u = haar_unitary(2, rng);
    Matrix local(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        local.block(i * 2, j * 2, 2, 2) = u(i, j) * u.conjugate();
    mean += local * sigma.mat * local.adjoint();
  }
  mean /= samples;
  CHECK(trace_distance(DensityMatrix{mean, pair}, twirl(sigma)) <= 1e-2);
}

TEST_CASE("twirl with ancilla factors") {
  Rng rng(97);
  const Register trio = Register::qubits({kA, "X", kB});
  // product inputs reduce to twirl(sigma_AB) ⊗ rest
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix sab =
        random_density(Register::qubits({kA, kB}), 1 + trial % 4, rng);
    const DensityMatrix aux = random_density(Register::qubits({"X"}), 2, rng);
    const std::vector<std::string> order{kA, "X", kB};
    const DensityMatrix joint = permute(tensor(sab, aux), order);
    const DensityMatrix direct = twirl_on(joint, kA, kB);
    const DensityMatrix split = permute(tensor(twirl(sab), aux), order);
    CHECK(trace_distance(direct, split) <= 1e-12);
  }
  // Monte-Carlo oracle on correlated tripartite inputs
  const DensityMatrix rho = random_density(trio, 4, rng);
  Matrix mean = Matrix::Zero(8, 8);
  const int samples = 4000;
  for (int s = 0; s < samples; ++s) {
    const Matrix u = haar_unitary(2, rng);
    const DensityMatrix step = apply(
        UnitaryOp{u.conjugate(), {kB}}, apply(UnitaryOp{u, {kA}}, rho));
    mean += step.mat;
  }
  mean /= samples;
  CHECK(trace_distance(DensityMatrix{mean, trio}, twirl_on(rho, kA, kB)) <=
        2e-2);
}

TEST_CASE("twirled box stays a valid box with isotropic outputs") {
  const ESBox box = twirled_box(teleportation_box());
  CHECK(box.post_twirl);
  CHECK(validate_es_box(box).all_pass());

  const BoxRun canon = apply_box(box, to_density(canonical_input()));
  CHECK(fidelity(canon.output, bell_state(0, kA, kB)) >= 1.0 - 1e-12);

  Rng rng(107);
  const Register in_reg = Register::qubits({kA, kB, kC1, kC2});
  const StateVector target = bell_state(0, kA, kB);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density(in_reg, 16, rng);
    const DensityMatrix out = apply_box(box, rho).output;

    // exact isotropic form
    const double f = fidelity(out, target);
    const Matrix proj = to_density(target).mat;
    const Matrix iso =
        f * proj + (1.0 - f) / 3.0 * (Matrix::Identity(4, 4) - proj);
    CHECK(trace_distance(out, DensityMatrix{iso, out.reg}) <= 1e-10);

    // single-side marginals pin to the maximally mixed state
    CHECK((partial_trace(out, {kA}).mat - Matrix::Identity(2, 2) / 2.0)
              .norm() <= 1e-10);
    CHECK((partial_trace(out, {kB}).mat - Matrix::Identity(2, 2) / 2.0)
              .norm() <= 1e-10);
  }

  // isotropic states commute with every U ⊗ U*
  const DensityMatrix sample =
      apply_box(box, random_density(in_reg, 16, rng)).output;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix u = haar_unitary(2, rng);
    DensityMatrix rotated = apply(UnitaryOp{u, {kA}}, sample);
    rotated = apply(UnitaryOp{u.conjugate(), {kB}}, rotated);
    CHECK(trace_distance(rotated, sample) <= 1e-10);
  }

  CHECK_THROWS_AS(twirled_box(ESBox{{}, false, "empty"}), std::invalid_argument);
}

TEST_CASE("random boxes validate across seeds") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (const int n : {4, 8}) {
      const ESBox box = random_es_box(n, seed);
      REQUIRE(static_cast<int>(box.branches.size()) == n);
      const ValidationReport report = validate_es_box(box);
      CHECK(report.all_pass());
      CHECK(report.check("completeness").residual <= 1e-12);
    }
  }
}

TEST_CASE("random box construction is seed-deterministic") {
  const ESBox a = random_es_box(8, 7);
  const ESBox b = random_es_box(8, 7);
  REQUIRE(a.branches.size() == b.branches.size());
  for (std::size_t i = 0; i < a.branches.size(); ++i) {
    CHECK((a.branches[i].e_c.array() == b.branches[i].e_c.array()).all());
    CHECK((a.branches[i].u_a.array() == b.branches[i].u_a.array()).all());
  }
  const ESBox c = random_es_box(8, 8);
  CHECK(!(a.branches[0].e_c.array() == c.branches[0].e_c.array()).all());
}

TEST_CASE("random box outcome statistics") {
  const BoxRun four =
      apply_box(random_es_box(4, 7), to_density(canonical_input()));
  for (int i = 0; i < 4; ++i)
    CHECK(four.outcome_probs(i) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(four.transcript.broadcast_bits == 2);

  const BoxRun eight =
      apply_box(random_es_box(8, 7), to_density(canonical_input()));
  CHECK(eight.transcript.outcome_entropy_bits ==
        doctest::Approx(3.0).epsilon(1e-9));
  CHECK(eight.transcript.broadcast_bits == 3);
}

TEST_CASE("validator isolates each defect") {
  // product-basis measurement: completeness and rank survive, entanglement fails
  ESBox product;
  for (int i = 0; i < 4; ++i) {
    Branch br;
    br.e_c = Matrix::Zero(4, 4);
    br.e_c(i, i) = 1.0;
    br.u_a = Matrix::Identity(2, 2);
    br.u_b = Matrix::Identity(2, 2);
    product.branches.push_back(std::move(br));
  }
  const ValidationReport p = validate_es_box(product);
  CHECK(p.check("rank_one").pass);
  CHECK(!p.check("max_entangled").pass);
  CHECK(p.check("completeness").pass);
  CHECK(p.check("unitary").pass);
  CHECK(!p.check("canonical").pass);

  // deleted branch: only completeness (and the canonical action) break
  ESBox truncated = teleportation_box();
  truncated.branches.pop_back();
  const ValidationReport t = validate_es_box(truncated);
  CHECK(t.check("rank_one").pass);
  CHECK(t.check("max_entangled").pass);
  CHECK(!t.check("completeness").pass);
  CHECK(t.check("unitary").pass);
  CHECK(!t.check("canonical").pass);

  // non-unitary correction: only the unitarity check breaks
  ESBox scaled = teleportation_box();
  scaled.branches[0].u_a *= 1.1;
  const ValidationReport s = validate_es_box(scaled);
  CHECK(s.check("rank_one").pass);
  CHECK(s.check("max_entangled").pass);
  CHECK(s.check("completeness").pass);
  CHECK(!s.check("unitary").pass);
}

TEST_CASE("apply box output is a state and ancillas pass through") {
  Rng rng(113);
  const Register in_reg = Register::qubits({kA, kB, kC1, kC2});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ESBox box = random_es_box(seed % 2 ? 8 : 4, seed);
    const DensityMatrix rho = random_density(in_reg, 16, rng);
    const DensityMatrix out = apply_box(box, rho).output;
    CHECK(out.trace_defect() <= 1e-10);
    CHECK(out.hermiticity_defect() <= 1e-10);
    CHECK(out.min_eigenvalue() >= -1e-10);
    CHECK(out.reg.labels() == std::vector<std::string>{kA, kB});
  }

  // register missing a required label is rejected
  const DensityMatrix small =
      random_density(Register::qubits({kA, kB, kC1}), 4, rng);
  CHECK_THROWS_AS(apply_box(teleportation_box(), small), std::invalid_argument);
}

TEST_CASE("pure-input path matches the density path") {
  Rng rng(131);
  const Register wide = Register::qubits({kA, "A'", kB, kC1, kC2});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ESBox box = (seed % 2) ? twirled_box(random_es_box(4, seed))
                                 : random_es_box(8, seed);
    const StateVector psi = random_pure(wide, rng);
    const BoxRun fast = apply_box(box, psi);
    const BoxRun dense = apply_box(box, to_density(psi));
    CHECK(trace_distance(fast.output, dense.output) <= 1e-12);
    CHECK((fast.outcome_probs - dense.outcome_probs).cwiseAbs().maxCoeff() <=
          1e-12);
  }
  const SubPrimitiveBox sub = ghz_box();
  const StateVector canon = canonical_input();
  CHECK(trace_distance(apply_box(sub, canon).output,
                       apply_box(sub, to_density(canon)).output) <= 1e-12);
}

TEST_CASE("measured input can only yield separable output") {
  const DensityMatrix decohered =
      dephase_charlie(to_density(canonical_input()));
  for (const bool twirl_flag : {false, true}) {
    ESBox box = teleportation_box();
    if (twirl_flag) box = twirled_box(std::move(box));
    const DensityMatrix out = apply_box(box, decohered).output;
    CHECK(fidelity(out, bell_state(0, kA, kB)) <= 0.5 + 1e-10);
  }
}

TEST_CASE("maximally mixed input maps to maximally mixed output") {
  const Register in_reg = Register::qubits({kA, kB, kC1, kC2});
  const DensityMatrix mixed{Matrix::Identity(16, 16) / 16.0, in_reg};
  const DensityMatrix out = apply_box(teleportation_box(), mixed).output;
  CHECK((out.mat - Matrix::Identity(4, 4) / 4.0).norm() <= 1e-12);
}

TEST_CASE("phase encodings produce orthogonal outputs for every box") {
  const StateVector canon = canonical_input();
  const StateVector encoded = apply(UnitaryOp{pauli_z(), {kC1}}, canon);
  const StateVector target = bell_state(0, kA, kB);

  std::vector<ESBox> family{teleportation_box(),
                            twirled_box(teleportation_box())};
  for (std::uint64_t seed = 20; seed < 35; ++seed) {
    family.push_back(random_es_box(4, seed));
    family.push_back(random_es_box(8, seed));
    family.push_back(twirled_box(random_es_box(4, seed + 1000)));
  }
  for (const ESBox& box : family) {
    const DensityMatrix out = apply_box(box, to_density(encoded)).output;
    CHECK(fidelity(out, target) <= 1e-10);
  }
}

TEST_CASE("pre-correction ensemble averages to the input marginal") {
  const Ensemble ens =
      branch_ensemble(teleportation_box(), to_density(canonical_input()));
  REQUIRE(ens.entries.size() == 4);
  CHECK((ens.average().mat - Matrix::Identity(4, 4) / 4.0).norm() <= 1e-12);
  for (const auto& e : ens.entries) {
    CHECK(e.p == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(vn_entropy(e.state) <= 1e-9);  // each member is pure
  }
}

TEST_CASE("ghz box builds the three-party state for one bit") {
  const SubPrimitiveBox box = ghz_box();
  CHECK(validate_sub_box(box).all_pass());

  const BoxRun run = apply_box(box, canonical_box_input(AnyBox{box}));
  CHECK(fidelity(run.output, ghz_state(kA, kB, kC1)) >= 1.0 - 1e-10);
  CHECK(run.transcript.broadcast_bits == 1);
  CHECK(run.transcript.outcome_entropy_bits == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(run.outcome_probs(0) == doctest::Approx(0.5).epsilon(1e-12));

  Matrix corr = Matrix::Zero(4, 4);
  corr(0, 0) = 0.5;
  corr(3, 3) = 0.5;
  CHECK((partial_trace(run.output, {kA, kB}).mat - corr).norm() <= 1e-12);

  // Charlie randomizing his side cannot move the AB marginal off 1/4
  const Register in_reg = Register::qubits({kA, kB, kC1, kC2});
  const DensityMatrix mixed{Matrix::Identity(16, 16) / 16.0, in_reg};
  const DensityMatrix out_ab =
      partial_trace(apply_box(box, mixed).output, {kA, kB});
  CHECK((out_ab.mat - Matrix::Identity(4, 4) / 4.0).norm() <= 1e-12);
}

TEST_CASE("bell-from-ghz box recovers the pair for one bit") {
  const SubPrimitiveBox box = bell_from_ghz_box();
  CHECK(validate_sub_box(box).all_pass());

  const DensityMatrix ghz_in = to_density(ghz_state(kA, kB, kC));
  const BoxRun run = apply_box(box, ghz_in);
  CHECK(fidelity(run.output, bell_state(0, kA, kB)) >= 1.0 - 1e-10);
  CHECK(run.transcript.broadcast_bits == 1);
  CHECK(run.transcript.outcome_entropy_bits == doctest::Approx(1.0).epsilon(1e-12));

  // a phase flip at Charlie lands both branches on the orthogonal pair
  const DensityMatrix flipped = apply(
      UnitaryOp{pauli_z(), {kC}}, ghz_in);
  const DensityMatrix out = apply_box(box, flipped).output;
  CHECK(fidelity(out, bell_state(0, kA, kB)) <= 1e-12);
  CHECK(fidelity(out, bell_state(1, kA, kB)) >= 1.0 - 1e-12);
}
