/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/boxes.hpp"

#include <cmath>
#include <stdexcept>

#include "esbox/entropy.hpp"
#include "esbox/random.hpp"

namespace esbox::boxes {

namespace {

Matrix pauli(int which) {
  Matrix m(2, 2);
  switch (which) {
    case 0: m << 1, 0, 0, 1; break;          // 1
    case 1: m << 1, 0, 0, -1; break;         // Z
    case 2: m << 0, 1, 1, 0; break;          // X
    default: m << 0, -1, 1, 0; break;        // XZ
  }
  return m;
}

Vector basis_vector(std::int64_t dim, std::int64_t k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

Matrix bell_projector(const Register& two_qubits) {
  const StateVector psi = bell_state(0, two_qubits.factor(0).label,
                                     two_qubits.factor(1).label);
  return psi.amps * psi.amps.adjoint();
}

int bits_for(std::size_t n_outcomes) {
  int bits = 0;
  std::size_t cap = 1;
  while (cap < n_outcomes) {
    cap *= 2;
    ++bits;
  }
  return bits;
}

}  // namespace

StateVector bell_state(int which, const std::string& l0, const std::string& l1) {
  if (which < 0 || which > 3) throw std::invalid_argument("bell_state: which must be 0..3");
  Vector amps(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0: amps << s, 0, 0, s; break;   // (|00> + |11>)/sqrt2
    case 1: amps << s, 0, 0, -s; break;  // (1 ⊗ Z)
    case 2: amps << 0, s, s, 0; break;   // (1 ⊗ X)
    default: amps << 0, s, -s, 0; break; // (1 ⊗ XZ)
  }
  return {amps, Register::qubits({l0, l1})};
}

StateVector ghz_state(const std::string& l0, const std::string& l1,
                      const std::string& l2) {
  Vector amps = Vector::Zero(8);
  const double s = 1.0 / std::sqrt(2.0);
  amps(0) = s;
  amps(7) = s;
  return {amps, Register::qubits({l0, l1, l2})};
}

StateVector canonical_input() {
  const StateVector pair_ac = bell_state(0, kA, kC1);
  const StateVector pair_bc = bell_state(0, kB, kC2);
  const std::vector<std::string> order{kA, kB, kC1, kC2};
  return permute(tensor(pair_ac, pair_bc), order);
}

ESBox teleportation_box() {
  ESBox box;
  box.id = "teleport";
  for (int k = 0; k < 4; ++k) {
    Branch br;
    br.e_c = basis_vector(4, k) * bell_state(k, kC1, kC2).amps.adjoint();
    br.u_a = pauli(k);
    br.u_b = Matrix::Identity(2, 2);
    box.branches.push_back(std::move(br));
  }
  return box;
}

ESBox twirled_box(ESBox inner) {
  const ValidationReport report = validate_es_box(inner);
  if (!report.all_pass())
    throw std::invalid_argument("twirled_box: inner box does not validate");
  inner.post_twirl = true;
  inner.id = "twirled-" + inner.id;
  return inner;
}

ESBox random_es_box(int n_outcomes, std::uint64_t seed) {
  if (n_outcomes != 4 && n_outcomes != 8)
    throw std::invalid_argument("random_es_box: n_outcomes must be 4 or 8");
  Rng rng(seed);
  const int n_bases = n_outcomes / 4;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_bases));

  const StateVector canon = canonical_input();
  ESBox box;
  box.id = (n_outcomes == 4 ? "random4" : "random8");

  for (int m = 0; m < n_bases; ++m) {
    const Matrix w1 = haar_unitary(2, rng);
    const Matrix w2 = haar_unitary(2, rng);
    Matrix local(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) local.block(i * 2, j * 2, 2, 2) = w1(i, j) * w2;

    for (int i = 0; i < 4; ++i) {
      const Vector rotated = local * bell_state(i, kC1, kC2).amps;
      Branch br;
      br.e_c = scale * basis_vector(4, i) * rotated.adjoint();

      // Correction from the canonical action: the post-measurement AB state
      // is maximally entangled, so undoing its one-sided factor restores
      // |Psi+>.
      const Matrix e_full = embed_operator(br.e_c, std::vector<std::string>{kC1, kC2},
                                           canon.reg);
      const Vector chi = e_full * canon.amps;
      Vector psi_ab = Vector::Zero(4);
      for (int ab = 0; ab < 4; ++ab)
        psi_ab(ab) = chi(ab * 4 + i);  // Charlie's post-measurement state is |i>
      psi_ab.normalize();
      const auto factor =
          max_entangled_factor(StateVector{psi_ab, Register::qubits({kA, kB})});
      if (!factor)
        throw std::logic_error("random_es_box: branch state not maximally entangled");
      br.u_a = fix_global_phase(factor->mat.adjoint());
      br.u_b = Matrix::Identity(2, 2);
      box.branches.push_back(std::move(br));
    }
  }
  return box;
}

DensityMatrix twirl(const DensityMatrix& sigma) {
  if (sigma.dim() != 4 || sigma.reg.size() != 2)
    throw std::invalid_argument("twirl: expects a two-qubit state");
  const Matrix proj = bell_projector(sigma.reg);
  const double f = (proj * sigma.mat).trace().real();
  Matrix out = f * proj + (1.0 - f) / 3.0 * (Matrix::Identity(4, 4) - proj);
  return {out, sigma.reg};
}

DensityMatrix twirl_on(const DensityMatrix& rho, const std::string& a,
                       const std::string& b) {
  if (rho.reg.size() == 2) return twirl(rho);

  // Extension of the isotropic projection by the identity on the remaining
  // factors: with T(X) = sum_k Tr(B_k X) A_k,
  //   (T ⊗ id)(Y) = sum_k A_k ⊗ Tr_ab[(B_k ⊗ 1) Y].
  std::vector<std::string> order{a, b};
  for (const auto& l : rho.reg.labels())
    if (l != a && l != b) order.push_back(l);
  const DensityMatrix sigma = permute(rho, order);

  const std::int64_t rest_dim = rho.dim() / 4;
  const Matrix proj = bell_projector(sigma.reg.subset(std::vector<std::string>{a, b}));
  const Matrix anti = Matrix::Identity(4, 4) - proj;

  Matrix y_sym = Matrix::Zero(rest_dim, rest_dim);
  Matrix y_anti = Matrix::Zero(rest_dim, rest_dim);
  for (int k = 0; k < 4; ++k)
    for (int m = 0; m < 4; ++m) {
      const auto block = sigma.mat.block(k * rest_dim, m * rest_dim, rest_dim, rest_dim);
      if (proj(m, k) != 0.0) y_sym += proj(m, k) * block;
      if (anti(m, k) != 0.0) y_anti += anti(m, k) * block;
    }

  Matrix out(rho.dim(), rho.dim());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.block(i * rest_dim, j * rest_dim, rest_dim, rest_dim) =
          proj(i, j) * y_sym + anti(i, j) / 3.0 * y_anti;

  const auto original = rho.reg.labels();
  return permute(DensityMatrix{out, sigma.reg}, original);
}

namespace {

struct PreparedBranch {
  Matrix kraus_full;  // on the input register
  Matrix corr_full;   // on the reduced (post-trace) register
};

struct PreparedBox {
  std::vector<PreparedBranch> branches;
  std::vector<std::string> keep;
  Register out_reg;
  IndexSplit split;  // input register viewed as (keep ⊗ traced)
  bool twirl = false;
};

PreparedBox prepare(const std::vector<Matrix>& kraus,
                    const std::vector<Matrix>& corr_a,
                    const std::vector<Matrix>& corr_b,
                    const std::vector<std::string>& c_labels,
                    const std::vector<std::string>& traced, bool twirled,
                    const Register& reg) {
  for (const auto& l : c_labels)
    if (!reg.has_label(l))
      throw std::invalid_argument("apply_box: register is missing label '" + l + "'");
  if (!reg.has_label(kA) || !reg.has_label(kB))
    throw std::invalid_argument("apply_box: register is missing A or B");

  PreparedBox out;
  out.twirl = twirled;
  out.keep = reg.complement(traced).labels();
  out.out_reg = reg.subset(out.keep);
  out.split = split_register(reg, out.keep);
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    PreparedBranch br;
    br.kraus_full = embed_operator(kraus[i], c_labels, reg);
    br.corr_full = embed_operator(corr_a[i], std::vector<std::string>{kA}, out.out_reg) *
                   embed_operator(corr_b[i], std::vector<std::string>{kB}, out.out_reg);
    out.branches.push_back(std::move(br));
  }
  return out;
}

BoxRun finish_run(const PreparedBox& box, Matrix acc, Eigen::VectorXd probs) {
  DensityMatrix output{std::move(acc), box.out_reg};
  if (box.twirl) output = twirl_on(output, kA, kB);

  BoxRun run{std::move(output), std::move(probs), {}};
  run.transcript.broadcast_bits = bits_for(box.branches.size());
  run.transcript.outcome_entropy_bits = shannon_entropy(run.outcome_probs, 1e-8);
  return run;
}

BoxRun run_prepared(const PreparedBox& box, const DensityMatrix& rho) {
  const std::int64_t out_dim = box.out_reg.total_dim();
  Matrix acc = Matrix::Zero(out_dim, out_dim);
  Eigen::VectorXd probs(static_cast<Eigen::Index>(box.branches.size()));

  for (std::size_t i = 0; i < box.branches.size(); ++i) {
    const auto& br = box.branches[i];
    const Matrix post = br.kraus_full * rho.mat * br.kraus_full.adjoint();
    const double p = std::max(post.trace().real(), 0.0);
    probs(static_cast<Eigen::Index>(i)) = p;
    if (p < 1e-15) continue;
    const DensityMatrix reduced =
        partial_trace(DensityMatrix{post, rho.reg}, box.keep);
    acc += br.corr_full * reduced.mat * br.corr_full.adjoint();
  }
  return finish_run(box, std::move(acc), std::move(probs));
}

BoxRun run_prepared(const PreparedBox& box, const StateVector& psi) {
  const std::int64_t out_dim = box.out_reg.total_dim();
  Matrix acc = Matrix::Zero(out_dim, out_dim);
  Matrix reduced(out_dim, out_dim);
  Eigen::VectorXd probs(static_cast<Eigen::Index>(box.branches.size()));

  // Group input rows sharing a traced index; the branch amplitude vector
  // w = K psi reduces to sum_t w_t w_t† over the per-group slices.
  std::vector<std::vector<std::int64_t>> groups(box.split.rest_dim);
  for (std::int64_t i = 0; i < psi.dim(); ++i)
    groups[box.split.rest[i]].push_back(i);

  for (std::size_t i = 0; i < box.branches.size(); ++i) {
    const auto& br = box.branches[i];
    const Vector w = br.kraus_full * psi.amps;
    const double p = w.squaredNorm();
    probs(static_cast<Eigen::Index>(i)) = p;
    if (p < 1e-15) continue;
    reduced.setZero();
    for (const auto& g : groups)
      for (const auto r : g)
        for (const auto c : g)
          reduced(box.split.sub[r], box.split.sub[c]) += w(r) * std::conj(w(c));
    acc += br.corr_full * reduced * br.corr_full.adjoint();
  }
  return finish_run(box, std::move(acc), std::move(probs));
}

PreparedBox prepare_es(const ESBox& box, const Register& reg) {
  if (box.branches.empty()) throw std::invalid_argument("apply_box: box has no branches");
  std::vector<Matrix> kraus, ca, cb;
  for (const auto& br : box.branches) {
    kraus.push_back(br.e_c);
    ca.push_back(br.u_a);
    cb.push_back(br.u_b);
  }
  return prepare(kraus, ca, cb, {kC1, kC2}, {kC1, kC2}, box.post_twirl, reg);
}

PreparedBox prepare_sub(const SubPrimitiveBox& box, const Register& reg) {
  if (box.branches.empty()) throw std::invalid_argument("apply_box: box has no branches");
  std::vector<Matrix> kraus, ca, cb;
  for (const auto& br : box.branches) {
    kraus.push_back(br.kraus);
    ca.push_back(br.u_a);
    cb.push_back(br.u_b);
  }
  return prepare(kraus, ca, cb, box.c_labels, box.traced_labels, false, reg);
}

}  // namespace

BoxRun apply_box(const ESBox& box, const DensityMatrix& rho) {
  return run_prepared(prepare_es(box, rho.reg), rho);
}

BoxRun apply_box(const SubPrimitiveBox& box, const DensityMatrix& rho) {
  return run_prepared(prepare_sub(box, rho.reg), rho);
}

BoxRun apply_box(const AnyBox& box, const DensityMatrix& rho) {
  return std::visit([&](const auto& b) { return apply_box(b, rho); }, box);
}

BoxRun apply_box(const ESBox& box, const StateVector& psi) {
  return run_prepared(prepare_es(box, psi.reg), psi);
}

BoxRun apply_box(const SubPrimitiveBox& box, const StateVector& psi) {
  return run_prepared(prepare_sub(box, psi.reg), psi);
}

BoxRun apply_box(const AnyBox& box, const StateVector& psi) {
  return std::visit([&](const auto& b) { return apply_box(b, psi); }, box);
}

Ensemble branch_ensemble(const ESBox& box, const DensityMatrix& rho) {
  if (box.branches.empty()) throw std::invalid_argument("branch_ensemble: box has no branches");
  const std::vector<std::string> c_labels{kC1, kC2};
  const auto keep = rho.reg.complement(c_labels).labels();

  Ensemble ensemble;
  for (const auto& br : box.branches) {
    const Matrix e_full = embed_operator(br.e_c, c_labels, rho.reg);
    const Matrix post = e_full * rho.mat * e_full.adjoint();
    const double p = std::max(post.trace().real(), 0.0);
    if (p < 1e-12) continue;
    DensityMatrix reduced = partial_trace(DensityMatrix{post, rho.reg}, keep);
    reduced.mat /= p;
    ensemble.entries.push_back({p, std::move(reduced)});
  }
  return ensemble;
}

SubPrimitiveBox ghz_box() {
  SubPrimitiveBox box;
  box.kind = SubPrimitiveKind::GhzFromTwoEpr;
  box.id = "ghz";
  box.c_labels = {kC1, kC2};
  box.traced_labels = {kC2};

  Matrix cnot = Matrix::Zero(4, 4);  // control C1, target C2
  cnot(0, 0) = 1;
  cnot(1, 1) = 1;
  cnot(2, 3) = 1;
  cnot(3, 2) = 1;

  for (int m = 0; m < 2; ++m) {
    Matrix proj = Matrix::Zero(4, 4);  // |m><m| on C2
    proj(m, m) = 1;
    proj(2 + m, 2 + m) = 1;
    SubBranch br;
    br.kraus = proj * cnot;
    br.u_a = Matrix::Identity(2, 2);
    br.u_b = (m == 0) ? Matrix::Identity(2, 2) : pauli(2);  // X on outcome 1
    box.branches.push_back(std::move(br));
  }
  return box;
}

SubPrimitiveBox bell_from_ghz_box() {
  SubPrimitiveBox box;
  box.kind = SubPrimitiveKind::BellFromGhz;
  box.id = "bell-from-ghz";
  box.c_labels = {kC};
  box.traced_labels = {kC};

  for (int m = 0; m < 2; ++m) {
    Vector plus_minus(2);
    plus_minus << 1.0 / std::sqrt(2.0), (m == 0 ? 1.0 : -1.0) / std::sqrt(2.0);
    SubBranch br;
    br.kraus = plus_minus * plus_minus.adjoint();
    br.u_a = (m == 0) ? Matrix::Identity(2, 2) : pauli(1);  // Z on the minus outcome
    br.u_b = Matrix::Identity(2, 2);
    box.branches.push_back(std::move(br));
  }
  return box;
}

DensityMatrix canonical_box_input(const AnyBox& box) {
  if (const auto* sub = std::get_if<SubPrimitiveBox>(&box);
      sub && sub->kind == SubPrimitiveKind::BellFromGhz)
    return to_density(ghz_state(kA, kB, kC));
  return to_density(canonical_input());
}

const std::string& box_id(const AnyBox& box) {
  return std::visit([](const auto& b) -> const std::string& { return b.id; }, box);
}

bool is_twirled(const AnyBox& box) {
  const auto* es = std::get_if<ESBox>(&box);
  return es != nullptr && es->post_twirl;
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

const ValidationCheck& ValidationReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::invalid_argument("ValidationReport: no check named '" + name + "'");
}

ValidationReport validate_es_box(const ESBox& box) {
  ValidationReport report;

  double rank_residual = 0.0;
  double entangled_residual = 0.0;
  double unitary_residual = 0.0;
  Matrix completeness = Matrix::Zero(4, 4);

  for (const auto& br : box.branches) {
    Eigen::JacobiSVD<Matrix> svd(br.e_c, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv.size() > 1) rank_residual = std::max(rank_residual, sv(1));

    const Vector right = svd.matrixV().col(0);
    Matrix folded(2, 2);
    folded << right(0), right(1), right(2), right(3);
    folded *= std::sqrt(2.0);
    entangled_residual = std::max(
        entangled_residual,
        (folded.adjoint() * folded - Matrix::Identity(2, 2)).norm());

    unitary_residual = std::max(
        unitary_residual,
        (br.u_a.adjoint() * br.u_a - Matrix::Identity(2, 2)).norm());
    unitary_residual = std::max(
        unitary_residual,
        (br.u_b.adjoint() * br.u_b - Matrix::Identity(2, 2)).norm());

    completeness += br.e_c.adjoint() * br.e_c;
  }
  const double completeness_residual =
      (completeness - Matrix::Identity(4, 4)).norm();

  report.checks.push_back({"rank_one", rank_residual <= kTolAlgebra, rank_residual});
  report.checks.push_back(
      {"max_entangled", entangled_residual <= kTolAlgebra, entangled_residual});
  report.checks.push_back(
      {"completeness", completeness_residual <= kTolAlgebra, completeness_residual});
  report.checks.push_back({"unitary", unitary_residual <= kTolAlgebra, unitary_residual});

  double canonical_residual = 1.0;
  try {
    const BoxRun run = apply_box(box, to_density(canonical_input()));
    canonical_residual = 1.0 - fidelity(run.output, bell_state(0, kA, kB));
  } catch (const std::exception&) {
    // unusable box; leave the worst-case residual
  }
  report.checks.push_back(
      {"canonical", canonical_residual <= kTolDerived, canonical_residual});
  return report;
}

ValidationReport validate_sub_box(const SubPrimitiveBox& box) {
  ValidationReport report;

  Matrix completeness = Matrix::Zero(box.branches.front().kraus.rows(),
                                     box.branches.front().kraus.cols());
  for (const auto& br : box.branches) completeness += br.kraus.adjoint() * br.kraus;
  const double completeness_residual =
      (completeness - Matrix::Identity(completeness.rows(), completeness.cols())).norm();
  report.checks.push_back(
      {"completeness", completeness_residual <= kTolAlgebra, completeness_residual});

  const BoxRun run = apply_box(box, canonical_box_input(AnyBox{box}));
  const StateVector target = (box.kind == SubPrimitiveKind::GhzFromTwoEpr)
                                 ? ghz_state(kA, kB, kC1)
                                 : bell_state(0, kA, kB);
  const double canonical_residual = 1.0 - fidelity(run.output, target);
  report.checks.push_back(
      {"canonical", canonical_residual <= kTolAlgebra, canonical_residual});

  double uniform_residual = 0.0;
  for (Eigen::Index i = 0; i < run.outcome_probs.size(); ++i)
    uniform_residual = std::max(uniform_residual,
                                std::abs(run.outcome_probs(i) - 0.5));
  report.checks.push_back({"outcome_uniform", uniform_residual <= kTolAlgebra,
                           uniform_residual});
  report.checks.push_back({"one_bit_broadcast", run.transcript.broadcast_bits == 1,
                           std::abs(run.transcript.broadcast_bits - 1.0)});
  return report;
}

ValidationReport validate_box(const AnyBox& box) {
  if (const auto* es = std::get_if<ESBox>(&box)) return validate_es_box(*es);
  return validate_sub_box(std::get<SubPrimitiveBox>(box));
}

}  // namespace esbox::boxes
