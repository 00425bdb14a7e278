/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/comm.hpp"

#include <algorithm>
#include <cmath>

#include "esbox/ops.hpp"
#include "esbox/random.hpp"

namespace esbox::comm {

namespace {

using boxes::kA;
using boxes::kAncilla;
using boxes::kB;
using boxes::kC;
using boxes::kC1;
using boxes::kC2;
using boxes::kEnv;

const std::vector<std::string> kPartA{kA};
const std::vector<std::string> kPartB{kB};

Matrix pauli_matrix(int which) {
  Matrix m(2, 2);
  switch (which) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 1, 0, 0, -1; break;
    case 2: m << 0, 1, 1, 0; break;
    default: m << 0, -1, 1, 0; break;
  }
  return m;
}

std::string free_flag_label(const Register& reg) {
  std::string label = "R";
  while (reg.has_label(label)) label += "'";
  return label;
}

}  // namespace

EnsembleGap ensemble_gap(const Ensemble& ensemble,
                         std::span<const std::string> part_a,
                         std::span<const std::string> part_b) {
  ensemble.check_valid();

  EnsembleGap gap;
  const DensityMatrix avg = ensemble.average();
  for (const auto& e : ensemble.entries) {
    gap.delta_mutual_info += e.p * mutual_information(e.state, part_a, part_b);
    gap.delta_entropy -= e.p * vn_entropy(e.state);
  }
  gap.delta_mutual_info -= mutual_information(avg, part_a, part_b);
  gap.delta_entropy += vn_entropy(avg);

  // Classically flagged extension rho_ABR; the flag dimension is padded to
  // at least 2 so it remains a valid register factor.
  const std::int64_t n = static_cast<std::int64_t>(ensemble.entries.size());
  const std::int64_t flag_dim = std::max<std::int64_t>(n, 2);
  const Register base = ensemble.entries.front().state.reg;
  const std::string flag = free_flag_label(base);
  const Register ext_reg = base.concat(Register({{flag, flag_dim}}));

  const std::int64_t d = base.total_dim();
  Matrix ext = Matrix::Zero(d * flag_dim, d * flag_dim);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& e = ensemble.entries[static_cast<std::size_t>(i)];
    for (std::int64_t r = 0; r < d; ++r)
      for (std::int64_t c = 0; c < d; ++c)
        ext(r * flag_dim + i, c * flag_dim + i) = e.p * e.state.mat(r, c);
  }
  const DensityMatrix rho_ext{ext, ext_reg};

  const std::vector<std::string> flag_part{flag};
  std::vector<std::string> keep_ar(part_a.begin(), part_a.end());
  keep_ar.push_back(flag);
  std::vector<std::string> keep_br(part_b.begin(), part_b.end());
  keep_br.push_back(flag);

  const double i_ar =
      mutual_information(partial_trace(rho_ext, keep_ar), part_a, flag_part);
  const double i_br =
      mutual_information(partial_trace(rho_ext, keep_br), part_b, flag_part);
  gap.identity_residual =
      std::abs(gap.delta_mutual_info - gap.delta_entropy + i_ar + i_br);
  return gap;
}

CcChain cc_lower_bound(const ESBox& box) {
  const DensityMatrix canon = boxes::canonical_box_input(AnyBox{box});
  const boxes::BoxRun run = boxes::apply_box(box, canon);

  // The broadcast disambiguates the pre-correction ensemble at AB.
  const Ensemble ens = boxes::branch_ensemble(box, canon);
  const EnsembleGap gap = ensemble_gap(ens, kPartA, kPartB);

  CcChain chain;
  chain.outcome_entropy_bits = run.transcript.outcome_entropy_bits;
  chain.delta_entropy = gap.delta_entropy;
  chain.delta_mutual_info = gap.delta_mutual_info;
  chain.chain_checked = true;
  chain.max_link_violation =
      std::max({gap.delta_entropy - chain.outcome_entropy_bits,
                gap.delta_mutual_info - gap.delta_entropy,
                std::abs(gap.delta_mutual_info - 2.0)});
  chain.chain_ok = chain.max_link_violation <= kTolDerived;
  return chain;
}

CcChain cc_lower_bound(const SubPrimitiveBox& box) {
  const boxes::BoxRun run =
      boxes::apply_box(box, boxes::canonical_box_input(AnyBox{box}));
  CcChain chain;
  chain.outcome_entropy_bits = run.transcript.outcome_entropy_bits;
  return chain;
}

CcChain cc_lower_bound(const AnyBox& box) {
  if (const auto* es = std::get_if<ESBox>(&box)) return cc_lower_bound(*es);
  return cc_lower_bound(std::get<SubPrimitiveBox>(box));
}

PhaseSignal phase_signal_protocol(const ESBox& box) {
  const StateVector canon = boxes::canonical_input();
  const UnitaryOp z_c1{pauli_matrix(1), {kC1}};

  const DensityMatrix rho0 = boxes::apply_box(box, to_density(canon)).output;
  const DensityMatrix rho1 =
      boxes::apply_box(box, to_density(apply(z_c1, canon))).output;

  const StateVector target = boxes::bell_state(0, kA, kB);

  PhaseSignal sig;
  sig.orthogonality_residual = std::abs(fidelity(rho1, target));

  // Binary channel induced by the joint {P+, 1 - P+} measurement.
  const double q0 = fidelity(rho0, target);
  const double q1 = fidelity(rho1, target);
  Eigen::MatrixXd joint(2, 2);
  joint << 0.5 * q0, 0.5 * (1.0 - q0), 0.5 * q1, 0.5 * (1.0 - q1);
  sig.accessible_bits = classical_mutual_information(joint);

  Ensemble pair;
  pair.entries.push_back({0.5, rho0});
  pair.entries.push_back({0.5, rho1});
  sig.holevo_bits = holevo(pair);
  return sig;
}

namespace {

// Worst-case defect of the untwirled branch structure against the
// teleportation contract |Psi+>_{AC1} |psi>_B |phi>_{C2} -> |phi>_A |psi>_B.
double teleport_contract_defect(const ESBox& box, int trials, std::uint64_t seed) {
  ESBox base = box;
  base.post_twirl = false;

  Rng rng(seed);
  const Register reg_b = Register::qubits({kB});
  const Register reg_c2 = Register::qubits({kC2});
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const StateVector psi_b = random_pure(reg_b, rng);
    const StateVector phi_c2 = random_pure(reg_c2, rng);
    const StateVector input =
        tensor(boxes::bell_state(0, kA, kC1), tensor(psi_b, phi_c2));
    const DensityMatrix out = boxes::apply_box(base, to_density(input)).output;

    const StateVector phi_a{phi_c2.amps, Register::qubits({kA})};
    const StateVector expected = tensor(phi_a, psi_b);
    worst = std::max(worst, 1.0 - fidelity(out, expected));
  }
  return worst;
}

}  // namespace

DenseCoding dense_coding_value(const ESBox& box, int n_messages) {
  if (n_messages != 2 && n_messages != 4)
    throw std::invalid_argument("dense_coding_value: n_messages must be 2 or 4");
  const double defect = teleport_contract_defect(box, 8, 0x7e1e50de);
  if (defect > kTolDerived)
    throw ProtocolInapplicable(
        "dense_coding_value: box does not satisfy the teleportation contract "
        "(defect " +
        std::to_string(defect) + ")");

  // |Psi+>_{AC1} |0>_B |Psi+>_{A'C2}, register [A, A', B, C1, C2].
  Vector zero(2);
  zero << 1, 0;
  const StateVector base_state = [&] {
    const StateVector raw =
        tensor(boxes::bell_state(0, kA, kC1),
               tensor(StateVector{zero, Register::qubits({kB})},
                      boxes::bell_state(0, kAncilla, kC2)));
    const std::vector<std::string> order{kA, kAncilla, kB, kC1, kC2};
    return permute(raw, order);
  }();

  std::vector<Matrix> decoders;  // Bell projectors on [A', A]
  for (int k = 0; k < 4; ++k) {
    const StateVector b = boxes::bell_state(k, kAncilla, kA);
    decoders.push_back(b.amps * b.amps.adjoint());
  }

  DenseCoding result;
  result.confusion = Eigen::MatrixXd::Zero(n_messages, 4);
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(n_messages, 4);
  const std::vector<std::string> pair_labels{kAncilla, kA};
  for (int m = 0; m < n_messages; ++m) {
    const UnitaryOp encode{pauli_matrix(m), {kC2}};
    const DensityMatrix out =
        boxes::apply_box(box, to_density(apply(encode, base_state))).output;
    for (int k = 0; k < 4; ++k) {
      const Matrix proj = embed_operator(decoders[k], pair_labels, out.reg);
      const double p = std::max((proj * out.mat).trace().real(), 0.0);
      result.confusion(m, k) = p;
      joint(m, k) = p / n_messages;
    }
  }
  result.bits = classical_mutual_information(joint);
  return result;
}

// ---------------------------------------------------------------------------
// Capacity objective and its maximization
// ---------------------------------------------------------------------------

namespace {

double entropy_of_eigenvalues(const Eigen::VectorXd& vals) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals(i) > 1e-12) s -= vals(i) * std::log2(vals(i));
  return s;
}

double matrix_entropy(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  return entropy_of_eigenvalues(es.eigenvalues());
}

Register box_input_register(const AnyBox& box) {
  if (const auto* sub = std::get_if<SubPrimitiveBox>(&box);
      sub && sub->kind == boxes::SubPrimitiveKind::BellFromGhz)
    return Register::qubits({kA, kB, kC});
  return Register::qubits({kA, kB, kC1, kC2});
}

// The box as a plain channel: proper Kraus operators from the input space to
// the output space (corrections and the trace over Charlie's leftover factor
// folded in), plus the composition with the twirl where requested. The
// entropy-exchange term of the capacity objective is evaluated through the
// complementary channel C(rho)_{mn} = Tr(K_m rho K_n†), whose output entropy
// equals the entropy of (channel ⊗ id_E) applied to any purification.
struct FastChannel {
  Register in_reg;
  Register out_reg;
  std::int64_t in_dim = 0;
  std::int64_t out_dim = 0;
  bool twirl = false;
  std::vector<Matrix> kraus;     // pre-twirl, out_dim x in_dim
  std::vector<Matrix> composed;  // twirl folded in; = kraus when untwirled
  Matrix comp_stack;             // composed Kraus stacked row-blocks
  Vector bell;                   // |Psi+> on the leading AB pair (out_dim == 4)
};

// Kraus decomposition of the isotropic projection on two qubits, from the
// eigendecomposition of its Choi matrix (rank 10).
std::vector<Matrix> twirl_kraus() {
  const StateVector psi = boxes::bell_state(0, kA, kB);
  const Matrix proj = psi.amps * psi.amps.adjoint();
  const Matrix anti = Matrix::Identity(4, 4) - proj;

  Matrix choi = Matrix::Zero(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Matrix timg = proj(j, i) * proj +
                          ((i == j ? 1.0 : 0.0) - proj(j, i)) / 3.0 * anti;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) choi(i * 4 + r, j * 4 + c) = timg(r, c);
    }

  Eigen::SelfAdjointEigenSolver<Matrix> es((choi + choi.adjoint()) / 2.0);
  std::vector<Matrix> kraus;
  for (int g = 0; g < 16; ++g) {
    const double lam = es.eigenvalues()(g);
    if (lam < 1e-14) continue;
    Matrix k(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) k(r, c) = es.eigenvectors()(c * 4 + r, g);
    kraus.push_back(std::sqrt(lam) * k);
  }
  return kraus;
}

FastChannel make_channel(const AnyBox& box) {
  FastChannel ch;
  ch.in_reg = box_input_register(box);
  ch.in_dim = ch.in_reg.total_dim();

  std::vector<std::string> c_labels{kC1, kC2};
  std::vector<std::string> traced{kC1, kC2};
  std::vector<Matrix> kraus_c, corr_a, corr_b;

  if (const auto* es = std::get_if<ESBox>(&box)) {
    ch.twirl = es->post_twirl;
    for (const auto& br : es->branches) {
      kraus_c.push_back(br.e_c);
      corr_a.push_back(br.u_a);
      corr_b.push_back(br.u_b);
    }
  } else {
    const auto& sub = std::get<SubPrimitiveBox>(box);
    c_labels = sub.c_labels;
    traced = sub.traced_labels;
    for (const auto& br : sub.branches) {
      kraus_c.push_back(br.kraus);
      corr_a.push_back(br.u_a);
      corr_b.push_back(br.u_b);
    }
  }

  const auto keep = ch.in_reg.complement(traced).labels();
  ch.out_reg = ch.in_reg.subset(keep);
  ch.out_dim = ch.out_reg.total_dim();
  const IndexSplit split = split_register(ch.in_reg, keep);
  const std::int64_t traced_dim = split.rest_dim;

  for (std::size_t i = 0; i < kraus_c.size(); ++i) {
    const Matrix corr =
        embed_operator(corr_a[i], std::vector<std::string>{kA}, ch.in_reg) *
        embed_operator(corr_b[i], std::vector<std::string>{kB}, ch.in_reg);
    const Matrix full = corr * embed_operator(kraus_c[i], c_labels, ch.in_reg);

    // Unfold over the traced factor. In standard form Charlie's leftover
    // state is pure (rank one across t), which collapses the branch to a
    // single out_dim x in_dim Kraus operator; otherwise fall back to one
    // operator per computational row.
    Matrix unfold(traced_dim, ch.out_dim * ch.in_dim);
    for (std::int64_t i_full = 0; i_full < ch.in_dim; ++i_full)
      for (std::int64_t j = 0; j < ch.in_dim; ++j)
        unfold(split.rest[i_full], split.sub[i_full] * ch.in_dim + j) =
            full(i_full, j);

    Eigen::JacobiSVD<Matrix> svd(unfold, Eigen::ComputeThinU);
    const bool rank_one =
        svd.singularValues().size() < 2 ||
        svd.singularValues()(1) <= 1e-9 * std::max(svd.singularValues()(0), 1.0);
    if (rank_one) {
      const Vector u = svd.matrixU().col(0);
      Matrix reduced = Matrix::Zero(ch.out_dim, ch.in_dim);
      for (std::int64_t i_full = 0; i_full < ch.in_dim; ++i_full)
        for (std::int64_t j = 0; j < ch.in_dim; ++j)
          reduced(split.sub[i_full], j) +=
              std::conj(u(split.rest[i_full])) * full(i_full, j);
      ch.kraus.push_back(std::move(reduced));
    } else {
      for (std::int64_t t = 0; t < traced_dim; ++t) {
        Matrix reduced = Matrix::Zero(ch.out_dim, ch.in_dim);
        for (std::int64_t i_full = 0; i_full < ch.in_dim; ++i_full)
          if (split.rest[i_full] == t)
            reduced.row(split.sub[i_full]) = full.row(i_full);
        ch.kraus.push_back(std::move(reduced));
      }
    }
  }

  if (ch.twirl) {
    for (const auto& t : twirl_kraus())
      for (const auto& k : ch.kraus) ch.composed.push_back(t * k);
  } else {
    ch.composed = ch.kraus;
  }

  const std::int64_t m = static_cast<std::int64_t>(ch.composed.size());
  ch.comp_stack.resize(m * ch.out_dim, ch.in_dim);
  for (std::int64_t i = 0; i < m; ++i)
    ch.comp_stack.middleRows(i * ch.out_dim, ch.out_dim) = ch.composed[i];

  ch.bell = boxes::bell_state(0, kA, kB).amps;
  return ch;
}

Matrix channel_output(const FastChannel& ch, const Matrix& rho) {
  Matrix out = Matrix::Zero(ch.out_dim, ch.out_dim);
  for (const auto& k : ch.kraus) out += k * rho * k.adjoint();
  return out;
}

// Complementary-channel output C(rho)_{mn} = Tr(K_m rho K_n†).
Matrix complementary_output(const FastChannel& ch, const Matrix& rho) {
  const std::int64_t m = static_cast<std::int64_t>(ch.composed.size());
  const Matrix lrho = ch.comp_stack * rho;  // (m*out) x in
  Matrix comp(m, m);
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = a; b < m; ++b) {
      cxd v = 0.0;
      for (std::int64_t r = 0; r < ch.out_dim; ++r)
        v += lrho.row(a * ch.out_dim + r)
                 .dot(ch.comp_stack.row(b * ch.out_dim + r));
      // row(x).dot(row(y)) conjugates the left factor; flip to Tr(K_a rho K_b†)
      comp(a, b) = std::conj(v);
      comp(b, a) = v;
    }
  return comp;
}

double channel_objective_fast(const FastChannel& ch, const Matrix& rho) {
  const double s_in = matrix_entropy(rho);

  Matrix out = channel_output(ch, rho);
  double s_out;
  if (ch.twirl) {
    const double fid = (ch.bell.adjoint() * out * ch.bell)(0, 0).real();
    Eigen::VectorXd iso(4);
    iso << fid, (1.0 - fid) / 3.0, (1.0 - fid) / 3.0, (1.0 - fid) / 3.0;
    s_out = entropy_of_eigenvalues(iso);
  } else {
    s_out = matrix_entropy(out);
  }

  const double s_ext = matrix_entropy(complementary_output(ch, rho));
  return s_in + s_out - s_ext;
}

Matrix clamped_log2(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  Eigen::VectorXd logs(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < logs.size(); ++i)
    logs(i) = std::log2(std::max(es.eigenvalues()(i), 1e-18));
  return es.eigenvectors() * logs.asDiagonal() *
         es.eigenvectors().adjoint();
}

// -Lambda†(log2 Lambda(rho)) + C†(log2 C(rho)): the rho-independent-trace
// part of the gradient. The full Euclidean gradient is this minus log2(rho).
// Structural null spaces of C(rho) drop out of the adjoint, so the clamp
// constant never leaks into the result.
Matrix gradient_channel_part(const FastChannel& ch, const Matrix& rho) {
  Matrix out = channel_output(ch, rho);
  if (ch.twirl) {
    const double fid =
        std::clamp((ch.bell.adjoint() * out * ch.bell)(0, 0).real(), 0.0, 1.0);
    const Matrix proj = ch.bell * ch.bell.adjoint();
    out = std::log2(std::max(fid, 1e-18)) * proj +
          std::log2(std::max((1.0 - fid) / 3.0, 1e-18)) *
              (Matrix::Identity(4, 4) - proj);
  } else {
    out = clamped_log2(out);
  }
  Matrix grad = Matrix::Zero(ch.in_dim, ch.in_dim);
  for (const auto& k : ch.composed) grad -= k.adjoint() * out * k;

  const Matrix comp_log = clamped_log2(complementary_output(ch, rho));
  // C†(Y) = sum_{mn} Y_mn K_n† K_m, via W_m = sum_n Y_nm K_n.
  const std::int64_t m = static_cast<std::int64_t>(ch.composed.size());
  for (std::int64_t a = 0; a < m; ++a) {
    Matrix w = Matrix::Zero(ch.out_dim, ch.in_dim);
    for (std::int64_t n = 0; n < m; ++n) {
      const cxd y = comp_log(n, a);
      if (std::abs(y) > 1e-15) w += y * ch.composed[n];
    }
    grad += w.adjoint() * ch.composed[a];
  }
  return (grad + grad.adjoint()) / 2.0;
}

// Multiplicative fixed-point proposal: the stationarity condition of the
// objective is log2(rho) = G(rho) + const with G the channel part above, so
// rho' ∝ 2^G(rho) re-centers the iterate in one step and always stays full
// rank. Improvement is enforced by the caller.
Matrix fixed_point_proposal(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const double shift = es.eigenvalues().maxCoeff();
  Eigen::VectorXd weights(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    weights(i) = std::exp2(es.eigenvalues()(i) - shift);
  weights /= weights.sum();
  return es.eigenvectors() * weights.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double ea_capacity_objective(const AnyBox& box, const DensityMatrix& rho) {
  const Register in_reg = box_input_register(box);
  const DensityMatrix ordered =
      (rho.reg == in_reg) ? rho : permute(rho, in_reg.labels());

  // Purification route, exactly as stated: push the purified input through
  // the box with the environment riding along untouched.
  const double s_in = vn_entropy(ordered);
  const double s_out = vn_entropy(boxes::apply_box(box, ordered).output);
  const StateVector phi = purify(ordered, kEnv);
  const double s_ext = vn_entropy(boxes::apply_box(box, phi).output);
  return s_in + s_out - s_ext;
}

CapacityResult ea_capacity_maximize(const AnyBox& box, int restarts, int iters,
                                    std::uint64_t seed) {
  if (restarts < 1)
    throw std::invalid_argument("ea_capacity_maximize: restarts must be >= 1");
  const FastChannel ch = make_channel(box);
  const std::int64_t d = ch.in_dim;
  const double t_grid[3] = {0.5, 0.1, 0.02};
  // Stop once the ascent certificate puts the remaining headroom below this.
  constexpr double kGapExit = 1e-10;

  Rng master(seed);
  CapacityResult best;
  best.iterations = iters;
  best.value_bits = -1.0;

  bool certified = false;
  for (int r = 0; r < restarts && !certified; ++r) {
    Rng rng(master());
    Matrix rho = random_density(ch.in_reg, d, rng).mat;
    double f = channel_objective_fast(ch, rho);

    const int tail_start = iters - std::max(iters / 10, 1);
    double tail_gain = 0.0;
    double certificate_gap = 1e100;
    int stalled = 0;

    for (int it = 0; it < iters; ++it) {
      double best_f = f;
      double best_t = 0.0;
      const Matrix* best_dir = nullptr;

      // Random mixing proposal over the coarse t grid.
      const StateVector sigma = random_pure(ch.in_reg, rng);
      const Matrix rand_dir = sigma.amps * sigma.amps.adjoint();
      for (const double t : t_grid) {
        const double ft = channel_objective_fast(ch, (1.0 - t) * rho + t * rand_dir);
        if (ft > best_f) {
          best_f = ft;
          best_t = t;
          best_dir = &rand_dir;
        }
      }

      // Fixed-point proposal, plus the ascent certificate: by concavity
      // f* <= f + lambda_max(grad) - <grad, rho>.
      const Matrix g_part = gradient_channel_part(ch, rho);
      const Matrix grad = g_part - clamped_log2(rho);
      Eigen::SelfAdjointEigenSolver<Matrix> ges(grad);
      certificate_gap =
          ges.eigenvalues()(d - 1) - (grad * rho).trace().real();

      const Matrix ba_dir = fixed_point_proposal(g_part);
      for (const double t : {1.0, 0.5, 0.1}) {
        const double ft = channel_objective_fast(ch, (1.0 - t) * rho + t * ba_dir);
        if (ft > best_f) {
          best_f = ft;
          best_t = t;
          best_dir = &ba_dir;
        }
      }

      if (best_dir != nullptr) {
        // Concave along the chord: ternary refinement of the step.
        auto value_at = [&](double t) {
          return channel_objective_fast(ch, (1.0 - t) * rho + t * *best_dir);
        };
        double lo = 0.0, hi = std::min(1.0, 2.0 * best_t);
        for (int probe = 0; probe < 10; ++probe) {
          const double m1 = lo + (hi - lo) / 3.0;
          const double m2 = hi - (hi - lo) / 3.0;
          const double f1 = value_at(m1);
          const double f2 = value_at(m2);
          if (f1 > best_f) { best_f = f1; best_t = m1; }
          if (f2 > best_f) { best_f = f2; best_t = m2; }
          if (f1 < f2) lo = m1; else hi = m2;
        }
        if (it >= tail_start) tail_gain += best_f - f;
        if (best_f - f < 1e-12) ++stalled; else stalled = 0;
        rho = (1.0 - best_t) * rho + best_t * *best_dir;
        f = best_f;
      } else {
        ++stalled;
      }
      // A certified or hard-stalled restart cannot move further.
      if (certificate_gap <= kGapExit || stalled >= 40) break;
    }

    ++best.restarts;
    if (f > best.value_bits) {
      best.value_bits = f;
      best.argmax_state = DensityMatrix{rho, ch.in_reg};
      best.converged = tail_gain < 1e-8 || certificate_gap <= kGapExit;
    }
    // Additional restarts cannot beat a certified maximum by more than the
    // certificate gap.
    certified = certificate_gap <= kGapExit && f >= best.value_bits;
  }
  return best;
}

SignalingResult nonsignaling_check(const AnyBox& box, Direction direction,
                                   int trials, std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("nonsignaling_check: trials must be >= 1");
  const Register in_reg = box_input_register(box);

  std::vector<std::string> c_labels{kC1, kC2};
  if (const auto* sub = std::get_if<SubPrimitiveBox>(&box)) c_labels = sub->c_labels;
  const std::int64_t c_dim = in_reg.subset(c_labels).total_dim();

  std::vector<std::string> target;
  switch (direction) {
    case Direction::CtoA: target = {kA}; break;
    case Direction::CtoB: target = {kB}; break;
    case Direction::CtoAB: target = {kA, kB}; break;
  }

  // Computational-basis projectors on Charlie's factors.
  std::vector<Matrix> dephasers;
  for (std::int64_t k = 0; k < c_dim; ++k) {
    Matrix p = Matrix::Zero(c_dim, c_dim);
    p(k, k) = 1.0;
    dephasers.push_back(embed_operator(p, c_labels, in_reg));
  }

  auto marginal = [&](const DensityMatrix& rho) {
    return partial_trace(boxes::apply_box(box, rho).output, target);
  };

  Rng rng(seed);
  SignalingResult result;
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix rho = random_density(in_reg, in_reg.total_dim(), rng);
    const DensityMatrix base = marginal(rho);

    const UnitaryOp gamma{haar_unitary(c_dim, rng), c_labels};
    result.max_residual = std::max(result.max_residual,
                                   trace_distance(marginal(apply(gamma, rho)), base));

    Matrix dephased = Matrix::Zero(rho.dim(), rho.dim());
    for (const auto& p : dephasers) dephased += p * rho.mat * p;
    result.max_residual =
        std::max(result.max_residual,
                 trace_distance(marginal(DensityMatrix{dephased, rho.reg}), base));
  }
  result.is_signaling = result.max_residual > 1e-8;
  return result;
}

GhzSignal ghz_randomization_signal() {
  const SubPrimitiveBox box = boxes::ghz_box();
  const std::vector<std::string> part_ab{kA, kB};

  GhzSignal sig;
  sig.rho_ghz = partial_trace(
      boxes::apply_box(box, boxes::canonical_box_input(AnyBox{box})).output, part_ab);

  const Register full = Register::qubits({kA, kB, kC1, kC2});
  const DensityMatrix mixed{Matrix::Identity(16, 16) / 16.0, full};
  sig.rho_randomized = partial_trace(boxes::apply_box(box, mixed).output, part_ab);

  Ensemble pair;
  pair.entries.push_back({0.5, sig.rho_ghz});
  pair.entries.push_back({0.5, sig.rho_randomized});
  sig.holevo_bits = holevo(pair);
  return sig;
}

BinarySignal bell_from_ghz_signal() {
  const SubPrimitiveBox box = boxes::bell_from_ghz_box();
  const StateVector ghz = boxes::ghz_state(kA, kB, kC);
  const UnitaryOp z_c{pauli_matrix(1), {kC}};

  const DensityMatrix rho0 = boxes::apply_box(box, to_density(ghz)).output;
  const DensityMatrix rho1 =
      boxes::apply_box(box, to_density(apply(z_c, ghz))).output;

  const StateVector target = boxes::bell_state(0, kA, kB);
  BinarySignal sig;
  sig.orthogonality_residual = std::abs(fidelity(rho1, target));

  const double q0 = fidelity(rho0, target);
  const double q1 = fidelity(rho1, target);
  Eigen::MatrixXd joint(2, 2);
  joint << 0.5 * q0, 0.5 * (1.0 - q0), 0.5 * q1, 0.5 * (1.0 - q1);
  sig.accessible_bits = classical_mutual_information(joint);
  return sig;
}

}  // namespace esbox::comm
