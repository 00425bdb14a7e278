/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace esbox {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Per-factor digit decomposition of a basis index, most significant first.
std::vector<std::int64_t> digits_of(std::int64_t index, const Register& reg) {
  std::vector<std::int64_t> d(reg.size());
  for (std::size_t k = reg.size(); k-- > 0;) {
    d[k] = index % reg.factor(k).dim;
    index /= reg.factor(k).dim;
  }
  return d;
}

std::vector<std::size_t> positions_of(std::span<const std::string> labels,
                                      const Register& reg) {
  std::vector<std::size_t> pos;
  pos.reserve(labels.size());
  for (const auto& l : labels) pos.push_back(reg.position(l));
  return pos;
}

IndexSplit split_positions(const Register& reg, const std::vector<std::size_t>& positions) {
  std::vector<bool> in_sub(reg.size(), false);
  for (auto p : positions) in_sub[p] = true;

  IndexSplit out;
  for (auto p : positions) out.sub_dim *= reg.factor(p).dim;
  for (std::size_t k = 0; k < reg.size(); ++k)
    if (!in_sub[k]) out.rest_dim *= reg.factor(k).dim;

  const std::int64_t total = reg.total_dim();
  out.sub.resize(total);
  out.rest.resize(total);
  for (std::int64_t i = 0; i < total; ++i) {
    auto d = digits_of(i, reg);
    std::int64_t s = 0;
    for (auto p : positions) s = s * reg.factor(p).dim + d[p];
    std::int64_t r = 0;
    for (std::size_t k = 0; k < reg.size(); ++k)
      if (!in_sub[k]) r = r * reg.factor(k).dim + d[k];
    out.sub[i] = s;
    out.rest[i] = r;
  }
  return out;
}

}  // namespace

IndexSplit split_register(const Register& reg, std::span<const std::string> labels) {
  return split_positions(reg, positions_of(labels, reg));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out{Vector(a.dim() * b.dim()), a.reg.concat(b.reg)};
  for (std::int64_t i = 0; i < a.dim(); ++i)
    out.amps.segment(i * b.dim(), b.dim()) = a.amps(i) * b.amps;
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return {kron(a.mat, b.mat), a.reg.concat(b.reg)};
}

UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b) {
  std::vector<std::string> slice = a.slice;
  for (const auto& l : b.slice) {
    for (const auto& m : a.slice)
      if (l == m) throw std::invalid_argument("tensor: label collision on '" + l + "'");
    slice.push_back(l);
  }
  return {kron(a.mat, b.mat), std::move(slice)};
}

Matrix embed_operator(const Matrix& op, std::span<const std::string> labels,
                      const Register& reg) {
  if (op.rows() != op.cols())
    throw std::invalid_argument("embed_operator: operator must be square");
  const auto pos = positions_of(labels, reg);
  const auto idx = split_positions(reg, pos);
  if (op.rows() != idx.sub_dim)
    throw std::invalid_argument("embed_operator: operator dimension does not match labels");

  const std::int64_t total = reg.total_dim();
  // Group indices sharing the same rest-index; the operator couples only
  // indices within a group.
  std::vector<std::vector<std::int64_t>> groups(idx.rest_dim);
  for (std::int64_t i = 0; i < total; ++i) groups[idx.rest[i]].push_back(i);

  Matrix full = Matrix::Zero(total, total);
  for (const auto& g : groups)
    for (auto i : g)
      for (auto j : g) full(i, j) = op(idx.sub[i], idx.sub[j]);
  return full;
}

StateVector apply(const UnitaryOp& op, const StateVector& psi) {
  Matrix full = embed_operator(op.mat, op.slice, psi.reg);
  return {full * psi.amps, psi.reg};
}

DensityMatrix apply(const UnitaryOp& op, const DensityMatrix& rho) {
  Matrix full = embed_operator(op.mat, op.slice, rho.reg);
  return {full * rho.mat * full.adjoint(), rho.reg};
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set empty");
  const auto pos = positions_of(keep, rho.reg);
  const auto idx = split_positions(rho.reg, pos);

  Matrix out = Matrix::Zero(idx.sub_dim, idx.sub_dim);
  const std::int64_t total = rho.reg.total_dim();
  // out[s,s'] = sum over rest r of rho[(s,r),(s',r)]
  std::vector<std::vector<std::int64_t>> by_rest(idx.rest_dim);
  for (std::int64_t i = 0; i < total; ++i) by_rest[idx.rest[i]].push_back(i);
  for (const auto& g : by_rest)
    for (auto i : g)
      for (auto j : g) out(idx.sub[i], idx.sub[j]) += rho.mat(i, j);

  return {out, rho.reg.subset(keep)};
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::initializer_list<std::string> keep) {
  std::vector<std::string> k(keep);
  return partial_trace(rho, std::span<const std::string>(k));
}

namespace {

std::vector<std::int64_t> permutation_map(const Register& reg,
                                          std::span<const std::string> order) {
  if (order.size() != reg.size())
    throw std::invalid_argument("permute: order must list every label exactly once");
  const auto pos = positions_of(order, reg);
  const auto idx = split_positions(reg, pos);
  // With all factors selected, idx.sub is the new index of each old index.
  return idx.sub;
}

}  // namespace

StateVector permute(const StateVector& psi, std::span<const std::string> order) {
  const auto map = permutation_map(psi.reg, order);
  StateVector out{Vector(psi.dim()), psi.reg.subset(order)};
  for (std::int64_t i = 0; i < psi.dim(); ++i) out.amps(map[i]) = psi.amps(i);
  return out;
}

DensityMatrix permute(const DensityMatrix& rho, std::span<const std::string> order) {
  const auto map = permutation_map(rho.reg, order);
  DensityMatrix out{Matrix(rho.dim(), rho.dim()), rho.reg.subset(order)};
  for (std::int64_t i = 0; i < rho.dim(); ++i)
    for (std::int64_t j = 0; j < rho.dim(); ++j) out.mat(map[i], map[j]) = rho.mat(i, j);
  return out;
}

StateVector purify(const DensityMatrix& rho, const std::string& env_label) {
  const std::int64_t d = rho.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho.mat + rho.mat.adjoint()) / 2.0);

  Register out_reg = rho.reg.concat(Register({{env_label, d}}));
  Vector amps = Vector::Zero(d * d);
  for (std::int64_t k = 0; k < d; ++k) {
    const double lam = std::max(es.eigenvalues()(k), 0.0);
    if (lam <= 0.0) continue;
    const double w = std::sqrt(lam);
    for (std::int64_t i = 0; i < d; ++i) amps(i * d + k) = w * es.eigenvectors()(i, k);
  }
  return {amps, out_reg};
}

std::optional<UnitaryOp> max_entangled_factor(const StateVector& psi, double tol) {
  if (psi.dim() != 4 || psi.reg.size() != 2)
    throw std::invalid_argument("max_entangled_factor: expects a two-qubit state");
  Matrix m(2, 2);
  m << psi.amps(0), psi.amps(1), psi.amps(2), psi.amps(3);
  m *= std::sqrt(2.0);
  const double defect = (m.adjoint() * m - Matrix::Identity(2, 2)).norm();
  if (defect > tol) return std::nullopt;
  return UnitaryOp{m, {psi.reg.factor(0).label}};
}

Matrix fix_global_phase(Matrix m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > 1e-8) {
        m *= std::conj(m(i, j)) / std::abs(m(i, j));
        return m;
      }
  return m;
}

}  // namespace esbox
