/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_OPS_HPP
#define ESBOX_OPS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esbox/state.hpp"

namespace esbox {

/// Kronecker products with concatenated registers. Label collisions throw.
StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b);

/// Embeds a square operator acting on `labels` (in that order) into the full
/// space of `reg`, identity on every other factor.
Matrix embed_operator(const Matrix& op, std::span<const std::string> labels,
                      const Register& reg);

/// Index bookkeeping for viewing a register as (sub ⊗ rest): for every full
/// basis index i, sub[i] runs over the `labels` factors (in the given order)
/// and rest[i] over the remaining factors in register order.
struct IndexSplit {
  std::vector<std::int64_t> sub;
  std::vector<std::int64_t> rest;
  std::int64_t sub_dim = 1;
  std::int64_t rest_dim = 1;
};
IndexSplit split_register(const Register& reg, std::span<const std::string> labels);

StateVector apply(const UnitaryOp& op, const StateVector& psi);
DensityMatrix apply(const UnitaryOp& op, const DensityMatrix& rho);

/// Reduced state on `keep`; output factors are ordered as listed in `keep`.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::initializer_list<std::string> keep);

/// Reorders tensor factors; `order` must be a permutation of the labels.
StateVector permute(const StateVector& psi, std::span<const std::string> order);
DensityMatrix permute(const DensityMatrix& rho, std::span<const std::string> order);

/// Purification on register + one environment factor of dimension
/// rho.dim() (padded beyond the rank for a fixed-shape interface).
StateVector purify(const DensityMatrix& rho, const std::string& env_label);

/// For a two-qubit pure state psi, the matrix M with
/// psi = (M ⊗ 1)|Ψ+> under the fold M = sqrt(2) * reshape(amps, 2x2).
/// Succeeds iff M is unitary (psi maximally entangled); the returned op acts
/// on psi's first factor. Empty optional classifies NotMaxEntangled.
std::optional<UnitaryOp> max_entangled_factor(const StateVector& psi,
                                              double tol = kTolDerived);

/// Multiplies by a global phase making the first entry of magnitude > 1e-8
/// real positive.
Matrix fix_global_phase(Matrix m);

}  // namespace esbox

#endif
