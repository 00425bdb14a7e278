/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_ENTROPY_HPP
#define ESBOX_ENTROPY_HPP

#include <span>
#include <string>

#include "esbox/state.hpp"

namespace esbox {

// All entropic quantities are in bits (base-2 logarithms throughout).

/// H({p}) = -sum p log2 p with 0 log 0 := 0. Entries must be nonnegative and
/// sum to 1 within tolerance.
double shannon_entropy(const Eigen::VectorXd& p, double tol = kTolAlgebra);

/// Von Neumann entropy. Eigenvalues below 1e-12 are dropped; the solver runs
/// on (rho + rho†)/2 to kill numerical asymmetry.
double vn_entropy(const DensityMatrix& rho);

/// I(A:B) = S(A) + S(B) - S(AB). The two label sets must disjointly cover
/// the register.
double mutual_information(const DensityMatrix& rho,
                          std::span<const std::string> part_a,
                          std::span<const std::string> part_b);

/// I(A:B|R) = S(AR) + S(BR) - S(ABR) - S(R) over a three-way disjoint cover.
double cond_mutual_information(const DensityMatrix& rho,
                               std::span<const std::string> part_a,
                               std::span<const std::string> part_b,
                               std::span<const std::string> part_r);

/// Holevo quantity chi = S(avg) - sum_i p_i S(rho_i).
double holevo(const Ensemble& ensemble);

/// Mutual information of a classical joint distribution (rows = inputs,
/// columns = outputs), in bits.
double classical_mutual_information(const Eigen::MatrixXd& joint);

}  // namespace esbox

#endif
