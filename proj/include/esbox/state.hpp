/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_STATE_HPP
#define ESBOX_STATE_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "esbox/register.hpp"

namespace esbox {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default tolerances. Algebraic identities hold to kTolAlgebra, derived
// inequalities to kTolDerived, optimizer outputs to kTolOpt; dimensions stay
// small enough (<= a few hundred) that conditioning never forces looser ones.
inline constexpr double kTolAlgebra = 1e-10;
inline constexpr double kTolDerived = 1e-9;
inline constexpr double kTolOpt = 1e-6;

/// Pure state: amplitude vector over a labeled register.
struct StateVector {
  Vector amps;
  Register reg;

  std::int64_t dim() const { return amps.size(); }
  /// Euclidean-norm defect |norm - 1|.
  double norm_defect() const;
  /// Throws std::invalid_argument when dimensions disagree or the norm
  /// defect exceeds tolerance.
  void check_valid(double tol = kTolAlgebra) const;
};

/// Mixed state: density matrix over a labeled register.
struct DensityMatrix {
  Matrix mat;
  Register reg;

  std::int64_t dim() const { return mat.rows(); }
  double hermiticity_defect() const;
  double trace_defect() const;
  double min_eigenvalue() const;
  void check_valid(double tol = kTolAlgebra) const;
};

/// Unitary acting on a subset of register factors, identified by label.
struct UnitaryOp {
  Matrix mat;
  std::vector<std::string> slice;

  /// Frobenius norm of U†U - 1.
  double unitarity_defect() const;
  void check_valid(double tol = kTolAlgebra) const;
};

/// Probability-weighted list of states on a shared register.
struct Ensemble {
  struct Entry {
    double p;
    DensityMatrix state;
  };
  std::vector<Entry> entries;

  void check_valid(double tol = kTolAlgebra) const;
  DensityMatrix average() const;
};

DensityMatrix to_density(const StateVector& psi);

/// <psi| rho |psi>.
double fidelity(const DensityMatrix& rho, const StateVector& psi);
/// |<a|b>|^2.
double overlap(const StateVector& a, const StateVector& b);

/// 0.5 * trace norm of (a - b); registers must agree.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace esbox

#endif
