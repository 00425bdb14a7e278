/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/state.hpp"

#include <cmath>
#include <stdexcept>

namespace esbox {

double StateVector::norm_defect() const { return std::abs(amps.norm() - 1.0); }

void StateVector::check_valid(double tol) const {
  if (amps.size() != reg.total_dim())
    throw std::invalid_argument("StateVector: amplitude length does not match register");
  if (norm_defect() > tol)
    throw std::invalid_argument("StateVector: norm defect " + std::to_string(norm_defect()));
}

double DensityMatrix::hermiticity_defect() const {
  return (mat - mat.adjoint()).norm();
}

double DensityMatrix::trace_defect() const { return std::abs(mat.trace().real() - 1.0) + std::abs(mat.trace().imag()); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es((mat + mat.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::check_valid(double tol) const {
  if (mat.rows() != mat.cols() || mat.rows() != reg.total_dim())
    throw std::invalid_argument("DensityMatrix: shape does not match register");
  if (hermiticity_defect() > tol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (trace_defect() > tol)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  if (min_eigenvalue() < -tol)
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

double UnitaryOp::unitarity_defect() const {
  return (mat.adjoint() * mat - Matrix::Identity(mat.cols(), mat.cols())).norm();
}

void UnitaryOp::check_valid(double tol) const {
  if (mat.rows() != mat.cols())
    throw std::invalid_argument("UnitaryOp: matrix must be square");
  if (unitarity_defect() > tol)
    throw std::invalid_argument("UnitaryOp: unitarity defect " + std::to_string(unitarity_defect()));
}

void Ensemble::check_valid(double tol) const {
  if (entries.empty()) throw std::invalid_argument("Ensemble: empty");
  double total = 0.0;
  for (const auto& e : entries) {
    if (e.p < -tol) throw std::invalid_argument("Ensemble: negative probability");
    if (!(e.state.reg == entries.front().state.reg))
      throw std::invalid_argument("Ensemble: members on different registers");
    total += e.p;
  }
  if (std::abs(total - 1.0) > tol)
    throw std::invalid_argument("Ensemble: probabilities sum to " + std::to_string(total));
}

DensityMatrix Ensemble::average() const {
  Matrix avg = Matrix::Zero(entries.front().state.dim(), entries.front().state.dim());
  for (const auto& e : entries) avg += e.p * e.state.mat;
  return {avg, entries.front().state.reg};
}

DensityMatrix to_density(const StateVector& psi) {
  return {psi.amps * psi.amps.adjoint(), psi.reg};
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  return (psi.amps.adjoint() * rho.mat * psi.amps)(0, 0).real();
}

double overlap(const StateVector& a, const StateVector& b) {
  return std::norm(a.amps.dot(b.amps));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.reg == b.reg))
    throw std::invalid_argument("trace_distance: registers differ");
  Matrix diff = a.mat - b.mat;
  diff = (diff + diff.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace esbox
