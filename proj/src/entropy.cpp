/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "esbox/ops.hpp"

namespace esbox {

namespace {

constexpr double kEigCutoff = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void check_cover(const DensityMatrix& rho,
                 std::initializer_list<std::span<const std::string>> parts) {
  std::unordered_set<std::string> seen;
  std::size_t count = 0;
  for (const auto& part : parts)
    for (const auto& l : part) {
      if (!rho.reg.has_label(l))
        throw std::invalid_argument("partition: unknown label '" + l + "'");
      if (!seen.insert(l).second)
        throw std::invalid_argument("partition: label '" + l + "' repeated");
      ++count;
    }
  if (count != rho.reg.size())
    throw std::invalid_argument("partition: does not cover the register");
}

std::vector<std::string> joined(std::span<const std::string> a,
                                std::span<const std::string> b) {
  std::vector<std::string> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

double shannon_entropy(const Eigen::VectorXd& p, double tol) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < -tol)
      throw std::invalid_argument("shannon_entropy: negative entry");
    total += p(i);
  }
  if (std::abs(total - 1.0) > tol)
    throw std::invalid_argument("shannon_entropy: entries sum to " + std::to_string(total));
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) h -= xlog2x(std::max(p(i), 0.0));
  return h;
}

double vn_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho.mat + rho.mat.adjoint()) / 2.0);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > kEigCutoff) s -= lam * std::log2(lam);
  }
  return s;
}

double mutual_information(const DensityMatrix& rho,
                          std::span<const std::string> part_a,
                          std::span<const std::string> part_b) {
  check_cover(rho, {part_a, part_b});
  return vn_entropy(partial_trace(rho, part_a)) +
         vn_entropy(partial_trace(rho, part_b)) - vn_entropy(rho);
}

double cond_mutual_information(const DensityMatrix& rho,
                               std::span<const std::string> part_a,
                               std::span<const std::string> part_b,
                               std::span<const std::string> part_r) {
  check_cover(rho, {part_a, part_b, part_r});
  const auto ar = joined(part_a, part_r);
  const auto br = joined(part_b, part_r);
  return vn_entropy(partial_trace(rho, ar)) + vn_entropy(partial_trace(rho, br)) -
         vn_entropy(rho) - vn_entropy(partial_trace(rho, part_r));
}

double holevo(const Ensemble& ensemble) {
  ensemble.check_valid();
  double avg_member = 0.0;
  for (const auto& e : ensemble.entries) avg_member += e.p * vn_entropy(e.state);
  return vn_entropy(ensemble.average()) - avg_member;
}

double classical_mutual_information(const Eigen::MatrixXd& joint) {
  const Eigen::VectorXd px = joint.rowwise().sum();
  const Eigen::VectorXd py = joint.colwise().sum();
  double mi = 0.0;
  for (Eigen::Index x = 0; x < joint.rows(); ++x)
    for (Eigen::Index y = 0; y < joint.cols(); ++y) {
      const double pxy = joint(x, y);
      if (pxy > 0.0 && px(x) > 0.0 && py(y) > 0.0)
        mi += pxy * std::log2(pxy / (px(x) * py(y)));
    }
  return mi;
}

}  // namespace esbox
