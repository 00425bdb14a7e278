/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/random.hpp"

#include <stdexcept>

namespace esbox {

namespace {

Matrix ginibre(std::int64_t rows, std::int64_t cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (std::int64_t i = 0; i < rows; ++i)
    for (std::int64_t j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = cxd(re, im);
    }
  return g;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
  // FNV-1a over the tag, folded into the master seed.
  std::uint64_t h = 1469598103934665603ull ^ master;
  for (const char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

Matrix haar_unitary(std::int64_t dim, Rng& rng) {
  if (dim < 2) throw std::invalid_argument("haar_unitary: dim must be >= 2");
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::int64_t j = 0; j < dim; ++j) {
    const cxd d = r(j, j);
    q.col(j) *= std::abs(d) > 0.0 ? d / std::abs(d) : cxd(1.0, 0.0);
  }
  return q;
}

Matrix haar_unitary(std::int64_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(dim, rng);
}

DensityMatrix random_density(const Register& reg, std::int64_t rank, Rng& rng) {
  const std::int64_t d = reg.total_dim();
  if (rank < 1 || rank > d)
    throw std::invalid_argument("random_density: rank out of range");
  const Matrix g = ginibre(d, rank, rng);
  Matrix w = g * g.adjoint();
  w /= w.trace().real();
  return {w, reg};
}

DensityMatrix random_density(const Register& reg, std::int64_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(reg, rank, rng);
}

StateVector random_pure(const Register& reg, Rng& rng) {
  const Matrix g = ginibre(reg.total_dim(), 1, rng);
  Vector v = g.col(0);
  v.normalize();
  return {v, reg};
}

}  // namespace esbox
