/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_RANDOM_HPP
#define ESBOX_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

#include "esbox/state.hpp"

namespace esbox {

using Rng = std::mt19937_64;

/// Derives a child seed from a master seed and a tag, so independent suites
/// driven by one CLI seed stay decoupled but reproducible.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the R
/// diagonal phases folded back into Q.
Matrix haar_unitary(std::int64_t dim, Rng& rng);
Matrix haar_unitary(std::int64_t dim, std::uint64_t seed);

/// Normalized Wishart state G G† / tr(G G†) with G of shape dim x rank.
DensityMatrix random_density(const Register& reg, std::int64_t rank, Rng& rng);
DensityMatrix random_density(const Register& reg, std::int64_t rank, std::uint64_t seed);

/// Normalized complex Gaussian vector.
StateVector random_pure(const Register& reg, Rng& rng);

}  // namespace esbox

#endif
