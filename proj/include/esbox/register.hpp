/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_REGISTER_HPP
#define ESBOX_REGISTER_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace esbox {

/// One tensor factor of a composite Hilbert space.
struct Factor {
  std::string label;
  std::int64_t dim = 2;

  bool operator==(const Factor&) const = default;
};

/// Ordered, labeled tensor-factor layout of a composite Hilbert space.
///
/// Index convention: basis index i of the composite space decomposes into
/// per-factor digits with the FIRST factor as the most significant digit,
/// i.e. i = ((d0 * dim1 + d1) * dim2 + d2) * ... Every constructor in this
/// library follows this convention, so states built in different modules
/// are bit-exact compatible.
class Register {
 public:
  Register() = default;
  explicit Register(std::vector<Factor> factors);
  Register(std::initializer_list<Factor> factors);

  /// All-qubit register with the given labels.
  static Register qubits(std::initializer_list<std::string> labels);
  static Register qubits(std::span<const std::string> labels);

  std::int64_t total_dim() const { return total_dim_; }
  std::size_t size() const { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_[i]; }
  const std::vector<Factor>& factors() const { return factors_; }

  bool has_label(const std::string& label) const;
  /// Position of `label` among the factors; throws std::invalid_argument
  /// if the label is unknown.
  std::size_t position(const std::string& label) const;
  std::vector<std::string> labels() const;

  /// Concatenation for tensor products. Label collisions are rejected.
  Register concat(const Register& other) const;
  /// Sub-register holding `which` in the given order.
  Register subset(std::span<const std::string> which) const;
  /// Factors not named in `which`, in this register's order.
  Register complement(std::span<const std::string> which) const;

  bool operator==(const Register&) const = default;

 private:
  void validate() const;

  std::vector<Factor> factors_;
  std::int64_t total_dim_ = 1;
};

}  // namespace esbox

#endif
