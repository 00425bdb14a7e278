/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/register.hpp"

#include <stdexcept>
#include <unordered_set>

namespace esbox {

Register::Register(std::vector<Factor> factors) : factors_(std::move(factors)) {
  validate();
  for (const auto& f : factors_) total_dim_ *= f.dim;
}

Register::Register(std::initializer_list<Factor> factors)
    : Register(std::vector<Factor>(factors)) {}

Register Register::qubits(std::initializer_list<std::string> labels) {
  std::vector<Factor> fs;
  fs.reserve(labels.size());
  for (const auto& l : labels) fs.push_back({l, 2});
  return Register(std::move(fs));
}

Register Register::qubits(std::span<const std::string> labels) {
  std::vector<Factor> fs;
  fs.reserve(labels.size());
  for (const auto& l : labels) fs.push_back({l, 2});
  return Register(std::move(fs));
}

void Register::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 2) throw std::invalid_argument("Register: factor dimension must be >= 2");
    if (!seen.insert(f.label).second)
      throw std::invalid_argument("Register: duplicate label '" + f.label + "'");
  }
}

bool Register::has_label(const std::string& label) const {
  for (const auto& f : factors_)
    if (f.label == label) return true;
  return false;
}

std::size_t Register::position(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return i;
  throw std::invalid_argument("Register: unknown label '" + label + "'");
}

std::vector<std::string> Register::labels() const {
  std::vector<std::string> ls;
  ls.reserve(factors_.size());
  for (const auto& f : factors_) ls.push_back(f.label);
  return ls;
}

Register Register::concat(const Register& other) const {
  std::vector<Factor> fs = factors_;
  for (const auto& f : other.factors_) {
    if (has_label(f.label))
      throw std::invalid_argument("Register: label collision on '" + f.label + "'");
    fs.push_back(f);
  }
  return Register(std::move(fs));
}

Register Register::subset(std::span<const std::string> which) const {
  std::vector<Factor> fs;
  fs.reserve(which.size());
  for (const auto& l : which) fs.push_back(factors_[position(l)]);
  return Register(std::move(fs));
}

Register Register::complement(std::span<const std::string> which) const {
  std::vector<Factor> fs;
  for (const auto& f : factors_) {
    bool listed = false;
    for (const auto& l : which) listed = listed || (l == f.label);
    if (!listed) fs.push_back(f);
  }
  return Register(std::move(fs));
}

}  // namespace esbox
