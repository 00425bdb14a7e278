/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef ESBOX_BOX_IO_HPP
#define ESBOX_BOX_IO_HPP

#include <string>

#include "esbox/boxes.hpp"

namespace esbox::boxes {

/// JSON wire format: a kind tag ("es", "ghz", "bell-from-ghz"), a post_twirl
/// flag, and the branch matrices (e_c, u_a, u_b) as row-major arrays of
/// [re, im] pairs.
std::string box_to_json(const AnyBox& box);
AnyBox box_from_json(const std::string& text);

void save_box(const AnyBox& box, const std::string& path);
/// Throws std::runtime_error on unreadable files and std::invalid_argument
/// on malformed documents.
AnyBox load_box(const std::string& path);

}  // namespace esbox::boxes

#endif
