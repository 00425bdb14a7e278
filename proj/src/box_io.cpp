/**
 * This code is part of esbox.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "esbox/box_io.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace esbox::boxes {

namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      rows.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return rows;
}

Matrix matrix_from_json(const json& j, Eigen::Index dim, const char* field) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim * dim))
    throw std::invalid_argument(std::string("box json: field '") + field +
                                "' must hold " + std::to_string(dim * dim) +
                                " [re, im] pairs");
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j_ = 0; j_ < dim; ++j_) {
      const auto& cell = j[static_cast<std::size_t>(i * dim + j_)];
      if (!cell.is_array() || cell.size() != 2)
        throw std::invalid_argument(std::string("box json: field '") + field +
                                    "' entries must be [re, im] pairs");
      m(i, j_) = cxd(cell[0].get<double>(), cell[1].get<double>());
    }
  return m;
}

std::string kind_tag(const AnyBox& box) {
  if (std::holds_alternative<ESBox>(box)) return "es";
  return std::get<SubPrimitiveBox>(box).kind == SubPrimitiveKind::GhzFromTwoEpr
             ? "ghz"
             : "bell-from-ghz";
}

}  // namespace

std::string box_to_json(const AnyBox& box) {
  json doc;
  doc["kind"] = kind_tag(box);
  doc["post_twirl"] = is_twirled(box);
  doc["branches"] = json::array();

  if (const auto* es = std::get_if<ESBox>(&box)) {
    for (const auto& br : es->branches) {
      json b;
      b["e_c"] = matrix_to_json(br.e_c);
      b["u_a"] = matrix_to_json(br.u_a);
      b["u_b"] = matrix_to_json(br.u_b);
      doc["branches"].push_back(std::move(b));
    }
  } else {
    for (const auto& br : std::get<SubPrimitiveBox>(box).branches) {
      json b;
      b["e_c"] = matrix_to_json(br.kraus);
      b["u_a"] = matrix_to_json(br.u_a);
      b["u_b"] = matrix_to_json(br.u_b);
      doc["branches"].push_back(std::move(b));
    }
  }
  return doc.dump(2) + "\n";
}

AnyBox box_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("box json: parse error: ") + e.what());
  }
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw std::invalid_argument("box json: missing 'kind' tag");
  if (!doc.contains("branches") || !doc["branches"].is_array() ||
      doc["branches"].empty())
    throw std::invalid_argument("box json: missing or empty 'branches'");

  const std::string kind = doc["kind"].get<std::string>();
  const bool post_twirl = doc.value("post_twirl", false);

  if (kind == "es") {
    ESBox box;
    box.post_twirl = post_twirl;
    box.id = post_twirl ? "twirled-es-box" : "es-box";
    for (const auto& b : doc["branches"]) {
      Branch br;
      br.e_c = matrix_from_json(b.at("e_c"), 4, "e_c");
      br.u_a = matrix_from_json(b.at("u_a"), 2, "u_a");
      br.u_b = matrix_from_json(b.at("u_b"), 2, "u_b");
      box.branches.push_back(std::move(br));
    }
    return box;
  }
  if (kind == "ghz" || kind == "bell-from-ghz") {
    const bool is_ghz = (kind == "ghz");
    SubPrimitiveBox box;
    box.kind = is_ghz ? SubPrimitiveKind::GhzFromTwoEpr : SubPrimitiveKind::BellFromGhz;
    box.id = kind;
    box.c_labels = is_ghz ? std::vector<std::string>{kC1, kC2}
                          : std::vector<std::string>{kC};
    box.traced_labels = is_ghz ? std::vector<std::string>{kC2}
                               : std::vector<std::string>{kC};
    const Eigen::Index kraus_dim = is_ghz ? 4 : 2;
    for (const auto& b : doc["branches"]) {
      SubBranch br;
      br.kraus = matrix_from_json(b.at("e_c"), kraus_dim, "e_c");
      br.u_a = matrix_from_json(b.at("u_a"), 2, "u_a");
      br.u_b = matrix_from_json(b.at("u_b"), 2, "u_b");
      box.branches.push_back(std::move(br));
    }
    return box;
  }
  throw std::invalid_argument("box json: unknown kind '" + kind + "'");
}

void save_box(const AnyBox& box, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_box: cannot open '" + path + "'");
  out << box_to_json(box);
}

AnyBox load_box(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_box: cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return box_from_json(text);
}

}  // namespace esbox::boxes
