#pragma once

#include "ptlab/modal.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ptlab::gl {

// Finite Kripke model; world 0 is the designated root. GL frames are transitive and irreflexive.
struct KripkeModel {
  std::size_t worlds = 0;
  std::vector<std::vector<int>> succ;            // accessibility lists
  std::vector<std::vector<std::string>> truths;  // atoms true at each world, sorted

  bool transitive_irreflexive() const;
  // Truth of f at every world.
  std::vector<bool> evaluate(Modal f) const;
  bool holds(Modal f, std::size_t world = 0) const { return evaluate(f)[world]; }

  nlohmann::json to_json() const;
  static KripkeModel from_json(const nlohmann::json& j);
};

}  // namespace ptlab::gl
