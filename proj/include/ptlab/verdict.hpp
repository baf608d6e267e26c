#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ptlab {

enum class Outcome { Established, Refuted, Undecided };

std::string_view to_string(Outcome o);

// Three-valued result of a check, with an auditable witness.
struct Verdict {
  Outcome outcome = Outcome::Undecided;
  std::string claim;
  std::string scope;  // e.g. "skeleton-level (GL)"
  std::vector<std::string> notes;
  std::optional<nlohmann::json> witness;
  std::vector<Verdict> parts;

  bool established() const { return outcome == Outcome::Established; }
  nlohmann::json to_json() const;
};

// Established iff every part is; Refuted if some part is refuted; Undecided otherwise.
Verdict combine(std::string claim, std::vector<Verdict> parts, std::string scope = {});
Verdict undecided(std::string claim, std::string note, std::string scope = {});

}  // namespace ptlab
