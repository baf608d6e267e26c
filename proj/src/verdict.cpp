#include "ptlab/verdict.hpp"

namespace ptlab {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Established:
      return "established";
    case Outcome::Refuted:
      return "refuted";
    case Outcome::Undecided:
      return "undecided-at-budget";
  }
  return "?";
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j = {{"claim", claim}, {"outcome", std::string(to_string(outcome))}};
  if (!scope.empty()) j["scope"] = scope;
  if (!notes.empty()) j["notes"] = notes;
  if (witness) j["witness"] = *witness;
  if (!parts.empty()) {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : parts) ps.push_back(p.to_json());
    j["parts"] = std::move(ps);
  }
  return j;
}

Verdict combine(std::string claim, std::vector<Verdict> parts, std::string scope) {
  Verdict v;
  v.claim = std::move(claim);
  v.scope = std::move(scope);
  v.outcome = Outcome::Established;
  for (const auto& p : parts) {
    if (p.outcome == Outcome::Refuted) v.outcome = Outcome::Refuted;
    if (p.outcome == Outcome::Undecided && v.outcome == Outcome::Established) v.outcome = Outcome::Undecided;
  }
  v.parts = std::move(parts);
  return v;
}

Verdict undecided(std::string claim, std::string note, std::string scope) {
  Verdict v;
  v.claim = std::move(claim);
  v.scope = std::move(scope);
  v.notes.push_back(std::move(note));
  return v;
}

}  // namespace ptlab
