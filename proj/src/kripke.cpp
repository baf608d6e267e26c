#include "ptlab/kripke.hpp"

#include "ptlab/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace ptlab::gl {

bool KripkeModel::transitive_irreflexive() const {
  std::vector<std::vector<char>> r(worlds, std::vector<char>(worlds, 0));
  for (std::size_t w = 0; w < worlds; ++w)
    for (int v : succ[w]) r[w][static_cast<std::size_t>(v)] = 1;
  for (std::size_t w = 0; w < worlds; ++w) {
    if (r[w][w]) return false;
    for (std::size_t v = 0; v < worlds; ++v) {
      if (!r[w][v]) continue;
      for (std::size_t u = 0; u < worlds; ++u)
        if (r[v][u] && !r[w][u]) return false;
    }
  }
  return true;
}

std::vector<bool> KripkeModel::evaluate(Modal f) const {
  std::unordered_map<Modal, std::vector<bool>> val;
  for (Modal g : subformulas(f)) {
    std::vector<bool> v(worlds);
    for (std::size_t w = 0; w < worlds; ++w) {
      switch (g.kind()) {
        case MKind::Top:
          v[w] = true;
          break;
        case MKind::Bot:
          v[w] = false;
          break;
        case MKind::Atom: {
          auto name = std::string(g.atom_name());
          v[w] = std::binary_search(truths[w].begin(), truths[w].end(), name);
          break;
        }
        case MKind::Not:
          v[w] = !val[g.lhs()][w];
          break;
        case MKind::And:
          v[w] = val[g.lhs()][w] && val[g.rhs()][w];
          break;
        case MKind::Or:
          v[w] = val[g.lhs()][w] || val[g.rhs()][w];
          break;
        case MKind::Imp:
          v[w] = !val[g.lhs()][w] || val[g.rhs()][w];
          break;
        case MKind::Box: {
          const auto& inner = val[g.lhs()];
          v[w] = std::all_of(succ[w].begin(), succ[w].end(), [&](int u) { return inner[static_cast<std::size_t>(u)]; });
          break;
        }
      }
    }
    val[g] = std::move(v);
  }
  return val[f];
}

nlohmann::json KripkeModel::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t w = 0; w < worlds; ++w)
    for (int v : succ[w]) edges.push_back({w, v});
  nlohmann::json valuation = nlohmann::json::object();
  for (std::size_t w = 0; w < worlds; ++w) valuation[std::to_string(w)] = truths[w];
  return {{"worlds", worlds}, {"root", 0}, {"edges", edges}, {"valuation", valuation}};
}

KripkeModel KripkeModel::from_json(const nlohmann::json& j) {
  KripkeModel m;
  m.worlds = j.at("worlds").get<std::size_t>();
  m.succ.assign(m.worlds, {});
  m.truths.assign(m.worlds, {});
  for (const auto& e : j.at("edges")) {
    auto from = e.at(0).get<std::size_t>();
    auto to = e.at(1).get<int>();
    if (from >= m.worlds || to < 0 || static_cast<std::size_t>(to) >= m.worlds) throw Error("edge out of range");
    m.succ[from].push_back(to);
  }
  for (const auto& [key, atoms] : j.at("valuation").items()) {
    std::size_t w = std::stoul(key);
    if (w >= m.worlds) throw Error("valuation world out of range");
    m.truths[w] = atoms.get<std::vector<std::string>>();
    std::sort(m.truths[w].begin(), m.truths[w].end());
  }
  return m;
}

}  // namespace ptlab::gl
