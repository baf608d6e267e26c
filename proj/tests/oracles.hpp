#pragma once

// Semantic oracles for GL and propositional logic that share no code with the prover.

#include "ptlab/kripke.hpp"
#include "ptlab/modal.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ptlab::oracle {

using gl::KripkeModel;
using gl::MKind;
using gl::Modal;

// Truth of every closure formula at a world, given its atom valuation and the truth of its boxes.
struct ClosureEval {
  std::vector<Modal> closure;
  std::unordered_map<Modal, std::size_t> pos;
  std::vector<std::size_t> boxes;
  std::vector<std::uint32_t> atom_ids;

  explicit ClosureEval(Modal f) : closure(gl::subformulas(f)) {
    for (std::size_t i = 0; i < closure.size(); ++i) {
      pos[closure[i]] = i;
      if (closure[i].kind() == MKind::Box) boxes.push_back(i);
      if (closure[i].kind() == MKind::Atom) atom_ids.push_back(closure[i].atom());
    }
  }

  std::vector<char> eval(std::uint64_t val, std::uint64_t box_mask) const {
    std::vector<char> t(closure.size());
    std::size_t next_box = 0, next_atom = 0;
    for (std::size_t i = 0; i < closure.size(); ++i) {
      Modal g = closure[i];
      auto at = [&](Modal h) { return t[pos.at(h)] != 0; };
      bool v = false;
      switch (g.kind()) {
        case MKind::Top:
          v = true;
          break;
        case MKind::Bot:
          v = false;
          break;
        case MKind::Atom:
          v = (val >> next_atom++) & 1U;
          break;
        case MKind::Box:
          v = (box_mask >> next_box++) & 1U;
          break;
        case MKind::Not:
          v = !at(g.lhs());
          break;
        case MKind::And:
          v = at(g.lhs()) && at(g.rhs());
          break;
        case MKind::Or:
          v = at(g.lhs()) || at(g.rhs());
          break;
        case MKind::Imp:
          v = !at(g.lhs()) || at(g.rhs());
          break;
      }
      t[i] = v ? 1 : 0;
    }
    return t;
  }
};

// Exact GL validity by computing every type realisable at the root of a finite
// transitive irreflexive tree. A world's boxes are the AND over its children c of
// (X and []X at c), so realisable box masks are the all-ones mask (a leaf) and
// AND-combinations of children's masks; iterate to a fixpoint.
class TypeOracle {
 public:
  explicit TypeOracle(Modal f) : f_(f), ce_(f) {}

  // nullopt when valid; otherwise a countermodel rooted at world 0.
  std::optional<KripkeModel> countermodel() {
    const std::size_t nb = ce_.boxes.size(), na = ce_.atom_ids.size();
    const std::uint64_t full = nb == 64 ? ~0ULL : ((1ULL << nb) - 1);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> type_index;
    // achievable masks with one witness list of child types each
    std::map<std::uint64_t, std::vector<std::size_t>> masks{{full, {}}};
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [mask, kids] : std::map<std::uint64_t, std::vector<std::size_t>>(masks)) {
        for (std::uint64_t val = 0; val < (1ULL << na); ++val) {
          if (type_index.count({val, mask})) continue;
          std::size_t id = types_.size();
          type_index[{val, mask}] = id;
          auto truth = ce_.eval(val, mask);
          std::uint64_t vis = 0;
          for (std::size_t b = 0; b < nb; ++b) {
            std::size_t inner = ce_.pos.at(ce_.closure[ce_.boxes[b]].lhs());
            if (truth[inner] && truth[ce_.boxes[b]]) vis |= 1ULL << b;
          }
          types_.push_back({val, mask, vis, kids, truth.back() != 0});
          changed = true;
        }
      }
      // AND-closure of the visible masks of all realised types.
      for (std::size_t t = 0; t < types_.size(); ++t) {
        auto snapshot = masks;
        for (const auto& [m, kids] : snapshot) {
          if (kids.empty() && m == full) {
            if (!masks.count(types_[t].vis)) {
              masks[types_[t].vis] = {t};
              changed = true;
            }
            continue;
          }
          std::uint64_t combined = m & types_[t].vis;
          if (!masks.count(combined)) {
            auto k2 = kids;
            k2.push_back(t);
            masks[combined] = k2;
            changed = true;
          }
        }
      }
    }
    for (std::size_t t = 0; t < types_.size(); ++t)
      if (!types_[t].root_truth) return build(t);
    return std::nullopt;
  }

 private:
  struct Type {
    std::uint64_t val, mask, vis;
    std::vector<std::size_t> kids;
    bool root_truth;
  };
  Modal f_;
  ClosureEval ce_;
  std::vector<Type> types_;

  KripkeModel build(std::size_t root) const {
    // Unfold the derivation into a tree, then close transitively.
    std::vector<std::size_t> type_of{root};
    std::vector<std::vector<int>> kids(1);
    for (std::size_t w = 0; w < type_of.size(); ++w) {
      for (std::size_t k : types_[type_of[w]].kids) {
        kids[w].push_back(static_cast<int>(type_of.size()));
        type_of.push_back(k);
        kids.emplace_back();
      }
    }
    KripkeModel m;
    m.worlds = type_of.size();
    m.succ.assign(m.worlds, {});
    m.truths.assign(m.worlds, {});
    for (std::size_t w = m.worlds; w-- > 0;) {
      std::vector<int> below;
      for (int c : kids[w]) {
        below.push_back(c);
        for (int d : m.succ[static_cast<std::size_t>(c)]) below.push_back(d);
      }
      std::sort(below.begin(), below.end());
      below.erase(std::unique(below.begin(), below.end()), below.end());
      m.succ[w] = below;
      for (std::size_t a = 0; a < ce_.atom_ids.size(); ++a)
        if ((types_[type_of[w]].val >> a) & 1U) m.truths[w].push_back(gl::atom_name(ce_.atom_ids[a]));
      std::sort(m.truths[w].begin(), m.truths[w].end());
    }
    return m;
  }
};

inline bool gl_valid_by_types(Modal f) { return !TypeOracle(f).countermodel().has_value(); }

// Literal search over all labelled transitive irreflexive frames with up to max_worlds
// worlds and all valuations; returns true if some world falsifies f.
inline bool falsifiable_small(Modal f, std::size_t max_worlds) {
  auto atoms = gl::atoms_of(f);
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) pairs.emplace_back(i, j);
    for (std::uint64_t rel = 0; rel < (1ULL << pairs.size()); ++rel) {
      std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if ((rel >> k) & 1U) r[pairs[k].first][pairs[k].second] = 1;
      bool trans = true;
      for (std::size_t a = 0; a < n && trans; ++a)
        for (std::size_t b = 0; b < n && trans; ++b)
          for (std::size_t c = 0; c < n && trans; ++c)
            if (r[a][b] && r[b][c] && !r[a][c]) trans = false;
      if (!trans) continue;
      KripkeModel m;
      m.worlds = n;
      m.succ.assign(n, {});
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (r[a][b]) m.succ[a].push_back(static_cast<int>(b));
      for (std::uint64_t val = 0; val < (1ULL << (atoms.size() * n)); ++val) {
        m.truths.assign(n, {});
        for (std::size_t w = 0; w < n; ++w)
          for (std::size_t a = 0; a < atoms.size(); ++a)
            if ((val >> (w * atoms.size() + a)) & 1U) m.truths[w].push_back(gl::atom_name(atoms[a]));
        for (auto& t : m.truths) std::sort(t.begin(), t.end());
        auto truth = m.evaluate(f);
        if (std::find(truth.begin(), truth.end(), false) != truth.end()) return true;
      }
    }
  }
  return false;
}

// Propositional satisfiability by truth table (box-free formulas).
inline bool satisfiable_by_table(Modal f) {
  ClosureEval ce(f);
  for (std::uint64_t val = 0; val < (1ULL << ce.atom_ids.size()); ++val)
    if (ce.eval(val, 0).back()) return true;
  return false;
}

}  // namespace ptlab::oracle
