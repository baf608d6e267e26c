#include "ptlab/skeleton.hpp"

#include "ptlab/classify.hpp"
#include "ptlab/error.hpp"
#include "ptlab/evaluate.hpp"

#include <cstdio>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ptlab {

std::string skeleton_atom_name(Formula f) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "s_%012llx", static_cast<unsigned long long>(f.hash() & 0xffffffffffffULL));
  return buf;
}

namespace {

class Skeletonizer {
 public:
  explicit Skeletonizer(SkeletonAtoms* atoms) : atoms_(atoms) {}

  gl::Modal run(Formula f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    // A sentence quoting itself (a diagonal sentence) becomes an atom at the inner occurrence.
    if (!open_.insert(f).second) return opaque(f);
    gl::Modal r;
    switch (f.kind()) {
      case FormulaKind::Top:
        r = gl::mtop();
        break;
      case FormulaKind::Bot:
        r = gl::mbot();
        break;
      case FormulaKind::Not:
        r = gl::mnot(run(f.sub(0)));
        break;
      case FormulaKind::And:
        r = gl::mand(run(f.sub(0)), run(f.sub(1)));
        break;
      case FormulaKind::Or:
        r = gl::mor(run(f.sub(0)), run(f.sub(1)));
        break;
      case FormulaKind::Imp:
        r = gl::mimp(run(f.sub(0)), run(f.sub(1)));
        break;
      case FormulaKind::Provability:
        r = provability(f);
        break;
      default:
        r = opaque(f);
    }
    open_.erase(f);
    memo_.emplace(f, r);
    return r;
  }

 private:
  gl::Modal provability(Formula f) {
    for (Term a : f.terms())
      if (!a.closed()) return opaque(f);
    Formula quoted;
    try {
      quoted = instantiate(f);
    } catch (const Error&) {
      return opaque(f);
    }
    return gl::box(run(quoted));
  }

  gl::Modal opaque(Formula f) {
    std::string name = skeleton_atom_name(f);
    if (atoms_) {
      auto [it, fresh] = atoms_->by_name.emplace(name, f);
      if (!fresh && it->second != f) throw std::logic_error("skeleton atom name collision: " + name);
    }
    return gl::atom(name);
  }

  SkeletonAtoms* atoms_;
  std::unordered_map<Formula, gl::Modal> memo_;
  std::unordered_set<Formula> open_;
};

}  // namespace

gl::Modal skeleton(Formula f, SkeletonAtoms* atoms) { return Skeletonizer(atoms).run(f); }

std::vector<gl::Modal> decided_atom_facts(const SkeletonAtoms& atoms) {
  std::vector<gl::Modal> facts;
  for (const auto& [name, f] : atoms.by_name) {
    if (!f.is_sentence() || classify(f) != delta(0)) continue;
    std::optional<bool> v;
    try {
      v = eval_sentence(f);
    } catch (const ResourceError&) {
      continue;
    }
    if (!v) continue;
    gl::Modal lit = *v ? gl::atom(name) : gl::mnot(gl::atom(name));
    facts.push_back(lit);
    facts.push_back(gl::box(lit));
  }
  return facts;
}

}  // namespace ptlab
