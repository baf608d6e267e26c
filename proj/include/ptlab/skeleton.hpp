#pragma once

// Modal skeleton of an arithmetic sentence: provability atoms whose arguments are
// closed become boxes over the skeleton of the quoted sentence, boolean structure is
// kept, and every other subsentence becomes a propositional atom named after its
// structural hash (so identical subsentences share one atom).

#include "ptlab/formula.hpp"
#include "ptlab/modal.hpp"

#include <map>
#include <string>
#include <vector>

namespace ptlab {

// Atom name -> the subsentence it stands for.
struct SkeletonAtoms {
  std::map<std::string, Formula> by_name;
};

std::string skeleton_atom_name(Formula f);

gl::Modal skeleton(Formula f, SkeletonAtoms* atoms = nullptr);

// For each recorded atom whose sentence is decided by standard-model evaluation
// (no provability or membership involved), the literal it evaluates to, together with
// its box: true Delta0 sentences are provable and false ones refutable.
std::vector<gl::Modal> decided_atom_facts(const SkeletonAtoms& atoms);

}  // namespace ptlab
