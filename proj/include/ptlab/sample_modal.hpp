#pragma once

#include "ptlab/modal.hpp"

#include <random>

namespace ptlab::sample {

inline gl::Modal random_modal(std::mt19937_64& rng, int depth, int natoms = 3) {
  static const char* names[] = {"p", "q", "r", "s"};
  std::uint64_t pick = rng() % (depth <= 0 ? 4 : 10);
  switch (pick) {
    case 0:
    case 1:
      return gl::atom(names[rng() % static_cast<std::uint64_t>(natoms)]);
    case 2:
      return rng() % 2 ? gl::mtop() : gl::mbot();
    case 3:
      return gl::atom(names[rng() % static_cast<std::uint64_t>(natoms)]);
    case 4:
      return gl::mnot(random_modal(rng, depth - 1, natoms));
    case 5:
    case 6:
      return gl::box(random_modal(rng, depth - 1, natoms));
    case 7:
      return gl::mand(random_modal(rng, depth - 1, natoms), random_modal(rng, depth - 1, natoms));
    case 8:
      return gl::mor(random_modal(rng, depth - 1, natoms), random_modal(rng, depth - 1, natoms));
    default:
      return gl::mimp(random_modal(rng, depth - 1, natoms), random_modal(rng, depth - 1, natoms));
  }
}

inline gl::Modal random_box_free(std::mt19937_64& rng, int depth, int natoms) {
  gl::Modal f = random_modal(rng, depth, natoms);
  // Strip boxes by rebuilding.
  auto strip = [&](auto&& self, gl::Modal g) -> gl::Modal {
    switch (g.kind()) {
      case gl::MKind::Box:
        return self(self, g.lhs());
      case gl::MKind::Not:
        return gl::mnot(self(self, g.lhs()));
      case gl::MKind::And:
        return gl::mand(self(self, g.lhs()), self(self, g.rhs()));
      case gl::MKind::Or:
        return gl::mor(self(self, g.lhs()), self(self, g.rhs()));
      case gl::MKind::Imp:
        return gl::mimp(self(self, g.lhs()), self(self, g.rhs()));
      default:
        return g;
    }
  };
  return strip(strip, f);
}

}  // namespace ptlab::sample
