#pragma once

// Propositional modal formulas for GL, hash-consed like arithmetic formulas.
// Text syntax: atoms [a-z][a-z0-9_]*, top, bot, ~ (or !), &, |, -> (right assoc),
// <-> (sugar for a conjunction of implications), box / [], dia / <>, parentheses.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptlab::gl {

enum class MKind : std::uint8_t { Top, Bot, Atom, Not, And, Or, Imp, Box };

struct MNode;

class Modal {
 public:
  Modal() = default;
  explicit Modal(const MNode* n) : n_(n) {}

  const MNode* node() const { return n_; }
  explicit operator bool() const { return n_ != nullptr; }
  bool operator==(const Modal& o) const { return n_ == o.n_; }

  MKind kind() const;
  std::uint32_t atom() const;
  std::string_view atom_name() const;
  Modal lhs() const;  // operand of unary nodes too
  Modal rhs() const;
  std::uint64_t hash() const;
  std::uint32_t size() const;       // tree size, saturating
  std::uint32_t box_depth() const;
  bool box_free() const { return box_depth() == 0; }

 private:
  const MNode* n_ = nullptr;
};

struct MNode {
  MKind kind{};
  std::uint32_t atom = 0;
  Modal a, b;
  std::uint64_t hash = 0;
  std::uint32_t size = 1;
  std::uint32_t box_depth = 0;
};

inline MKind Modal::kind() const { return n_->kind; }
inline std::uint32_t Modal::atom() const { return n_->atom; }
inline Modal Modal::lhs() const { return n_->a; }
inline Modal Modal::rhs() const { return n_->b; }
inline std::uint64_t Modal::hash() const { return n_->hash; }
inline std::uint32_t Modal::size() const { return n_->size; }
inline std::uint32_t Modal::box_depth() const { return n_->box_depth; }

std::uint32_t atom_id(std::string_view name);
std::string atom_name(std::uint32_t id);

Modal mtop();
Modal mbot();
Modal atom(std::string_view name);
Modal mnot(Modal a);
Modal mand(Modal a, Modal b);
Modal mor(Modal a, Modal b);
Modal mimp(Modal a, Modal b);
Modal miff(Modal a, Modal b);
Modal box(Modal a);
Modal dia(Modal a);  // ~box~a
Modal mand_all(std::span<const Modal> parts);  // left-nested; empty is top

Modal parse_modal(std::string_view text);
std::string to_text(Modal f);

// Distinct subformulas, children before parents.
std::vector<Modal> subformulas(Modal f);
std::vector<std::uint32_t> atoms_of(Modal f);  // sorted ids

}  // namespace ptlab::gl

template <>
struct std::hash<ptlab::gl::Modal> {
  std::size_t operator()(const ptlab::gl::Modal& m) const noexcept { return std::hash<const void*>{}(m.node()); }
};
