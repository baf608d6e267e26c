#include "ptlab/modal.hpp"

#include "ptlab/bignat.hpp"
#include "ptlab/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace ptlab::gl {

namespace {

struct NodeHash {
  std::size_t operator()(const MNode* n) const { return static_cast<std::size_t>(n->hash); }
};
struct NodeEq {
  bool operator()(const MNode* x, const MNode* y) const {
    return x->kind == y->kind && x->atom == y->atom && x->a == y->a && x->b == y->b;
  }
};

class Table {
 public:
  const MNode* intern(MNode&& cand) {
    Shard& s = shards_[cand.hash % kShards];
    std::lock_guard<std::mutex> lock(s.mu);
    if (auto it = s.index.find(&cand); it != s.index.end()) return *it;
    s.store.push_back(std::move(cand));
    s.index.insert(&s.store.back());
    return &s.store.back();
  }

 private:
  struct Shard {
    std::mutex mu;
    std::deque<MNode> store;
    std::unordered_set<const MNode*, NodeHash, NodeEq> index;
  };
  static constexpr std::size_t kShards = 16;
  std::array<Shard, kShards> shards_;
};

Table& table() {
  static auto* t = new Table();
  return *t;
}

struct AtomRegistry {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;
};

AtomRegistry& atoms() {
  static auto* r = new AtomRegistry();
  return *r;
}

Modal make(MKind kind, std::uint32_t atom, Modal a, Modal b) {
  MNode n;
  n.kind = kind;
  n.atom = atom;
  n.a = a;
  n.b = b;
  std::uint64_t h = mix_hash(0x6d6f64ULL, static_cast<std::uint64_t>(kind));
  if (kind == MKind::Atom) h = mix_hash(h, hash_string(atom_name(atom)));
  std::uint64_t size = 1;
  if (a) {
    h = mix_hash(h, a.hash());
    size += a.size();
    n.box_depth = a.box_depth();
  }
  if (b) {
    h = mix_hash(h, b.hash());
    size += b.size();
    n.box_depth = std::max(n.box_depth, b.box_depth());
  }
  if (kind == MKind::Box) ++n.box_depth;
  n.size = static_cast<std::uint32_t>(std::min<std::uint64_t>(size, 0xffffffffU));
  n.hash = h;
  return Modal(table().intern(std::move(n)));
}

class TextParser {
 public:
  explicit TextParser(std::string_view s) : s_(s) {}

  Modal parse() {
    Modal f = iff_level();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected input in modal formula", pos_);
    return f;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    // Keywords must not run into an identifier.
    if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
      std::size_t end = pos_ + tok.size();
      if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    }
    pos_ += tok.size();
    return true;
  }

  Modal iff_level() {
    Modal a = imp_level();
    while (eat("<->")) {
      Modal b = imp_level();
      a = miff(a, b);
    }
    return a;
  }

  Modal imp_level() {
    Modal a = or_level();
    if (eat("->")) return mimp(a, imp_level());
    return a;
  }

  Modal or_level() {
    Modal a = and_level();
    while (eat("|")) a = mor(a, and_level());
    return a;
  }

  Modal and_level() {
    Modal a = unary();
    while (eat("&")) a = mand(a, unary());
    return a;
  }

  Modal unary() {
    if (eat("~") || eat("!") || eat("not")) return mnot(unary());
    if (eat("box") || eat("[]")) return box(unary());
    if (eat("dia") || eat("<>")) return dia(unary());
    if (eat("(")) {
      Modal f = iff_level();
      if (!eat(")")) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (eat("top")) return mtop();
    if (eat("bot")) return mbot();
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && std::islower(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
      while (pos_ < s_.size() && (std::islower(static_cast<unsigned char>(s_[pos_])) ||
                                  std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return atom(s_.substr(start, pos_ - start));
    }
    throw ParseError("expected modal formula", pos_);
  }
};

int precedence(MKind k) {
  switch (k) {
    case MKind::Imp:
      return 1;
    case MKind::Or:
      return 2;
    case MKind::And:
      return 3;
    default:
      return 4;
  }
}

void write(Modal f, std::string& out) {
  auto operand = [&](Modal g, int min_prec) {
    if (precedence(g.kind()) < min_prec) {
      out += '(';
      write(g, out);
      out += ')';
    } else {
      write(g, out);
    }
  };
  switch (f.kind()) {
    case MKind::Top:
      out += "top";
      return;
    case MKind::Bot:
      out += "bot";
      return;
    case MKind::Atom:
      out += f.atom_name();
      return;
    case MKind::Not:
      out += '~';
      operand(f.lhs(), 4);
      return;
    case MKind::Box:
      out += "box ";
      operand(f.lhs(), 4);
      return;
    case MKind::And:
      operand(f.lhs(), 3);
      out += " & ";
      operand(f.rhs(), 4);
      return;
    case MKind::Or:
      operand(f.lhs(), 2);
      out += " | ";
      operand(f.rhs(), 3);
      return;
    case MKind::Imp:
      operand(f.lhs(), 2);
      out += " -> ";
      operand(f.rhs(), 1);
      return;
  }
}

}  // namespace

std::string_view Modal::atom_name() const {
  AtomRegistry& r = atoms();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.names[n_->atom];
}

std::uint32_t atom_id(std::string_view name) {
  AtomRegistry& r = atoms();
  std::lock_guard<std::mutex> lock(r.mu);
  std::string key(name);
  if (auto it = r.ids.find(key); it != r.ids.end()) return it->second;
  auto id = static_cast<std::uint32_t>(r.names.size());
  r.names.push_back(key);
  r.ids.emplace(key, id);
  return id;
}

std::string atom_name(std::uint32_t id) {
  AtomRegistry& r = atoms();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.names.at(id);
}

Modal mtop() { return make(MKind::Top, 0, {}, {}); }
Modal mbot() { return make(MKind::Bot, 0, {}, {}); }
Modal atom(std::string_view name) { return make(MKind::Atom, atom_id(name), {}, {}); }
Modal mnot(Modal a) { return make(MKind::Not, 0, a, {}); }
Modal mand(Modal a, Modal b) { return make(MKind::And, 0, a, b); }
Modal mor(Modal a, Modal b) { return make(MKind::Or, 0, a, b); }
Modal mimp(Modal a, Modal b) { return make(MKind::Imp, 0, a, b); }
Modal miff(Modal a, Modal b) { return mand(mimp(a, b), mimp(b, a)); }
Modal box(Modal a) { return make(MKind::Box, 0, a, {}); }
Modal dia(Modal a) { return mnot(box(mnot(a))); }

Modal mand_all(std::span<const Modal> parts) {
  if (parts.empty()) return mtop();
  Modal acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = mand(acc, parts[i]);
  return acc;
}

Modal parse_modal(std::string_view text) { return TextParser(text).parse(); }

std::string to_text(Modal f) {
  std::string out;
  write(f, out);
  return out;
}

std::vector<Modal> subformulas(Modal f) {
  std::vector<Modal> out;
  std::unordered_set<const MNode*> seen;
  std::vector<std::pair<Modal, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, done] = stack.back();
    stack.pop_back();
    if (done) {
      out.push_back(g);
      continue;
    }
    if (!seen.insert(g.node()).second) continue;
    stack.emplace_back(g, true);
    if (g.rhs()) stack.emplace_back(g.rhs(), false);
    if (g.lhs()) stack.emplace_back(g.lhs(), false);
  }
  return out;
}

std::vector<std::uint32_t> atoms_of(Modal f) {
  std::vector<std::uint32_t> ids;
  for (Modal g : subformulas(f))
    if (g.kind() == MKind::Atom) ids.push_back(g.atom());
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace ptlab::gl
