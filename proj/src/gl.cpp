#include "ptlab/gl.hpp"

#include "ptlab/bignat.hpp"
#include "ptlab/error.hpp"
#include "ptlab/sat.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace ptlab::gl {

namespace {

using sat::Lit;

constexpr std::uint64_t kDefaultBudget = 2'000'000;

struct BudgetExceeded {};

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= 1ULL << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1ULL; }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> w_;
};

// Subformula closure with one SAT variable per node; boxes and atoms are free variables.
struct Encoding {
  std::vector<Modal> closure;
  std::unordered_map<Modal, int> index;
  std::vector<int> boxes;  // closure indices of boxed subformulas
  std::vector<int> box_of;

  explicit Encoding(Modal root) {
    closure = subformulas(root);
    box_of.assign(closure.size(), -1);
    for (std::size_t i = 0; i < closure.size(); ++i) {
      index.emplace(closure[i], static_cast<int>(i));
      if (closure[i].kind() == MKind::Box) {
        box_of[i] = static_cast<int>(boxes.size());
        boxes.push_back(static_cast<int>(i));
      }
    }
    // Deterministic box order, independent of allocation addresses.
    std::vector<int> order(boxes.size());
    for (std::size_t b = 0; b < boxes.size(); ++b) order[b] = static_cast<int>(b);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return closure[static_cast<std::size_t>(boxes[static_cast<std::size_t>(x)])].size() <
             closure[static_cast<std::size_t>(boxes[static_cast<std::size_t>(y)])].size();
    });
    std::vector<int> sorted;
    for (int b : order) sorted.push_back(boxes[static_cast<std::size_t>(b)]);
    boxes = sorted;
    for (std::size_t b = 0; b < boxes.size(); ++b) box_of[static_cast<std::size_t>(boxes[b])] = static_cast<int>(b);
  }

  Lit lit(int i, bool positive = true) const { return Lit::make(i, !positive); }
  Lit lit(Modal f, bool positive = true) const { return lit(index.at(f), positive); }
  int inner(int box_index) const {
    return index.at(closure[static_cast<std::size_t>(boxes[static_cast<std::size_t>(box_index)])].lhs());
  }

  void encode(sat::Solver& s) const {
    for (std::size_t i = 0; i < closure.size(); ++i) s.new_var(closure[i].kind() == MKind::Box);
    for (std::size_t i = 0; i < closure.size(); ++i) {
      Modal f = closure[i];
      Lit v = lit(static_cast<int>(i));
      auto a = [&] { return lit(f.lhs()); };
      auto b = [&] { return lit(f.rhs()); };
      switch (f.kind()) {
        case MKind::Top:
          s.add_clause({v});
          break;
        case MKind::Bot:
          s.add_clause({~v});
          break;
        case MKind::Atom:
        case MKind::Box:
          break;
        case MKind::Not:
          s.add_clause({~v, ~a()});
          s.add_clause({v, a()});
          break;
        case MKind::And:
          s.add_clause({~v, a()});
          s.add_clause({~v, b()});
          s.add_clause({v, ~a(), ~b()});
          break;
        case MKind::Or:
          s.add_clause({~v, a(), b()});
          s.add_clause({v, ~a()});
          s.add_clause({v, ~b()});
          break;
        case MKind::Imp:
          s.add_clause({~v, ~a(), b()});
          s.add_clause({v, a()});
          s.add_clause({v, ~b()});
          break;
      }
    }
  }

  // Assumptions for the set {C, []C : b in tb} + {[]A, ~A}.
  std::vector<Lit> child_assumptions(const std::vector<int>& tb, int a) const {
    std::vector<Lit> out{lit(boxes[static_cast<std::size_t>(a)]), lit(inner(a), false)};
    for (int b : tb) {
      out.push_back(lit(inner(b)));
      out.push_back(lit(boxes[static_cast<std::size_t>(b)]));
    }
    return out;
  }

  std::vector<Lit> lemma_clause(const std::vector<int>& tb_core, int a) const {
    std::vector<Lit> clause{lit(boxes[static_cast<std::size_t>(a)])};
    for (int b : tb_core) clause.push_back(lit(boxes[static_cast<std::size_t>(b)], false));
    return clause;
  }
};

class Prover {
 public:
  Prover(Modal f, std::uint64_t budget) : f_(f), enc_(f), budget_(budget), memo_(enc_.boxes.size()) {
    enc_.encode(solver_);
  }

  GlResult run() {
    GlResult r;
    try {
      std::vector<Lit> core;
      auto root = search({enc_.lit(f_, false)}, core);
      r.sat_calls = sat_calls_;
      if (root) {
        r.outcome = Outcome::Refuted;
        r.countermodel = extract(*root);
        if (!r.countermodel->transitive_irreflexive() || r.countermodel->holds(f_))
          throw std::logic_error("GL search produced an invalid countermodel for " + to_text(f_));
      } else {
        r.outcome = Outcome::Established;
        GlProof p;
        p.formula = f_;
        for (const auto& [tb, a] : lemmas_) {
          ProofLemma l;
          for (int b : tb) l.boxes.push_back(enc_.closure[static_cast<std::size_t>(enc_.boxes[static_cast<std::size_t>(b)])]);
          l.goal_box = enc_.closure[static_cast<std::size_t>(enc_.boxes[static_cast<std::size_t>(a)])];
          p.lemmas.push_back(std::move(l));
        }
        r.proof = std::move(p);
      }
    } catch (const BudgetExceeded&) {
      r.outcome = Outcome::Undecided;
      r.sat_calls = sat_calls_;
      r.note = "GL search exceeded " + std::to_string(budget_) + " SAT calls";
    }
    return r;
  }

 private:
  struct World {
    std::vector<std::uint32_t> atoms;
    std::vector<int> children;
  };

  Modal f_;
  Encoding enc_;
  sat::Solver solver_;
  std::uint64_t budget_;
  std::uint64_t sat_calls_ = 0;
  std::vector<World> worlds_;
  std::vector<std::vector<std::pair<Bits, int>>> memo_;  // per box: satisfiable child sets
  std::vector<std::pair<std::vector<int>, int>> lemmas_;

  std::optional<int> search(const std::vector<Lit>& assumptions, std::vector<Lit>& core) {
    const std::size_t nboxes = enc_.boxes.size();
    while (true) {
      if (++sat_calls_ > budget_) throw BudgetExceeded{};
      if (!solver_.solve(assumptions)) {
        core = solver_.core();
        return std::nullopt;
      }
      Bits tb(nboxes);
      std::vector<int> tb_list, fb_list;
      for (std::size_t b = 0; b < nboxes; ++b) {
        if (solver_.model_value(enc_.boxes[b])) {
          tb.set(b);
          tb_list.push_back(static_cast<int>(b));
        } else {
          fb_list.push_back(static_cast<int>(b));
        }
      }
      World w;
      for (std::size_t i = 0; i < enc_.closure.size(); ++i)
        if (enc_.closure[i].kind() == MKind::Atom && solver_.model_value(static_cast<int>(i)))
          w.atoms.push_back(enc_.closure[i].atom());
      bool restart = false;
      for (int a : fb_list) {
        int found = -1;
        for (const auto& [bits, wid] : memo_[static_cast<std::size_t>(a)])
          if (tb.subset_of(bits)) {
            found = wid;
            break;
          }
        if (found >= 0) {
          w.children.push_back(found);
          continue;
        }
        std::vector<Lit> child_core;
        auto child = search(enc_.child_assumptions(tb_list, a), child_core);
        if (!child) {
          std::vector<int> tb_core;
          for (int b : tb_list) {
            Lit c = enc_.lit(enc_.inner(b)), bb = enc_.lit(enc_.boxes[static_cast<std::size_t>(b)]);
            if (std::find(child_core.begin(), child_core.end(), c) != child_core.end() ||
                std::find(child_core.begin(), child_core.end(), bb) != child_core.end())
              tb_core.push_back(b);
          }
          solver_.add_clause(enc_.lemma_clause(tb_core, a));
          lemmas_.emplace_back(std::move(tb_core), a);
          restart = true;
          break;
        }
        memo_[static_cast<std::size_t>(a)].emplace_back(tb, *child);
        w.children.push_back(*child);
      }
      if (restart) continue;
      worlds_.push_back(std::move(w));
      return static_cast<int>(worlds_.size()) - 1;
    }
  }

  KripkeModel extract(int root) const {
    std::unordered_map<int, int> id;
    std::vector<int> order{root};
    id[root] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (int c : worlds_[static_cast<std::size_t>(order[k])].children)
        if (id.emplace(c, static_cast<int>(order.size())).second) order.push_back(c);
    KripkeModel m;
    m.worlds = order.size();
    m.succ.assign(m.worlds, {});
    m.truths.assign(m.worlds, {});
    for (std::size_t k = 0; k < order.size(); ++k) {
      // Transitive closure by DFS over the (acyclic) child graph.
      std::vector<char> seen(order.size(), 0);
      std::vector<int> stack(worlds_[static_cast<std::size_t>(order[k])].children);
      while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        int j = id.at(w);
        if (seen[static_cast<std::size_t>(j)]) continue;
        seen[static_cast<std::size_t>(j)] = 1;
        for (int c : worlds_[static_cast<std::size_t>(w)].children) stack.push_back(c);
      }
      for (std::size_t j = 0; j < order.size(); ++j)
        if (seen[j]) m.succ[k].push_back(static_cast<int>(j));
      for (std::uint32_t a : worlds_[static_cast<std::size_t>(order[k])].atoms) m.truths[k].push_back(atom_name(a));
      std::sort(m.truths[k].begin(), m.truths[k].end());
    }
    return m;
  }
};

}  // namespace

std::uint64_t default_budget() {
  if (const char* env = std::getenv("PTLAB_GL_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

nlohmann::json GlProof::to_json() const {
  nlohmann::json ls = nlohmann::json::array();
  for (const auto& l : lemmas) {
    nlohmann::json prem = nlohmann::json::array();
    for (Modal b : l.boxes) prem.push_back(to_text(b));
    ls.push_back({{"from", prem}, {"infer", to_text(l.goal_box)}});
  }
  return {{"formula", to_text(formula)}, {"lemmas", ls}};
}

Verdict GlResult::verdict(std::string claim) const {
  Verdict v;
  v.claim = std::move(claim);
  v.outcome = outcome;
  v.scope = "skeleton-level (GL)";
  if (!note.empty()) v.notes.push_back(note);
  if (proof) v.witness = nlohmann::json{{"gl_proof", proof->to_json()}};
  if (countermodel) v.witness = nlohmann::json{{"countermodel", countermodel->to_json()}};
  return v;
}

GlResult gl_prove(Modal f, const GlOptions& opts) {
  std::uint64_t budget = opts.max_sat_calls ? opts.max_sat_calls : default_budget();
  GlResult r = Prover(f, budget).run();
  if (opts.check_proofs && r.proof && !check_proof(*r.proof))
    throw std::logic_error("GL proof failed its own check for " + to_text(f));
  return r;
}

GlResult gl_entails(std::span<const Modal> premises, Modal goal, const GlOptions& opts) {
  return gl_prove(mimp(mand_all(premises), goal), opts);
}

bool check_proof(const GlProof& proof) {
  Encoding enc(proof.formula);
  sat::Solver s;
  enc.encode(s);
  for (const auto& l : proof.lemmas) {
    auto a_it = enc.index.find(l.goal_box);
    if (a_it == enc.index.end() || l.goal_box.kind() != MKind::Box) return false;
    int a = enc.box_of[static_cast<std::size_t>(a_it->second)];
    std::vector<int> tb;
    for (Modal b : l.boxes) {
      auto it = enc.index.find(b);
      if (it == enc.index.end() || b.kind() != MKind::Box) return false;
      tb.push_back(enc.box_of[static_cast<std::size_t>(it->second)]);
    }
    auto assumptions = enc.child_assumptions(tb, a);
    if (s.solve(assumptions)) return false;
    s.add_clause(enc.lemma_clause(tb, a));
  }
  std::vector<Lit> root{enc.lit(proof.formula, false)};
  return !s.solve(root);
}

LobCheck lob_rule_check(Modal f, const GlOptions& opts) {
  return {gl_prove(mimp(box(f), f), opts), gl_prove(f, opts)};
}

SatResult sat_check(Modal f) {
  if (!f.box_free()) throw PreconditionError("sat_check needs a box-free formula");
  Encoding enc(f);
  sat::Solver s;
  enc.encode(s);
  std::vector<Lit> goal{enc.lit(f)};
  SatResult r;
  r.satisfiable = s.solve(goal);
  if (r.satisfiable) {
    for (std::size_t i = 0; i < enc.closure.size(); ++i)
      if (enc.closure[i].kind() == MKind::Atom)
        r.model.emplace_back(std::string(enc.closure[i].atom_name()), s.model_value(static_cast<int>(i)));
    std::sort(r.model.begin(), r.model.end());
  }
  return r;
}

Modal abstract_boxes(Modal f) {
  std::unordered_map<Modal, Modal> memo;
  auto rec = [&](auto&& self, Modal g) -> Modal {
    if (g.box_free()) return g;
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    Modal r;
    switch (g.kind()) {
      case MKind::Box: {
        char buf[24];
        std::snprintf(buf, sizeof buf, "b_%012llx", static_cast<unsigned long long>(g.hash() & 0xffffffffffffULL));
        r = atom(buf);
        break;
      }
      case MKind::Not:
        r = mnot(self(self, g.lhs()));
        break;
      case MKind::And:
        r = mand(self(self, g.lhs()), self(self, g.rhs()));
        break;
      case MKind::Or:
        r = mor(self(self, g.lhs()), self(self, g.rhs()));
        break;
      case MKind::Imp:
        r = mimp(self(self, g.lhs()), self(self, g.rhs()));
        break;
      default:
        r = g;
    }
    memo.emplace(g, r);
    return r;
  };
  return rec(rec, f);
}

}  // namespace ptlab::gl
