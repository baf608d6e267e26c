#pragma once

// Small CDCL solver: two watched literals, first-UIP learning, VSIDS, phase saving,
// incremental solving under assumptions with a final-conflict core.

#include <cstdint>
#include <span>
#include <vector>

namespace ptlab::sat {

using Var = int;

struct Lit {
  int x = -2;

  static Lit make(Var v, bool negated = false) { return Lit{2 * v + (negated ? 1 : 0)}; }
  Var var() const { return x >> 1; }
  bool negated() const { return (x & 1) != 0; }
  Lit operator~() const { return Lit{x ^ 1}; }
  bool operator==(const Lit&) const = default;
  auto operator<=>(const Lit&) const = default;
};

class Solver {
 public:
  Var new_var(bool default_phase = false);
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  // Returns false once the clause set is unsatisfiable without assumptions.
  bool add_clause(std::vector<Lit> lits);
  bool solve(std::span<const Lit> assumptions = {});

  bool model_value(Var v) const { return model_[static_cast<std::size_t>(v)] != 0; }
  bool model_value(Lit l) const { return model_value(l.var()) != l.negated(); }
  // After an unsatisfiable solve: the assumptions that together are inconsistent.
  const std::vector<Lit>& core() const { return core_; }

  std::uint64_t conflicts() const { return conflicts_; }

 private:
  enum : std::int8_t { kFalse = 0, kTrue = 1, kUndef = 2 };
  struct Watch {
    int clause;
    Lit blocker;
  };

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<Watch>> watches_;  // indexed by literal
  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<std::int8_t> phase_;
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<int> heap_;      // binary max-heap of vars by activity
  std::vector<int> heap_pos_;  // -1 when absent
  std::vector<std::int8_t> seen_;
  std::vector<std::int8_t> model_;
  std::vector<Lit> core_;
  double var_inc_ = 1.0;
  bool ok_ = true;
  std::uint64_t conflicts_ = 0;

  std::int8_t value(Lit l) const {
    std::int8_t a = assigns_[static_cast<std::size_t>(l.var())];
    return a == kUndef ? kUndef : static_cast<std::int8_t>(a ^ (l.negated() ? 1 : 0));
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void assign(Lit l, int reason);
  int propagate();
  void analyze(int confl, std::vector<Lit>& learnt, int& back_level);
  void analyze_final(Lit failed);
  void backtrack(int level);
  void attach(int cref);
  void bump(Var v);
  void heap_insert(Var v);
  void heap_up(int i);
  void heap_down(int i);
  Var heap_pop();
  bool heap_less(int a, int b) const { return activity_[static_cast<std::size_t>(a)] > activity_[static_cast<std::size_t>(b)]; }
};

}  // namespace ptlab::sat
