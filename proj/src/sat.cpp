#include "ptlab/sat.hpp"

#include <algorithm>

namespace ptlab::sat {

Var Solver::new_var(bool default_phase) {
  Var v = num_vars();
  assigns_.push_back(kUndef);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(default_phase ? 1 : 0);
  activity_.push_back(0.0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_pos_.push_back(-1);
  heap_insert(v);
  return v;
}

void Solver::heap_insert(Var v) {
  if (heap_pos_[static_cast<std::size_t>(v)] >= 0) return;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(static_cast<int>(heap_.size()) - 1);
}

void Solver::heap_up(int i) {
  int v = heap_[static_cast<std::size_t>(i)];
  while (i > 0) {
    int parent = (i - 1) / 2;
    if (!heap_less(v, heap_[static_cast<std::size_t>(parent)])) break;
    heap_[static_cast<std::size_t>(i)] = heap_[static_cast<std::size_t>(parent)];
    heap_pos_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(i)])] = i;
    i = parent;
  }
  heap_[static_cast<std::size_t>(i)] = v;
  heap_pos_[static_cast<std::size_t>(v)] = i;
}

void Solver::heap_down(int i) {
  int v = heap_[static_cast<std::size_t>(i)];
  int n = static_cast<int>(heap_.size());
  while (true) {
    int child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[static_cast<std::size_t>(child + 1)], heap_[static_cast<std::size_t>(child)])) ++child;
    if (!heap_less(heap_[static_cast<std::size_t>(child)], v)) break;
    heap_[static_cast<std::size_t>(i)] = heap_[static_cast<std::size_t>(child)];
    heap_pos_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(i)])] = i;
    i = child;
  }
  heap_[static_cast<std::size_t>(i)] = v;
  heap_pos_[static_cast<std::size_t>(v)] = i;
}

Var Solver::heap_pop() {
  Var v = heap_.front();
  heap_pos_[static_cast<std::size_t>(v)] = -1;
  Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[static_cast<std::size_t>(last)] = 0;
    heap_down(0);
  }
  return v;
}

void Solver::bump(Var v) {
  auto& a = activity_[static_cast<std::size_t>(v)];
  a += var_inc_;
  if (a > 1e100) {
    for (auto& x : activity_) x *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (int pos = heap_pos_[static_cast<std::size_t>(v)]; pos >= 0) heap_up(pos);
}

void Solver::attach(int cref) {
  const auto& c = clauses_[static_cast<std::size_t>(cref)];
  watches_[static_cast<std::size_t>((~c[0]).x)].push_back({cref, c[1]});
  watches_[static_cast<std::size_t>((~c[1]).x)].push_back({cref, c[0]});
}

void Solver::assign(Lit l, int reason) {
  auto v = static_cast<std::size_t>(l.var());
  assigns_[v] = l.negated() ? kFalse : kTrue;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

bool Solver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  backtrack(0);
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    Lit l = lits[i];
    if (value(l) == kTrue) return true;
    if (i + 1 < lits.size() && lits[i + 1] == ~l) return true;
    if (value(l) == kFalse) continue;
    if (!out.empty() && out.back() == l) continue;
    out.push_back(l);
  }
  if (out.empty()) return ok_ = false;
  if (out.size() == 1) {
    assign(out[0], -1);
    if (propagate() >= 0) ok_ = false;
    return ok_;
  }
  clauses_.push_back(std::move(out));
  attach(static_cast<int>(clauses_.size()) - 1);
  return true;
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    auto& ws = watches_[static_cast<std::size_t>(p.x)];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watch w = ws[i];
      if (value(w.blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      auto& c = clauses_[static_cast<std::size_t>(w.clause)];
      Lit false_lit = ~p;
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      ++i;
      Watch kept{w.clause, c[0]};
      if (c[0] != w.blocker && value(c[0]) == kTrue) {
        ws[j++] = kept;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[static_cast<std::size_t>((~c[1]).x)].push_back(kept);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = kept;
      if (value(c[0]) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return w.clause;
      }
      assign(c[0], w.clause);
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& back_level) {
  learnt.assign(1, Lit{});
  int pending = 0;
  Lit p{};
  std::size_t index = trail_.size();
  std::vector<Var> touched;
  do {
    const auto& c = clauses_[static_cast<std::size_t>(confl)];
    for (Lit q : c) {
      if (p.x != -2 && q.var() == p.var()) continue;
      auto v = static_cast<std::size_t>(q.var());
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      touched.push_back(q.var());
      bump(q.var());
      if (level_[v] >= decision_level()) {
        ++pending;
      } else {
        learnt.push_back(q);
      }
    }
    while (!seen_[static_cast<std::size_t>(trail_[--index].var())]) {
    }
    p = trail_[index];
    confl = reason_[static_cast<std::size_t>(p.var())];
    seen_[static_cast<std::size_t>(p.var())] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = ~p;
  for (Var v : touched) seen_[static_cast<std::size_t>(v)] = 0;
  back_level = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    int lv = level_[static_cast<std::size_t>(learnt[k].var())];
    if (lv > back_level) {
      back_level = lv;
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  var_inc_ *= 1.0 / 0.95;
}

void Solver::analyze_final(Lit failed) {
  // failed is an assumption currently assigned false; collect the assumptions implying ~failed.
  core_.clear();
  core_.push_back(failed);
  if (decision_level() == 0) return;
  seen_[static_cast<std::size_t>(failed.var())] = 1;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
    Var v = trail_[i].var();
    auto uv = static_cast<std::size_t>(v);
    if (!seen_[uv]) continue;
    if (reason_[uv] < 0) {
      if (level_[uv] > 0) core_.push_back(trail_[i]);
    } else {
      for (Lit q : clauses_[static_cast<std::size_t>(reason_[uv])])
        if (level_[static_cast<std::size_t>(q.var())] > 0) seen_[static_cast<std::size_t>(q.var())] = 1;
    }
    seen_[uv] = 0;
  }
  seen_[static_cast<std::size_t>(failed.var())] = 0;
}

void Solver::backtrack(int level) {
  if (decision_level() <= level) return;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]);) {
    auto v = static_cast<std::size_t>(trail_[i].var());
    phase_[v] = assigns_[v] == kTrue ? 1 : 0;
    assigns_[v] = kUndef;
    reason_[v] = -1;
    heap_insert(trail_[i].var());
  }
  trail_.resize(static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]));
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

bool Solver::solve(std::span<const Lit> assumptions) {
  core_.clear();
  if (!ok_) return false;
  backtrack(0);
  if (propagate() >= 0) return ok_ = false;
  std::vector<Lit> learnt;
  std::uint64_t restart_at = 100;
  std::uint64_t since_restart = 0;
  while (true) {
    int confl = propagate();
    if (confl >= 0) {
      ++conflicts_;
      ++since_restart;
      if (decision_level() == 0) return ok_ = false;
      int back_level = 0;
      analyze(confl, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        assign(learnt[0], -1);
      } else {
        clauses_.push_back(learnt);
        int cref = static_cast<int>(clauses_.size()) - 1;
        attach(cref);
        assign(learnt[0], cref);
      }
      continue;
    }
    if (since_restart >= restart_at) {
      since_restart = 0;
      restart_at += restart_at / 2;
      backtrack(0);
      continue;
    }
    Lit next{};
    while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
      Lit a = assumptions[static_cast<std::size_t>(decision_level())];
      if (value(a) == kTrue) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (value(a) == kFalse) {
        analyze_final(a);
        backtrack(0);
        return false;
      } else {
        next = a;
        break;
      }
    }
    if (next.x == -2) {
      while (!heap_.empty()) {
        Var v = heap_pop();
        if (assigns_[static_cast<std::size_t>(v)] == kUndef) {
          next = Lit::make(v, phase_[static_cast<std::size_t>(v)] == 0);
          break;
        }
      }
      if (next.x == -2) {
        model_.assign(assigns_.begin(), assigns_.end());
        backtrack(0);
        return true;
      }
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    assign(next, -1);
  }
}

}  // namespace ptlab::sat
