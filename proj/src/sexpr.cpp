#include "ptlab/sexpr.hpp"

#include "ptlab/error.hpp"

#include <cctype>

namespace ptlab {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Formula formula_toplevel() {
    Formula f = formula();
    finish();
    return f;
  }

  Term term_toplevel() {
    Term t = term();
    finish();
    return t;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> binders_;  // innermost last

  void skip() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing input");
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  bool peek_open() {
    skip();
    return pos_ < s_.size() && s_[pos_] == '(';
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string symbol() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !is_space(s_[pos_]) && s_[pos_] != '(' && s_[pos_] != ')') ++pos_;
    if (start == pos_) fail("expected symbol");
    return std::string(s_.substr(start, pos_ - start));
  }

  BigNat number() {
    std::size_t at = pos_;
    std::string sym = symbol();
    for (char c : sym)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("expected number", at);
    return parse_decimal(sym);
  }

  std::uint32_t small_number() {
    std::size_t at = pos_;
    BigNat n = number();
    if (n > 0xffffffU) throw ParseError("variable index too large", at);
    return static_cast<std::uint32_t>(n);
  }

  std::vector<Term> terms_until_close() {
    std::vector<Term> out;
    while (true) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == ')') break;
      out.push_back(term());
    }
    expect(')');
    return out;
  }

  std::uint32_t atom_id(std::span<const AtomSpec> table, std::size_t arity_at, const std::string& name,
                        std::size_t given) {
    auto id = lookup_atom(table, name);
    if (!id) throw ParseError("unknown atom identifier '" + name + "'", arity_at);
    if (table[*id].arity != given) throw ParseError("wrong number of arguments for '" + name + "'", arity_at);
    return *id;
  }

  Term term() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] != '(') {
      std::size_t at = pos_;
      std::string name = symbol();
      for (std::size_t i = binders_.size(); i-- > 0;)
        if (binders_[i] == name) return bound_var(static_cast<std::uint32_t>(binders_.size() - 1 - i));
      throw ParseError("unbound variable '" + name + "'", at);
    }
    ++pos_;
    std::size_t at = pos_;
    std::string head = symbol();
    Term r;
    if (head == "z") {
      r = zero();
    } else if (head == "v") {
      r = free_var(small_number());
    } else if (head == "num") {
      r = numeral(number());
    } else if (head == "s") {
      r = succ(term());
    } else if (head == "e2") {
      r = exp2(term());
    } else if (head == "+") {
      Term a = term();
      r = plus(a, term());
    } else if (head == "*") {
      Term a = term();
      r = times(a, term());
    } else if (head == "fn") {
      std::string name = symbol();
      auto args = terms_until_close();
      auto id = atom_id(kTermFunctions, at, name, args.size());
      return func(static_cast<TermFn>(id), std::move(args));
    } else {
      throw ParseError("unknown term constructor '" + head + "'", at);
    }
    expect(')');
    return r;
  }

  Formula binder_body(bool with_bound, Term* bound) {
    std::string name = symbol();
    if (with_bound) *bound = term();
    binders_.push_back(name);
    Formula body = formula();
    binders_.pop_back();
    return body;
  }

  Formula formula() {
    expect('(');
    std::size_t at = pos_;
    std::string head = symbol();
    Formula r;
    if (head == "top") {
      r = top();
    } else if (head == "bot") {
      r = bot();
    } else if (head == "=" || head == "le") {
      Term a = term();
      Term b = term();
      r = head == "=" ? eq(a, b) : le(a, b);
    } else if (head == "not") {
      r = neg(formula());
    } else if (head == "and" || head == "or" || head == "imp") {
      Formula a = formula();
      Formula b = formula();
      r = head == "and" ? conj(a, b) : head == "or" ? disj(a, b) : implies(a, b);
    } else if (head == "forall" || head == "exists") {
      Formula body = binder_body(false, nullptr);
      r = head == "forall" ? forall(body) : exists(body);
    } else if (head == "ball" || head == "bex") {
      Term bound;
      Formula body = binder_body(true, &bound);
      r = head == "ball" ? bforall(bound, body) : bexists(bound, body);
    } else if (head == "sent") {
      r = sentence_of(term());
    } else if (head == "datom" || head == "mem") {
      std::string name = symbol();
      auto args = terms_until_close();
      if (head == "datom") {
        auto id = atom_id(kDecidableAtoms, at, name, args.size());
        return decidable(static_cast<DecidableId>(id), std::move(args));
      }
      auto id = atom_id(kEnumerators, at, name, args.size());
      return membership(static_cast<EnumeratorId>(id), std::move(args));
    } else if (head == "pr") {
      std::vector<std::string> saved;
      saved.swap(binders_);
      Formula templ = formula();
      binders_.swap(saved);
      auto args = terms_until_close();
      try {
        return provable(templ, std::move(args));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), at);
      }
    } else {
      throw ParseError("unknown formula constructor '" + head + "'", at);
    }
    expect(')');
    return r;
  }
};

void print_term(const Term& t, std::uint32_t depth, std::string& out) {
  switch (t.kind()) {
    case TermKind::Numeral:
      if (t.value() == 0) {
        out += "(z)";
      } else {
        out += "(num ";
        out += to_decimal(t.value());
        out += ')';
      }
      return;
    case TermKind::Bound:
      out += 'x';
      out += std::to_string(depth - 1 - t.index());
      return;
    case TermKind::Free:
      out += "(v ";
      out += std::to_string(t.index());
      out += ')';
      return;
    case TermKind::Succ:
      out += "(s ";
      break;
    case TermKind::Plus:
      out += "(+ ";
      break;
    case TermKind::Times:
      out += "(* ";
      break;
    case TermKind::Exp2:
      out += "(e2 ";
      break;
    case TermKind::Func:
      out += "(fn ";
      out += kTermFunctions[t.index()].name;
      out += ' ';
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ' ';
    print_term(t.arg(i), depth, out);
  }
  out += ')';
}

void print_formula(const Formula& f, std::uint32_t depth, std::string& out) {
  auto args = [&](std::string_view head) {
    out += '(';
    out += head;
    for (Term t : f.terms()) {
      out += ' ';
      print_term(t, depth, out);
    }
    out += ')';
  };
  auto binary = [&](std::string_view head) {
    out += '(';
    out += head;
    out += ' ';
    print_formula(f.sub(0), depth, out);
    out += ' ';
    print_formula(f.sub(1), depth, out);
    out += ')';
  };
  auto binder = [&](std::string_view head) {
    out += '(';
    out += head;
    out += " x";
    out += std::to_string(depth);
    out += ' ';
    if (f.num_terms() == 1) {
      print_term(f.term(0), depth, out);
      out += ' ';
    }
    print_formula(f.sub(0), depth + 1, out);
    out += ')';
  };
  switch (f.kind()) {
    case FormulaKind::Top:
      out += "(top)";
      return;
    case FormulaKind::Bot:
      out += "(bot)";
      return;
    case FormulaKind::Eq:
      return args("=");
    case FormulaKind::Le:
      return args("le");
    case FormulaKind::Sentence:
      return args("sent");
    case FormulaKind::Decidable:
      return args(std::string("datom ") + std::string(kDecidableAtoms[f.index()].name));
    case FormulaKind::Membership:
      return args(std::string("mem ") + std::string(kEnumerators[f.index()].name));
    case FormulaKind::Not:
      out += "(not ";
      print_formula(f.sub(0), depth, out);
      out += ')';
      return;
    case FormulaKind::And:
      return binary("and");
    case FormulaKind::Or:
      return binary("or");
    case FormulaKind::Imp:
      return binary("imp");
    case FormulaKind::Forall:
      return binder("forall");
    case FormulaKind::Exists:
      return binder("exists");
    case FormulaKind::BForall:
      return binder("ball");
    case FormulaKind::BExists:
      return binder("bex");
    case FormulaKind::Provability:
      out += "(pr ";
      print_formula(f.templ(), 0, out);
      for (Term t : f.terms()) {
        out += ' ';
        print_term(t, depth, out);
      }
      out += ')';
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula_toplevel(); }
Term parse_term(std::string_view text) { return Parser(text).term_toplevel(); }

std::string print(Formula f) {
  std::string out;
  print_formula(f, 0, out);
  return out;
}

std::string print(Term t) {
  std::string out;
  print_term(t, 0, out);
  return out;
}

}  // namespace ptlab
