#include "ptlab/diagonal.hpp"

#include "ptlab/error.hpp"
#include "ptlab/godel.hpp"
#include "ptlab/sexpr.hpp"

#include <algorithm>
#include <unordered_map>

namespace ptlab::diagonal {

namespace {

bool occurs(Formula f, std::uint32_t var) { return substitute(f, var, zero()) != f; }

Term diag_term(std::uint32_t hole, Term code) { return sub_term(code, numeral(hole), code); }

// Replaces every occurrence of the closed term `from` outside provability templates.
class TermReplacer {
 public:
  TermReplacer(Term from, Term to) : from_(from), to_(to) {}

  Term term(Term t) {
    if (t == from_) return to_;
    if (t.arity() == 0) return t;
    if (auto it = terms_.find(t); it != terms_.end()) return it->second;
    Term r;
    auto a = [&](std::size_t i) { return term(t.arg(i)); };
    switch (t.kind()) {
      case TermKind::Succ:
        r = succ(a(0));
        break;
      case TermKind::Plus:
        r = plus(a(0), a(1));
        break;
      case TermKind::Times:
        r = times(a(0), a(1));
        break;
      case TermKind::Exp2:
        r = exp2(a(0));
        break;
      case TermKind::Func: {
        std::vector<Term> args;
        for (std::size_t i = 0; i < t.arity(); ++i) args.push_back(a(i));
        r = func(static_cast<TermFn>(t.index()), std::move(args));
        break;
      }
      default:
        r = t;
    }
    terms_.emplace(t, r);
    return r;
  }

  Formula formula(Formula f) {
    if (auto it = formulas_.find(f); it != formulas_.end()) return it->second;
    std::vector<Term> ts;
    for (Term t : f.terms()) ts.push_back(term(t));
    auto s = [&](std::size_t i) { return formula(f.sub(i)); };
    Formula r;
    switch (f.kind()) {
      case FormulaKind::Top:
      case FormulaKind::Bot:
        r = f;
        break;
      case FormulaKind::Eq:
        r = eq(ts[0], ts[1]);
        break;
      case FormulaKind::Le:
        r = le(ts[0], ts[1]);
        break;
      case FormulaKind::Not:
        r = neg(s(0));
        break;
      case FormulaKind::And:
        r = conj(s(0), s(1));
        break;
      case FormulaKind::Or:
        r = disj(s(0), s(1));
        break;
      case FormulaKind::Imp:
        r = implies(s(0), s(1));
        break;
      case FormulaKind::Forall:
        r = forall(s(0));
        break;
      case FormulaKind::Exists:
        r = exists(s(0));
        break;
      case FormulaKind::BForall:
        r = bforall(ts[0], s(0));
        break;
      case FormulaKind::BExists:
        r = bexists(ts[0], s(0));
        break;
      case FormulaKind::Decidable:
        r = decidable(static_cast<DecidableId>(f.index()), std::move(ts));
        break;
      case FormulaKind::Provability:
        r = provable(f.templ(), std::move(ts));
        break;
      case FormulaKind::Membership:
        r = membership(static_cast<EnumeratorId>(f.index()), std::move(ts));
        break;
      case FormulaKind::Sentence:
        r = sentence_of(ts[0]);
        break;
    }
    formulas_.emplace(f, r);
    return r;
  }

 private:
  Term from_, to_;
  std::unordered_map<Term, Term> terms_;
  std::unordered_map<Formula, Formula> formulas_;
};

FixedPointCertificate build(Formula templ, std::uint32_t hole, std::vector<std::uint32_t> params) {
  if (templ.loose() != 0) throw PreconditionError("fixed point: template has loose bound variables");
  if (!occurs(templ, hole)) throw PreconditionError("fixed point: hole v" + std::to_string(hole) + " does not occur");
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  if (std::binary_search(params.begin(), params.end(), hole))
    throw PreconditionError("fixed point: hole listed as a parameter");
  for (std::uint32_t v = 0; v < templ.free_end(); ++v) {
    if (v == hole || std::binary_search(params.begin(), params.end(), v)) continue;
    if (occurs(templ, v)) throw PreconditionError("fixed point: unexpected free variable v" + std::to_string(v));
  }

  FixedPointCertificate c;
  c.templ = templ;
  c.hole = hole;
  c.params = std::move(params);
  c.core = substitute(templ, hole, diag_term(hole, free_var(hole)));
  c.core_code = godel_encode(c.core);
  Term d = numeral(c.core_code);
  c.result = substitute(c.core, hole, d);
  c.diagonal_term = diag_term(hole, d);
  c.result_code = godel_encode(c.result);
  return c;
}

Verdict fail(const std::string& claim, const std::string& why) {
  Verdict v;
  v.outcome = Outcome::Refuted;
  v.claim = claim;
  v.scope = "syntactic identity";
  v.notes.push_back(why);
  return v;
}

}  // namespace

FixedPointCertificate fixed_point(Formula templ, std::uint32_t hole) { return build(templ, hole, {}); }

FixedPointCertificate fixed_point_2var(Formula templ, std::uint32_t self_hole, std::vector<std::uint32_t> params) {
  if (params.empty()) throw PreconditionError("fixed point: no parameters given");
  for (std::uint32_t p : params)
    if (!occurs(templ, p)) throw PreconditionError("fixed point: parameter v" + std::to_string(p) + " does not occur");
  return build(templ, self_hole, std::move(params));
}

nlohmann::json FixedPointCertificate::trace() const {
  return nlohmann::json::array({
      {{"step", "substitute"}, {"var", hole}, {"term", print(diag_term(hole, free_var(hole)))},
       {"result", print(core)}},
      {{"step", "encode"}, {"formula", "core"}, {"code", to_decimal(core_code)}},
      {{"step", "numeral"}, {"var", hole}, {"value", to_decimal(core_code)}, {"result", print(result)}},
      {{"step", "substitute"}, {"var", hole}, {"term", print(diagonal_term)}, {"evaluates", "sub"}},
      {{"step", "encode"}, {"formula", "result"}, {"code", to_decimal(result_code)}},
      {{"step", "numeral"}, {"var", hole}, {"value", to_decimal(result_code)}, {"into", "template"}},
  });
}

nlohmann::json FixedPointCertificate::to_json() const {
  return {
      {"template", print(templ)},
      {"hole", hole},
      {"params", params},
      {"core", print(core)},
      {"core_code", to_decimal(core_code)},
      {"result", print(result)},
      {"result_code", to_decimal(result_code)},
      {"trace", trace()},
  };
}

Verdict replay(const FixedPointCertificate& cert) {
  const std::string claim = "fixed point certificate replays";
  FixedPointCertificate again;
  try {
    again = build(cert.templ, cert.hole, cert.params);
  } catch (const Error& e) {
    return fail(claim, e.what());
  }
  if (print(again.core) != print(cert.core)) return fail(claim, "substitute: core differs");
  if (again.core_code != cert.core_code) return fail(claim, "encode: core code differs");
  if (print(again.result) != print(cert.result)) return fail(claim, "numeral: result differs");

  BigNat value = eval_sub(again.core_code, again.hole, again.core_code);
  if (value != godel_encode(again.result)) return fail(claim, "sub(d, h, d) is not the code of the result");
  if (value != cert.result_code) return fail(claim, "result code differs");

  // δ with its diagonal term evaluated is the template applied to the numeral of code(δ).
  Formula lhs = TermReplacer(again.diagonal_term, numeral(value)).formula(again.result);
  Formula rhs = substitute(again.templ, again.hole, numeral(value));
  if (print(lhs) != print(rhs)) return fail(claim, "evaluated result differs from template at its own code");

  Verdict v;
  v.outcome = Outcome::Established;
  v.claim = claim;
  v.scope = "syntactic identity";
  v.witness = nlohmann::json{{"result_code", to_decimal(value)}};
  return v;
}

Verdict replay(const nlohmann::json& j) {
  FixedPointCertificate c;
  try {
    c.templ = parse_formula(j.at("template").get<std::string>());
    c.hole = j.at("hole").get<std::uint32_t>();
    c.params = j.at("params").get<std::vector<std::uint32_t>>();
    c.core = parse_formula(j.at("core").get<std::string>());
    c.core_code = parse_decimal(j.at("core_code").get<std::string>());
    c.result = parse_formula(j.at("result").get<std::string>());
    c.result_code = parse_decimal(j.at("result_code").get<std::string>());
  } catch (const std::exception& e) {
    return fail("fixed point certificate replays", std::string("malformed certificate: ") + e.what());
  }
  return replay(c);
}

Formula instantiate(const FixedPointCertificate& cert, std::span<const BigNat> values) {
  if (values.size() != cert.params.size()) throw PreconditionError("fixed point: wrong number of parameter values");
  Formula f = cert.result;
  for (std::size_t i = 0; i < values.size(); ++i) f = substitute(f, cert.params[i], numeral(values[i]));
  return f;
}

Verdict replay_instance(const FixedPointCertificate& cert, std::span<const BigNat> values) {
  const std::string claim = "parametrized fixed point instance replays";
  Verdict base = replay(cert);
  if (!base.established()) return base;
  Formula inst = instantiate(cert, values);
  BigNat code = cert.result_code;
  for (std::size_t i = 0; i < values.size(); ++i) code = eval_sub(code, cert.params[i], values[i]);
  if (code != godel_encode(inst)) return fail(claim, "sub chain does not reach the instance code");
  Verdict v;
  v.outcome = Outcome::Established;
  v.claim = claim;
  v.scope = "syntactic identity";
  v.witness = nlohmann::json{{"instance_code_bits", bit_length(code)}};
  return v;
}

}  // namespace ptlab::diagonal
