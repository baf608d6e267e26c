#include "ptlab/ordinal.hpp"

#include "ptlab/error.hpp"

#include <algorithm>
#include <cctype>

namespace ptlab::ordinal {

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal a;
  if (n > 0) a.terms_.push_back({Ordinal(), n});
  return a;
}

Ordinal Ordinal::omega() { return omega_power(finite(1)); }

Ordinal Ordinal::omega_power(const Ordinal& e, std::uint64_t coeff) {
  if (coeff == 0) throw Error("ordinal coefficient must be positive");
  Ordinal a;
  a.terms_.push_back({e, coeff});
  return a;
}

Ordinal Ordinal::from_terms(std::vector<CnfTerm> terms) {
  Ordinal a;
  a.terms_ = std::move(terms);
  if (!a.is_canonical()) throw Error("ordinal terms are not in Cantor normal form");
  return a;
}

bool Ordinal::is_canonical() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff == 0 || !terms_[i].exponent.is_canonical()) return false;
    if (i > 0 && !(terms_[i].exponent < terms_[i - 1].exponent)) return false;
  }
  return true;
}

bool Ordinal::is_successor() const { return !terms_.empty() && terms_.back().exponent.is_zero(); }

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

std::uint64_t Ordinal::finite_value() const {
  if (!is_finite()) throw Error("ordinal " + str() + " is not finite");
  return terms_.empty() ? 0 : terms_[0].coeff;
}

Ordinal Ordinal::successor() const {
  Ordinal a = *this;
  if (a.is_successor()) {
    ++a.terms_.back().coeff;
  } else {
    a.terms_.push_back({Ordinal(), 1});
  }
  return a;
}

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw Error("ordinal " + str() + " has no predecessor");
  Ordinal a = *this;
  if (--a.terms_.back().coeff == 0) a.terms_.pop_back();
  return a;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& o) const {
  std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = terms_[i].exponent <=> o.terms_[i].exponent; c != 0) return c;
    if (auto c = terms_[i].coeff <=> o.terms_[i].coeff; c != 0) return c;
  }
  return terms_.size() <=> o.terms_.size();
}

bool Ordinal::operator==(const Ordinal& o) const { return (*this <=> o) == 0; }

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const CnfTerm& t = terms_[i];
    if (i) out += '+';
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    out += 'w';
    if (!(t.exponent == finite(1))) {
      out += '^';
      if (t.exponent.is_finite() || t.exponent == omega()) {
        out += t.exponent.str();
      } else {
        out += '(' + t.exponent.str() + ')';
      }
    }
    if (t.coeff > 1) out += '*' + std::to_string(t.coeff);
  }
  return out;
}

namespace {

class TextParser {
 public:
  explicit TextParser(std::string_view s) : s_(s) {}

  Ordinal parse() {
    Ordinal a = sum();
    if (pos_ != s_.size()) throw ParseError("unexpected character in ordinal", pos_);
    return a;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  bool at(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  std::uint64_t number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected number in ordinal", pos_);
    if (pos_ - start > 18) throw ParseError("ordinal coefficient too large", start);
    return std::stoull(std::string(s_.substr(start, pos_ - start)));
  }

  Ordinal exponent() {
    if (at('(')) {
      ++pos_;
      Ordinal e = sum();
      if (!at(')')) throw ParseError("expected ')' in ordinal", pos_);
      ++pos_;
      return e;
    }
    if (at('w')) {
      ++pos_;
      Ordinal e = Ordinal::finite(1);
      if (at('^')) {
        ++pos_;
        e = exponent();
      }
      return Ordinal::omega_power(e);
    }
    return Ordinal::finite(number());
  }

  Ordinal sum() {
    std::vector<CnfTerm> terms;
    std::size_t start = pos_;
    while (true) {
      CnfTerm t;
      if (at('w')) {
        ++pos_;
        t.exponent = Ordinal::finite(1);
        if (at('^')) {
          ++pos_;
          t.exponent = exponent();
        }
        if (at('*')) {
          ++pos_;
          t.coeff = number();
        }
      } else {
        t.coeff = number();
        if (t.coeff == 0) {
          if (terms.empty() && !at('+')) return Ordinal();
          throw ParseError("zero term inside ordinal sum", pos_);
        }
      }
      if (t.coeff == 0) throw ParseError("ordinal coefficient must be positive", pos_);
      terms.push_back(std::move(t));
      if (!at('+')) break;
      ++pos_;
    }
    try {
      return Ordinal::from_terms(std::move(terms));
    } catch (const ParseError&) {
      throw;
    } catch (const Error&) {
      throw ParseError("ordinal is not in Cantor normal form", start);
    }
  }
};

void encode_bits(const Ordinal& a, BitWriter& w) {
  for (const CnfTerm& t : a.terms()) {
    w.put(true);
    encode_bits(t.exponent, w);
    w.put_gamma(t.coeff);
  }
  w.put(false);
}

}  // namespace

Ordinal Ordinal::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.empty()) throw ParseError("empty ordinal", 0);
  return TextParser(compact).parse();
}

OrdClass classify_ord(const Ordinal& a) {
  if (a.is_zero()) return OrdClass::Zero;
  return a.is_successor() ? OrdClass::Successor : OrdClass::Limit;
}

namespace {

Ordinal random_below_power(const Ordinal& e, std::mt19937_64& rng, int depth) {
  // A notation < w^e.
  if (e.is_zero() || depth > 6 || rng() % 4 == 0) return Ordinal();
  Ordinal e2 = random_below(e, rng);
  std::vector<CnfTerm> terms{{e2, 1 + rng() % 4}};
  Ordinal tail = random_below_power(e2, rng, depth + 1);
  for (const CnfTerm& t : tail.terms()) terms.push_back(t);
  return Ordinal::from_terms(std::move(terms));
}

}  // namespace

Ordinal random_below(const Ordinal& a, std::mt19937_64& rng) {
  if (a.is_zero()) throw Error("nothing below zero");
  const auto& ts = a.terms();
  std::size_t i = rng() % ts.size();
  std::vector<CnfTerm> terms(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(i));
  std::uint64_t c = rng() % ts[i].coeff;
  if (c > 0) terms.push_back({ts[i].exponent, c});
  Ordinal tail = random_below_power(ts[i].exponent, rng, 0);
  for (const CnfTerm& t : tail.terms()) terms.push_back(t);
  return Ordinal::from_terms(std::move(terms));
}

std::vector<Ordinal> predecessors_below(const Ordinal& a, std::size_t bound, std::uint64_t seed) {
  std::vector<Ordinal> out;
  if (a.is_finite()) {
    std::uint64_t n = a.finite_value();
    for (std::uint64_t k = 0; k < n && out.size() < bound; ++k) out.push_back(Ordinal::finite(k));
    return out;
  }
  std::size_t target = std::min<std::size_t>(bound, 32);
  std::mt19937_64 rng(seed);
  for (std::uint64_t k = 0; k < 4; ++k) out.push_back(Ordinal::finite(k));
  if (a.is_successor()) out.push_back(a.predecessor());
  for (std::size_t tries = 0; tries < 8 * target; ++tries) out.push_back(random_below(a, rng));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() > target) {
    // Keep an evenly spread subset so large and small predecessors both appear.
    std::vector<Ordinal> picked;
    for (std::size_t k = 0; k < target; ++k) picked.push_back(out[k * out.size() / target]);
    out = std::move(picked);
  }
  return out;
}

BigNat encode(const Ordinal& a) {
  BitWriter w;
  encode_bits(a, w);
  return w.to_number();
}

std::optional<Ordinal> decode_raw(const BigNat& code) {
  if (code < 1) return std::nullopt;
  try {
    BitReader r(code);
    // Built unchecked; canonicity is a separate question.
    auto read = [&](auto&& self, int depth) -> Ordinal {
      if (depth > 64) throw NotAFormulaCode("ordinal nesting too deep");
      Ordinal a;
      while (r.get()) {
        CnfTerm t;
        t.exponent = self(self, depth + 1);
        t.coeff = r.get_gamma_small();
        a.terms_.push_back(std::move(t));
      }
      return a;
    };
    Ordinal a = read(read, 0);
    if (!r.done()) return std::nullopt;
    return a;
  } catch (const NotAFormulaCode&) {
    return std::nullopt;
  }
}

std::optional<Ordinal> decode(const BigNat& code) {
  auto a = decode_raw(code);
  if (!a || !a->is_canonical()) return std::nullopt;
  return a;
}

bool eval_atom(DecidableId id, std::span<const BigNat> args) {
  switch (id) {
    case DecidableId::OrdD:
      return decode(args[0]).has_value();
    case DecidableId::OrdLt: {
      auto a = decode(args[0]), b = decode(args[1]);
      return a && b && *a < *b;
    }
    case DecidableId::OrdZero: {
      auto a = decode(args[0]);
      return a && a->is_zero();
    }
    case DecidableId::OrdSucc: {
      auto a = decode(args[0]), b = decode(args[1]);
      return a && b && a->successor() == *b;
    }
    case DecidableId::OrdLimit: {
      auto a = decode(args[0]);
      return a && a->is_limit();
    }
  }
  return false;
}

}  // namespace ptlab::ordinal
