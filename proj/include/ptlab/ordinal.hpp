#pragma once

// Ordinal notations below epsilon_0 in Cantor normal form:
//   a = w^e1*c1 + ... + w^ek*ck,  e1 > ... > ek,  ci >= 1.
// Text syntax: "0", "5", "w", "w*2+3", "w^w*2+w*3+5", "w^(w+1)".

#include "ptlab/bignat.hpp"
#include "ptlab/formula.hpp"

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ptlab::ordinal {

struct CnfTerm;

class Ordinal {
 public:
  Ordinal() = default;  // zero

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  static Ordinal omega_power(const Ordinal& e, std::uint64_t coeff = 1);
  // Throws ptlab::Error unless terms are in Cantor normal form.
  static Ordinal from_terms(std::vector<CnfTerm> terms);
  static Ordinal parse(std::string_view text);

  const std::vector<CnfTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_successor() const;
  bool is_limit() const { return !is_zero() && !is_successor(); }
  bool is_finite() const;
  std::uint64_t finite_value() const;  // requires is_finite()
  Ordinal successor() const;
  Ordinal predecessor() const;  // requires is_successor()
  bool is_canonical() const;

  std::string str() const;

  std::strong_ordering operator<=>(const Ordinal& o) const;
  bool operator==(const Ordinal& o) const;

 private:
  std::vector<CnfTerm> terms_;
  friend std::optional<Ordinal> decode_raw(const BigNat& code);
};

struct CnfTerm {
  Ordinal exponent;
  std::uint64_t coeff = 1;
};

enum class OrdClass { Zero, Successor, Limit };
OrdClass classify_ord(const Ordinal& a);

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

// Finite a = n: exactly 0..n-1 (truncated to bound). Otherwise a fixed-seed sample below a,
// ascending and duplicate-free, of size <= bound.
std::vector<Ordinal> predecessors_below(const Ordinal& a, std::size_t bound, std::uint64_t seed = 0x5eed);

// Uniform-ish random notation strictly below a (a must be nonzero).
Ordinal random_below(const Ordinal& a, std::mt19937_64& rng);

// Codes: bits "1 <exponent> gamma(coeff)" per term, then "0"; the number is "1" followed by the bits.
BigNat encode(const Ordinal& a);
// Any well-formed bit string, canonical or not; nullopt for malformed codes.
std::optional<Ordinal> decode_raw(const BigNat& code);
// Only canonical notations.
std::optional<Ordinal> decode(const BigNat& code);

// Standard-model evaluators of the ordinal decidable atoms on numeral arguments.
bool eval_atom(DecidableId id, std::span<const BigNat> args);

struct DecidableAtoms {
  Formula d(Term x) const { return decidable(DecidableId::OrdD, {x}); }
  Formula lt(Term x, Term y) const { return decidable(DecidableId::OrdLt, {x, y}); }
  Formula is_zero(Term x) const { return decidable(DecidableId::OrdZero, {x}); }
  Formula succ(Term x, Term y) const { return decidable(DecidableId::OrdSucc, {x, y}); }
  Formula limit(Term x) const { return decidable(DecidableId::OrdLimit, {x}); }
};
inline DecidableAtoms as_decidable_atoms() { return {}; }

}  // namespace ptlab::ordinal
