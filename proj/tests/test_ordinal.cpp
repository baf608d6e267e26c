#include "ptlab/error.hpp"
#include "ptlab/evaluate.hpp"
#include "ptlab/ordinal.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ptlab;
using ordinal::Ordinal;

namespace {

Ordinal ord(const char* s) { return Ordinal::parse(s); }

std::vector<Ordinal> sample(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  Ordinal ceiling = ord("w^(w^2)");
  std::vector<Ordinal> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(ordinal::random_below(ceiling, rng));
  return out;
}

}  // namespace

TEST_CASE("ordinal text syntax") {
  CHECK(ord("0").is_zero());
  CHECK(ord("5") == Ordinal::finite(5));
  CHECK(ord("w") == Ordinal::omega());
  for (const char* s : {"0", "1", "w", "w+1", "w*2+3", "w^w*2+w*3+5", "w^(w+1)", "w^(w^w)", "w^2*7"})
    CHECK(ord(s).str() == s);
  CHECK_THROWS_AS(ord("1+w"), ParseError);
  CHECK_THROWS_AS(ord("w+w"), ParseError);
  CHECK_THROWS_AS(ord("w*0"), ParseError);
  CHECK_THROWS_AS(ord("v"), ParseError);
}

TEST_CASE("compare examples") {
  CHECK(ord("0") < ord("1"));
  CHECK(ord("w*2+3") < ord("w*3"));
  CHECK(ord("w^w") > ord("w^5*100"));
  CHECK(ord("w+1") == ord("w+1"));
}

TEST_CASE("classify_ord and successor") {
  CHECK(ordinal::classify_ord(ord("0")) == ordinal::OrdClass::Zero);
  CHECK(ordinal::classify_ord(ord("w")) == ordinal::OrdClass::Limit);
  CHECK(ordinal::classify_ord(ord("w+5")) == ordinal::OrdClass::Successor);
  CHECK(ord("w+5").predecessor() == ord("w+4"));
  CHECK(ord("0").successor() == ord("1"));
  CHECK(ord("w").successor() == ord("w+1"));
  for (const Ordinal& a : sample(7, 1000)) {
    CHECK(a < a.successor());
    CHECK(a.successor().is_successor());
    CHECK(a.successor().predecessor() == a);
    int kinds = int(a.is_zero()) + int(a.is_successor()) + int(a.is_limit());
    CHECK(kinds == 1);
  }
}

TEST_CASE("order is a strict total order on samples") {
  auto xs = sample(1, 30000);
  for (std::size_t i = 0; i + 2 < xs.size(); i += 3) {
    const Ordinal &a = xs[i], &b = xs[i + 1], &c = xs[i + 2];
    int rel = int(a < b) + int(a == b) + int(a > b);
    CHECK(rel == 1);
    CHECK_FALSE(a < a);
    if (a < b && b < c) CHECK(a < c);
    if (a > b && b > c) CHECK(a > c);
    CHECK(a.is_canonical());
  }
}

TEST_CASE("predecessors_below") {
  CHECK(ordinal::predecessors_below(ord("3"), ordinal::kUnbounded) ==
        std::vector<Ordinal>{ord("0"), ord("1"), ord("2")});
  CHECK(ordinal::predecessors_below(ord("0"), ordinal::kUnbounded).empty());
  for (const char* s : {"w", "w*2", "w+1", "w^w", "w^(w+1)*3+2"}) {
    auto ps = ordinal::predecessors_below(ord(s), 16);
    CHECK(ps.size() <= 16);
    CHECK(std::is_sorted(ps.begin(), ps.end()));
    for (const auto& b : ps) CHECK(b < ord(s));
    CHECK(ps == ordinal::predecessors_below(ord(s), 16));
  }
  for (const Ordinal& a : sample(9, 1000)) {
    if (a.is_zero()) continue;
    for (const auto& b : ordinal::predecessors_below(a, 8)) CHECK(b < a);
  }
}

TEST_CASE("no long descending chains below w^w") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Ordinal a = ordinal::random_below(ord("w^w"), rng);
    std::size_t steps = 0;
    while (!a.is_zero()) {
      Ordinal b = ordinal::random_below(a, rng);
      REQUIRE(b < a);
      a = b;
      REQUIRE(++steps < 10000);
    }
  }
}

TEST_CASE("codes and decidable atoms") {
  auto atoms = ordinal::as_decidable_atoms();
  auto lt = atoms.lt(numeral(ordinal::encode(ord("0"))), numeral(ordinal::encode(ord("1"))));
  CHECK(eval_sentence(lt) == std::optional<bool>(true));
  for (const Ordinal& a : sample(4, 500)) CHECK(ordinal::decode(ordinal::encode(a)) == a);

  // Unsorted CNF: w^0 + w^1, i.e. 1 + w written as a raw term list.
  BitWriter w;
  w.put(true);
  w.put(false);
  w.put_gamma(std::uint64_t{1});
  w.put(true);
  w.put(true);
  w.put(false);
  w.put_gamma(std::uint64_t{1});
  w.put(false);
  w.put_gamma(std::uint64_t{1});
  w.put(false);
  BigNat bad = w.to_number();
  REQUIRE(ordinal::decode_raw(bad).has_value());
  CHECK_FALSE(ordinal::decode(bad).has_value());
  CHECK(eval_sentence(atoms.d(numeral(bad))) == std::optional<bool>(false));
  CHECK(eval_sentence(atoms.d(numeral(ordinal::encode(ord("w+1"))))) == std::optional<bool>(true));
}

TEST_CASE("lt evaluator agrees with compare on random numerals") {
  std::mt19937_64 rng(5);
  auto xs = sample(6, 200);
  auto random_code = [&]() -> BigNat {
    if (rng() % 4 == 0) return BigNat(rng() % 5000);
    return ordinal::encode(xs[rng() % xs.size()]);
  };
  for (int i = 0; i < 10000; ++i) {
    BigNat x = random_code(), y = random_code();
    auto a = ordinal::decode(x), b = ordinal::decode(y);
    bool expected = a && b && *a < *b;
    BigNat args[2] = {x, y};
    CHECK(ordinal::eval_atom(DecidableId::OrdLt, args) == expected);
  }
}
