#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ptlab {

using BigNat = boost::multiprecision::cpp_int;

std::size_t bit_length(const BigNat& n);
bool bit_at(const BigNat& n, std::size_t i);
std::uint64_t hash_bignat(const BigNat& n);
std::string to_decimal(const BigNat& n);
// Accepts decimal digits only; throws ptlab::Error otherwise.
BigNat parse_decimal(std::string_view digits);

inline std::uint64_t mix_hash(std::uint64_t seed, std::uint64_t v) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_string(std::string_view s);

// MSB-first bit string with a conversion to the natural number "1 b0 b1 ...".
class BitWriter {
 public:
  void put(bool b) { bits_.push_back(b ? 1 : 0); }
  void put_bits(std::uint64_t value, unsigned width);
  // Elias gamma code of n >= 1.
  void put_gamma(const BigNat& n);
  void put_gamma(std::uint64_t n);
  std::size_t size() const { return bits_.size(); }
  BigNat to_number() const;

 private:
  std::vector<std::uint8_t> bits_;
};

class BitReader {
 public:
  // Reads the bits after the leading 1 of n; n must be >= 1.
  explicit BitReader(const BigNat& n);
  bool done() const { return pos_ == bits_.size(); }
  bool get();
  std::uint64_t get_bits(unsigned width);
  BigNat get_gamma();
  std::uint64_t get_gamma_small();

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t pos_ = 0;
};

}  // namespace ptlab
