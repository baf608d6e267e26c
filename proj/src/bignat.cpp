#include "ptlab/bignat.hpp"

#include "ptlab/error.hpp"

#include <iterator>

namespace ptlab {

std::size_t bit_length(const BigNat& n) {
  if (n <= 0) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(n)) + 1;
}

bool bit_at(const BigNat& n, std::size_t i) {
  return boost::multiprecision::bit_test(n, static_cast<unsigned>(i));
}

std::uint64_t hash_bignat(const BigNat& n) {
  std::uint64_t h = 0x5bd1e995ULL;
  const auto& be = n.backend();
  for (std::size_t i = 0; i < be.size(); ++i) h = mix_hash(h, static_cast<std::uint64_t>(be.limbs()[i]));
  return mix_hash(h, be.size());
}

std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_decimal(const BigNat& n) { return n.str(); }

BigNat parse_decimal(std::string_view digits) {
  if (digits.empty()) throw Error("empty number");
  BigNat r = 0;
  // Chunk 18 digits at a time; keeps long literals linear-ish.
  std::size_t i = 0;
  while (i < digits.size()) {
    std::size_t len = std::min<std::size_t>(18, digits.size() - i);
    std::uint64_t chunk = 0, scale = 1;
    for (std::size_t k = 0; k < len; ++k) {
      char c = digits[i + k];
      if (c < '0' || c > '9') throw Error("invalid digit in number");
      chunk = chunk * 10 + static_cast<std::uint64_t>(c - '0');
      scale *= 10;
    }
    r = r * scale + chunk;
    i += len;
  }
  return r;
}

void BitWriter::put_bits(std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) put((value >> i) & 1U);
}

void BitWriter::put_gamma(const BigNat& n) {
  std::size_t len = bit_length(n);
  if (len == 0) throw Error("gamma code of zero");
  for (std::size_t i = 1; i < len; ++i) put(false);
  for (std::size_t i = len; i-- > 0;) put(bit_at(n, i));
}

void BitWriter::put_gamma(std::uint64_t n) {
  if (n == 0) throw Error("gamma code of zero");
  unsigned len = 64U - static_cast<unsigned>(__builtin_clzll(n));
  for (unsigned i = 1; i < len; ++i) put(false);
  put_bits(n, len);
}

BigNat BitWriter::to_number() const {
  // Leading 1 keeps leading zero bits significant.
  std::size_t total = bits_.size() + 1;
  std::size_t pad = (8 - total % 8) % 8;
  std::vector<std::uint8_t> bytes((total + pad) / 8, 0);
  auto set = [&](std::size_t idx) { bytes[idx / 8] |= static_cast<std::uint8_t>(0x80U >> (idx % 8)); };
  set(pad);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) set(pad + 1 + i);
  BigNat n;
  boost::multiprecision::import_bits(n, bytes.begin(), bytes.end(), 8, true);
  return n;
}

BitReader::BitReader(const BigNat& n) {
  if (n < 1) throw NotAFormulaCode("zero has no leading marker bit");
  std::size_t len = bit_length(n);
  bits_.reserve(len - 1);
  std::vector<std::uint8_t> bytes;
  boost::multiprecision::export_bits(n, std::back_inserter(bytes), 8, true);
  std::size_t total = bytes.size() * 8;
  std::size_t skip = total - len + 1;  // leading zero padding plus the marker bit
  for (std::size_t i = skip; i < total; ++i) bits_.push_back((bytes[i / 8] >> (7 - i % 8)) & 1U);
}

bool BitReader::get() {
  if (pos_ >= bits_.size()) throw NotAFormulaCode("truncated code");
  return bits_[pos_++] != 0;
}

std::uint64_t BitReader::get_bits(unsigned width) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | (get() ? 1U : 0U);
  return v;
}

BigNat BitReader::get_gamma() {
  std::size_t zeros = 0;
  while (!get()) ++zeros;
  if (zeros > bits_.size()) throw NotAFormulaCode("truncated gamma code");
  BigNat n = 1;
  for (std::size_t i = 0; i < zeros; ++i) n = (n << 1) | (get() ? 1 : 0);
  return n;
}

std::uint64_t BitReader::get_gamma_small() {
  std::size_t zeros = 0;
  while (!get()) ++zeros;
  if (zeros >= 63) throw NotAFormulaCode("index out of range");
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < zeros; ++i) n = (n << 1) | (get() ? 1U : 0U);
  return n;
}

}  // namespace ptlab
