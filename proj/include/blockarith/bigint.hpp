#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace blockarith {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt big(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return BigInt(static_cast<unsigned long>(v));
}

inline bool fits_u64(const BigInt& v) { return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const BigInt& v) { return mpz_get_ui(v.get_mpz_t()); }

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

std::optional<BigInt> parse_bigint(std::string_view text);

BigInt pow(const BigInt& base, unsigned long exponent);

BigInt factorial(unsigned long n);

BigInt binomial(unsigned long n, unsigned long k);

}  // namespace blockarith
