#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blockarith/bigint.hpp"
#include "blockarith/primes.hpp"

namespace blockarith {

/// Seed used by the rho stage unless the caller overrides it.
inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ULL;

struct FactorOptions;

struct PrimePower {
  BigInt prime;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer with its prime-power decomposition, primes ascending.
class Factorization {
 public:
  /// The factorization of 1.
  Factorization() : value_(1) {}

  /// Builds from prime powers in any order; merges repeated primes.
  /// Throws ValidationError for non-prime bases or zero exponents.
  static Factorization from_prime_powers(std::vector<PrimePower> powers);

  const BigInt& value() const { return value_; }
  std::span<const PrimePower> factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }

  /// Product of this and other, with exponents of shared primes summed.
  Factorization merged(const Factorization& other) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  Factorization(BigInt value, std::vector<PrimePower> factors)
      : value_(std::move(value)), factors_(std::move(factors)) {}

  BigInt value_;
  std::vector<PrimePower> factors_;

  friend Factorization factorize(const BigInt&, const FactorOptions&);
  friend Factorization factorize_u64(std::uint64_t, const PrimeTable&);
};

struct FactorOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Optional least-prime-factor table; inputs within it skip trial division.
  const PrimeTable* table = nullptr;
};

/// Largest input accepted by factorize (exclusive); equals kPrimalityBound.
const BigInt& factorization_bound();

/// Complete factorization of x >= 1. Throws DomainError for x < 1 and
/// ResourceLimitError for x >= factorization_bound().
Factorization factorize(const BigInt& x, const FactorOptions& options = {});

/// Table lookup factorization; x must lie in the table.
Factorization factorize_u64(std::uint64_t x, const PrimeTable& table);

/// Splits a composite n into a nontrivial factor using Brent's cycle
/// variant of Pollard rho. Exposed for tests.
std::uint64_t rho_split(std::uint64_t n, std::uint64_t seed);
BigInt rho_split(const BigInt& n, std::uint64_t seed);

}  // namespace blockarith
