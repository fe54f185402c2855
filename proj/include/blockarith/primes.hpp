#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blockarith/bigint.hpp"

namespace blockarith {

/// Exclusive upper bound for deterministic primality: the strong-pseudoprime
/// test with the thirteen prime bases 2..41 is exact below this value.
extern const BigInt kPrimalityBound;

bool is_prime(std::uint64_t x);

/// Deterministic for x < kPrimalityBound; throws ResourceLimitError above.
bool is_prime(const BigInt& x);

/// Memory budget in bytes for sieve tables. Read once from the
/// BLOCKARITH_MEMORY_BUDGET environment variable (default 2 GiB).
std::uint64_t memory_budget();

/// Throws MemoryBudgetError when `bytes` exceeds memory_budget().
void require_budget(std::uint64_t bytes, const char* what);

/// Least-prime-factor table over [0, limit]. Immutable after construction.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }

  /// Least prime factor of x for 2 <= x <= limit.
  std::uint32_t smallest_factor(std::uint64_t x) const;

  /// pi(x) for x <= limit; throws OutOfTableError above.
  std::uint64_t pi(std::uint64_t x) const;

  bool contains(std::uint64_t x) const { return x <= limit_; }
  bool is_prime(std::uint64_t x) const { return x >= 2 && x <= limit_ && lpf_[x] == x; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> lpf_;
  std::vector<std::uint32_t> primes_;
};

PrimeTable sieve_primes(std::uint64_t limit);

std::uint64_t prime_pi(std::uint64_t x, const PrimeTable& table);

/// Product of all primes <= r (1 for r < 2).
BigInt primorial(std::uint64_t r);

/// Exponent of the prime p in k!, i.e. sum_j floor(k / p^j).
std::uint64_t legendre_vp(std::uint64_t k, std::uint64_t p);

/// Ascending primes below 2^16, shared by trial division.
std::span<const std::uint32_t> small_primes();

}  // namespace blockarith
