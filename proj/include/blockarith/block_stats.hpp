#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "blockarith/bigint.hpp"
#include "blockarith/factor.hpp"

namespace blockarith {

/// P(x): greatest prime of f, 1 for the empty factorization.
BigInt greatest_prime(const Factorization& f);

/// R(x): product of the distinct primes of f.
BigInt radical(const Factorization& f);

/// omega(x): number of distinct primes of f.
inline std::uint32_t omega(const Factorization& f) { return static_cast<std::uint32_t>(f.factors().size()); }

/// Q_m(x) = prod p^(e mod m), the A in x = A * B^m. Requires m >= 2.
BigInt mth_free_part(const Factorization& f, unsigned m);

/// Arithmetic functions of the block product N = n (n+1) ... (n+k-1).
struct BlockStats {
  BigInt n;
  std::uint32_t k = 0;
  BigInt greatest_prime;
  std::uint32_t omega = 0;
  BigInt radical;
  std::map<unsigned, BigInt> powerfree;
};

/// Merged factorization of the block product (exponents summed per prime).
Factorization block_factorization(const BigInt& n, std::uint32_t k, const FactorOptions& options = {});

/// Requires n >= 1, k >= 2 and every moduli entry >= 2.
BlockStats block_stats(const BigInt& n, std::uint32_t k, std::span<const unsigned> moduli = {},
                       const FactorOptions& options = {});

/// lambda_m(n,k) = max_{0<=i<k} Q_m(n - i). Requires n >= k >= 1 and m >= 2.
BigInt lambda_m(const BigInt& n, std::uint32_t k, unsigned m, const FactorOptions& options = {});

}  // namespace blockarith
