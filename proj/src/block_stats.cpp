#include "blockarith/block_stats.hpp"

#include <string>

#include "blockarith/errors.hpp"

namespace blockarith {

BigInt greatest_prime(const Factorization& f) {
  if (f.empty()) return 1;
  return f.factors().back().prime;
}

BigInt radical(const Factorization& f) {
  BigInt r = 1;
  for (const auto& pp : f.factors()) r *= pp.prime;
  return r;
}

BigInt mth_free_part(const Factorization& f, unsigned m) {
  if (m < 2) throw DomainError("m-th powerfree part needs m >= 2");
  BigInt q = 1;
  for (const auto& pp : f.factors()) {
    const unsigned e = pp.exponent % m;
    if (e != 0) q *= pow(pp.prime, e);
  }
  return q;
}

Factorization block_factorization(const BigInt& n, std::uint32_t k, const FactorOptions& options) {
  if (sgn(n) <= 0) throw DomainError("block start n must be >= 1");
  Factorization acc;
  for (std::uint32_t i = 0; i < k; ++i) acc = acc.merged(factorize(n + i, options));
  return acc;
}

BlockStats block_stats(const BigInt& n, std::uint32_t k, std::span<const unsigned> moduli,
                       const FactorOptions& options) {
  if (k < 2) throw DomainError("block length k must be >= 2, got " + std::to_string(k));
  for (unsigned m : moduli) {
    if (m < 2) throw DomainError("powerfree modulus must be >= 2, got " + std::to_string(m));
  }
  const Factorization merged = block_factorization(n, k, options);
  BlockStats out;
  out.n = n;
  out.k = k;
  out.greatest_prime = greatest_prime(merged);
  out.omega = omega(merged);
  out.radical = radical(merged);
  for (unsigned m : moduli) out.powerfree[m] = mth_free_part(merged, m);
  return out;
}

BigInt lambda_m(const BigInt& n, std::uint32_t k, unsigned m, const FactorOptions& options) {
  if (k < 1) throw DomainError("lambda_m needs k >= 1");
  if (m < 2) throw DomainError("lambda_m needs m >= 2");
  if (n < k) throw DomainError("lambda_m needs n >= k (n=" + to_string(n) + ", k=" + std::to_string(k) + ")");
  BigInt best = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    BigInt q = mth_free_part(factorize(n - i, options), m);
    if (q > best) best = q;
  }
  return best;
}

}  // namespace blockarith
