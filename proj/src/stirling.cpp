#include "blockarith/stirling.hpp"

#include <string>

#include "blockarith/errors.hpp"

namespace blockarith {

BigInt stirling2(unsigned n, unsigned k) {
  if (n > kStirlingMax || k > kStirlingMax) {
    throw DomainError("stirling2 arguments must be <= " + std::to_string(kStirlingMax));
  }
  BigInt sum = 0;
  for (unsigned i = 0; i <= k; ++i) {
    // 0^0 = 1 so that S(0,0) = 1.
    BigInt term = binomial(k, i) * pow(BigInt(i), n);
    if ((k - i) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  BigInt kfact = factorial(k);
  BigInt q;
  mpz_divexact(q.get_mpz_t(), sum.get_mpz_t(), kfact.get_mpz_t());
  return q;
}

}  // namespace blockarith
