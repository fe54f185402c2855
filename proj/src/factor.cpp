#include "blockarith/factor.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "blockarith/errors.hpp"

namespace blockarith {

namespace {

// Sorts by prime and sums exponents of repeated primes.
std::vector<PrimePower> normalize(std::vector<PrimePower> powers) {
  std::sort(powers.begin(), powers.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  std::vector<PrimePower> out;
  out.reserve(powers.size());
  for (auto& pp : powers) {
    if (!out.empty() && out.back().prime == pp.prime) {
      out.back().exponent += pp.exponent;
    } else {
      out.push_back(std::move(pp));
    }
  }
  return out;
}

BigInt product_of(const std::vector<PrimePower>& powers) {
  BigInt v = 1;
  for (const auto& pp : powers) v *= pow(pp.prime, pp.exponent);
  return v;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Splits a composite into primes, appending to out.
void split_composite(const BigInt& n, std::uint64_t seed, std::vector<PrimePower>& out) {
  std::vector<BigInt> stack{n};
  while (!stack.empty()) {
    BigInt m = std::move(stack.back());
    stack.pop_back();
    if (m == 1) continue;
    if (is_prime(m)) {
      out.push_back({m, 1});
      continue;
    }
    BigInt d;
    if (fits_u64(m)) {
      d = big(rho_split(to_u64(m), seed));
    } else {
      d = rho_split(m, seed);
    }
    stack.push_back(d);
    stack.push_back(m / d);
  }
}

}  // namespace

Factorization Factorization::from_prime_powers(std::vector<PrimePower> powers) {
  for (const auto& pp : powers) {
    if (pp.exponent == 0) throw ValidationError("zero exponent in factorization");
    if (!is_prime(pp.prime)) throw ValidationError(to_string(pp.prime) + " is not prime");
  }
  auto factors = normalize(std::move(powers));
  BigInt value = product_of(factors);
  return Factorization(std::move(value), std::move(factors));
}

Factorization Factorization::merged(const Factorization& other) const {
  std::vector<PrimePower> all(factors_.begin(), factors_.end());
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return Factorization(value_ * other.value_, normalize(std::move(all)));
}

const BigInt& factorization_bound() { return kPrimalityBound; }

std::uint64_t rho_split(std::uint64_t n, std::uint64_t seed) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(seed ^ n);
  std::uniform_int_distribution<std::uint64_t> dist(1, n - 1);
  constexpr std::uint64_t kBatch = 128;
  for (;;) {
    const std::uint64_t c = dist(rng);
    std::uint64_t y = dist(rng);
    std::uint64_t x = y;
    std::uint64_t ys = y;
    std::uint64_t q = 1;
    std::uint64_t g = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      // Batched product collapsed; backtrack one step at a time.
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

BigInt rho_split(const BigInt& n, std::uint64_t seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  gmp_randclass rng(gmp_randinit_default);
  BigInt state_seed = big(seed) ^ n;
  rng.seed(state_seed);
  constexpr unsigned long kBatch = 128;
  const BigInt n_minus_1 = n - 1;
  for (;;) {
    const BigInt c = rng.get_z_range(n_minus_1) + 1;
    BigInt y = rng.get_z_range(n_minus_1) + 1;
    BigInt x = y;
    BigInt ys = y;
    BigInt q = 1;
    BigInt g = 1;
    BigInt diff;
    auto step = [&](BigInt& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    for (unsigned long r = 1; g == 1; r <<= 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      for (unsigned long k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (unsigned long i = 0; i < std::min(kBatch, r - k); ++i) {
          step(y);
          diff = x - y;
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        step(ys);
        diff = x - ys;
        g = gcd(diff, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

Factorization factorize_u64(std::uint64_t x, const PrimeTable& table) {
  if (x < 1) throw DomainError("factorize needs x >= 1");
  if (!table.contains(x)) throw OutOfTableError("factorize_u64: " + std::to_string(x) + " outside table");
  std::vector<PrimePower> factors;
  while (x > 1) {
    const std::uint32_t p = table.smallest_factor(x);
    std::uint32_t e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    factors.push_back({big(p), e});
  }
  BigInt value = product_of(factors);
  return Factorization(std::move(value), std::move(factors));
}

Factorization factorize(const BigInt& x, const FactorOptions& options) {
  if (sgn(x) <= 0) throw DomainError("factorize needs x >= 1, got " + to_string(x));
  if (x >= factorization_bound()) {
    throw ResourceLimitError("factorize: " + to_string(x) + " exceeds the size bound " +
                             to_string(factorization_bound()));
  }
  if (options.table != nullptr && fits_u64(x) && options.table->contains(to_u64(x))) {
    return factorize_u64(to_u64(x), *options.table);
  }

  std::vector<PrimePower> factors;
  BigInt rest = x;
  bool rest_is_prime = false;
  for (std::uint32_t p : small_primes()) {
    if (rest == 1) break;
    if (BigInt(p) * p > rest) {
      rest_is_prime = true;
      break;
    }
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      std::uint32_t e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      factors.push_back({big(p), e});
    }
  }
  if (rest != 1) {
    if (rest_is_prime) {
      factors.push_back({rest, 1});
    } else {
      split_composite(rest, options.seed, factors);
    }
  }
  factors = normalize(std::move(factors));
  return Factorization(x, std::move(factors));
}

}  // namespace blockarith
