#include "blockarith/primes.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <string>

#include "blockarith/errors.hpp"

namespace blockarith {

const BigInt kPrimalityBound("3317044064679887385961981");

namespace {

constexpr std::array<std::uint32_t, 13> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t d, int s, std::uint64_t a) {
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool strong_probable_prime(const BigInt& n, const BigInt& d, unsigned long s, unsigned long a) {
  BigInt x;
  BigInt base(a);
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

std::vector<std::uint32_t> build_small_primes() {
  constexpr std::uint32_t limit = 1u << 16;
  std::vector<bool> composite(limit, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

std::span<const std::uint32_t> small_primes() {
  static const std::vector<std::uint32_t> primes = build_small_primes();
  return primes;
}

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint32_t p : kWitnesses) {
    if (x % p == 0) return x == p;
  }
  if (x < 41 * 41) return true;
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve bases are exact for every 64-bit input.
  for (std::size_t i = 0; i < 12; ++i) {
    if (!strong_probable_prime(x, d, s, kWitnesses[i])) return false;
  }
  return true;
}

bool is_prime(const BigInt& x) {
  if (sgn(x) <= 0) return false;
  if (fits_u64(x)) return is_prime(to_u64(x));
  if (x >= kPrimalityBound) {
    throw ResourceLimitError("primality of " + to_string(x) + " exceeds the deterministic bound " +
                             to_string(kPrimalityBound));
  }
  for (std::uint32_t p : kWitnesses) {
    if (mpz_divisible_ui_p(x.get_mpz_t(), p)) return false;
  }
  BigInt d = x - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (std::uint32_t a : kWitnesses) {
    if (!strong_probable_prime(x, d, s, a)) return false;
  }
  return true;
}

std::uint64_t memory_budget() {
  static const std::uint64_t budget = [] {
    constexpr std::uint64_t kDefault = std::uint64_t{2} << 30;
    const char* env = std::getenv("BLOCKARITH_MEMORY_BUDGET");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) return kDefault;
    return static_cast<std::uint64_t>(v);
  }();
  return budget;
}

void require_budget(std::uint64_t bytes, const char* what) {
  if (bytes > memory_budget()) {
    throw MemoryBudgetError(std::string(what) + " needs " + std::to_string(bytes) + " bytes, budget is " +
                            std::to_string(memory_budget()));
  }
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) throw DomainError("prime table limit must be >= 2");
  if (limit >= std::numeric_limits<std::uint32_t>::max()) {
    throw MemoryBudgetError("prime table limit " + std::to_string(limit) + " exceeds 32-bit index range");
  }
  require_budget((limit + 1) * sizeof(std::uint32_t) * 2, "prime table");

  // Linear sieve: every composite is struck exactly once by its least prime.
  lpf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (lpf_[i] == 0) {
      lpf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      std::uint64_t j = i * p;
      if (p > lpf_[i] || j > limit) break;
      lpf_[j] = p;
    }
  }
  primes_.shrink_to_fit();
}

std::uint32_t PrimeTable::smallest_factor(std::uint64_t x) const {
  if (x < 2 || x > limit_) throw OutOfTableError("smallest_factor(" + std::to_string(x) + ") outside table");
  return lpf_[x];
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
  if (x > limit_) {
    throw OutOfTableError("pi(" + std::to_string(x) + ") beyond table limit " + std::to_string(limit_));
  }
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

PrimeTable sieve_primes(std::uint64_t limit) { return PrimeTable(limit); }

std::uint64_t prime_pi(std::uint64_t x, const PrimeTable& table) { return table.pi(x); }

BigInt primorial(std::uint64_t r) {
  BigInt out;
  mpz_primorial_ui(out.get_mpz_t(), static_cast<unsigned long>(r));
  return out;
}

std::uint64_t legendre_vp(std::uint64_t k, std::uint64_t p) {
  if (p < 2) throw DomainError("legendre_vp needs a prime p");
  std::uint64_t total = 0;
  for (std::uint64_t q = k / p; q > 0; q /= p) total += q;
  return total;
}

}  // namespace blockarith
