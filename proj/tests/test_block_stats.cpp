#include <gtest/gtest.h>

#include <random>

#include "blockarith/block_stats.hpp"
#include "blockarith/errors.hpp"
#include "blockarith/primes.hpp"
#include "blockarith/window.hpp"
#include "oracles.hpp"

using namespace blockarith;

namespace {

std::uint64_t oracle_P(std::uint64_t x) { return x == 1 ? 1 : oracle::factor(x).rbegin()->first; }

std::uint64_t oracle_Q(std::uint64_t x, unsigned m) {
  std::uint64_t q = 1;
  for (const auto& [p, e] : oracle::factor(x)) {
    for (unsigned i = 0; i < e % m; ++i) q *= p;
  }
  return q;
}

}  // namespace

TEST(BlockFunctions, Examples) {
  EXPECT_EQ(greatest_prime(factorize(big(1))), 1);
  EXPECT_EQ(greatest_prime(factorize(big(720))), 5);
  EXPECT_EQ(greatest_prime(factorize(big(523))), 523);
  EXPECT_EQ(radical(factorize(big(75))), 15);
  EXPECT_EQ(radical(factorize(big(1216))), 38);
  EXPECT_EQ(radical(factorize(big(1))), 1);
  EXPECT_EQ(mth_free_part(factorize(big(72)), 2), 2);
  EXPECT_EQ(mth_free_part(factorize(big(1)), 5), 1);
  EXPECT_EQ(mth_free_part(factorize(big(1216)), 3), 19);
  EXPECT_EQ(omega(factorize(big(1))), 0u);
  EXPECT_THROW(mth_free_part(factorize(big(8)), 1), DomainError);
}

TEST(BlockStats, Examples) {
  const std::vector<unsigned> m2{2};
  const BlockStats s = block_stats(big(8), 3, m2);
  EXPECT_EQ(s.greatest_prime, 5);
  EXPECT_EQ(s.omega, 3u);
  EXPECT_EQ(s.radical, 30);
  EXPECT_EQ(s.powerfree.at(2), 5);
  EXPECT_EQ(block_stats(big(6), 4).omega, 3u);
  EXPECT_EQ(block_stats(big(34), 24).omega, 14u);
  EXPECT_EQ(block_stats(big(279), 262).greatest_prime, 523);
}

TEST(BlockStats, Errors) {
  EXPECT_THROW(block_stats(big(5), 1), DomainError);
  EXPECT_THROW(block_stats(BigInt(0), 3), DomainError);
  const std::vector<unsigned> bad{1};
  EXPECT_THROW(block_stats(big(5), 3, bad), DomainError);
}

TEST(LambdaM, Examples) {
  EXPECT_EQ(lambda_m(big(9), 2, 2), 2);
  EXPECT_EQ(lambda_m(big(10), 3, 3), 10);
  for (std::uint64_t n : {1, 12, 72, 1216}) {
    EXPECT_EQ(lambda_m(big(n), 1, 3), mth_free_part(factorize(big(n)), 3));
  }
  EXPECT_THROW(lambda_m(big(3), 4, 2), DomainError);
  EXPECT_THROW(lambda_m(big(9), 2, 1), DomainError);
}

TEST(BlockStats, MatchesFullProductOnRandomBlocks) {
  std::mt19937_64 rng(2024);
  const std::vector<unsigned> moduli{2, 3, 5};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng() % 40);
    const std::uint64_t n = 1 + rng() % (1000000 - k);
    const BlockStats s = block_stats(big(n), k, moduli);
    const mpz_class N = oracle::block_product(n, k);
    std::map<std::uint64_t, unsigned> f;
    for (std::uint32_t i = 0; i < k; ++i) {
      for (const auto& [p, e] : oracle::factor(n + i)) f[p] += e;
    }
    mpz_class prod = 1, rad = 1;
    for (const auto& [p, e] : f) {
      mpz_class pe;
      mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
      prod *= pe;
      rad *= static_cast<unsigned long>(p);
    }
    ASSERT_EQ(prod, N);
    ASSERT_EQ(s.greatest_prime, static_cast<unsigned long>(f.rbegin()->first));
    ASSERT_EQ(s.omega, f.size());
    ASSERT_EQ(s.radical, rad);
    for (unsigned m : moduli) {
      mpz_class q = 1;
      for (const auto& [p, e] : f) {
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, e % m);
        q *= pe;
      }
      ASSERT_EQ(s.powerfree.at(m), q);
    }
    ASSERT_EQ(block_factorization(big(n), k).value(), N);
  }
}

TEST(BlockStats, StructuralInvariants) {
  std::mt19937_64 rng(99);
  const std::vector<unsigned> moduli{2, 3, 4, 7};
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng() % 25);
    const std::uint64_t n = 1 + rng() % 500000;
    const BlockStats s = block_stats(big(n), k, moduli);
    const mpz_class N = oracle::block_product(n, k);
    ASSERT_TRUE(mpz_divisible_p(N.get_mpz_t(), s.radical.get_mpz_t()));
    const Factorization bf = block_factorization(big(n), k);
    mpz_class rest = s.radical;
    for (const auto& pp : bf.factors()) {
      ASSERT_TRUE(mpz_divisible_p(rest.get_mpz_t(), pp.prime.get_mpz_t()));
      rest /= pp.prime;
      ASSERT_FALSE(mpz_divisible_p(rest.get_mpz_t(), pp.prime.get_mpz_t()));
    }
    ASSERT_EQ(rest, 1);
    ASSERT_EQ(s.omega, bf.factors().size());
    ASSERT_EQ(s.greatest_prime, bf.factors().back().prime);
    for (unsigned m : moduli) {
      const BigInt& q = s.powerfree.at(m);
      ASSERT_TRUE(mpz_divisible_p(N.get_mpz_t(), q.get_mpz_t()));
      mpz_class rest = N / q, root;
      ASSERT_NE(mpz_root(root.get_mpz_t(), rest.get_mpz_t(), m), 0) << n << " " << k << " m=" << m;
    }
    std::uint32_t sum = 0;
    bool shared = false;
    std::map<std::uint64_t, int> seen;
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto f = oracle::factor(n + i);
      sum += static_cast<std::uint32_t>(f.size());
      for (const auto& [p, e] : f) shared = shared || seen[p]++ > 0;
    }
    ASSERT_LE(s.omega, sum);
    ASSERT_EQ(s.omega == sum, !shared);
  }
}

TEST(WindowTables, Examples) {
  const WindowTables t = build_window_tables(2, 10);
  EXPECT_EQ(std::vector<std::uint64_t>(t.greatest_primes().begin(), t.greatest_primes().end()),
            (std::vector<std::uint64_t>{2, 3, 2, 5, 3, 7, 2, 3, 5}));
  const WindowTables r = build_window_tables(75, 76);
  EXPECT_EQ(r.radical(75), 15u);
  EXPECT_EQ(r.radical(76), 38u);
  WindowOptions opts;
  opts.moduli = {2, 3};
  opts.prime_lists = true;
  const WindowTables one = build_window_tables(1216, 1216, opts);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.greatest_prime(1216), 19u);
  EXPECT_EQ(one.radical(1216), 38u);
  EXPECT_EQ(one.omega(1216), 2u);
  EXPECT_EQ(one.powerfree(3, 1216), 19u);
  EXPECT_EQ(one.powerfree(2, 1216), 19u);
  EXPECT_THROW(one.powerfree(5, 1216), OutOfTableError);
  EXPECT_THROW(build_window_tables(0, 5), DomainError);
  EXPECT_THROW(build_window_tables(9, 5), DomainError);
  EXPECT_THROW(build_window_tables(1, std::uint64_t{1} << 41), ResourceLimitError);
  EXPECT_THROW(t.distinct_primes(5), OutOfTableError);
}

TEST(WindowTables, ListedSequenceIsTheLeastPrimeFactor) {
  const PrimeTable table(10);
  std::vector<std::uint64_t> lpf;
  for (std::uint64_t x = 2; x <= 10; ++x) lpf.push_back(table.smallest_factor(x));
  EXPECT_EQ(lpf, (std::vector<std::uint64_t>{2, 3, 2, 5, 2, 7, 2, 3, 2}));
}

TEST(WindowTables, AgreeWithTrialDivision) {
  WindowOptions base;
  base.moduli = {2, 3};
  base.prime_lists = true;
  const std::uint64_t lo = 999000, hi = 1012345;
  const WindowTables ref = build_window_tables(lo, hi, base);
  for (std::uint64_t x = lo; x <= hi; ++x) {
    const auto f = oracle::factor(x);
    ASSERT_EQ(ref.greatest_prime(x), oracle_P(x));
    ASSERT_EQ(ref.radical(x), oracle::radical(x));
    ASSERT_EQ(ref.omega(x), f.size());
    ASSERT_EQ(ref.powerfree(2, x), oracle_Q(x, 2));
    ASSERT_EQ(ref.powerfree(3, x), oracle_Q(x, 3));
    const auto primes = ref.distinct_primes(x);
    std::vector<std::uint64_t> expected;
    for (const auto& [p, e] : f) expected.push_back(p);
    ASSERT_EQ(std::vector<std::uint64_t>(primes.begin(), primes.end()), expected);
  }
  for (std::uint64_t seg : {std::uint64_t{1000}, std::uint64_t{4096}, std::uint64_t{1} << 20}) {
    for (unsigned workers : {1u, 3u}) {
      WindowOptions opts = base;
      opts.segment_size = seg;
      opts.workers = workers;
      const WindowTables t = build_window_tables(lo, hi, opts);
      ASSERT_TRUE(std::equal(t.greatest_primes().begin(), t.greatest_primes().end(), ref.greatest_primes().begin()));
      ASSERT_TRUE(std::equal(t.radicals().begin(), t.radicals().end(), ref.radicals().begin()));
      ASSERT_TRUE(std::equal(t.omegas().begin(), t.omegas().end(), ref.omegas().begin()));
    }
  }
}

TEST(SlidingMaxP, Examples) {
  const auto p8 = sliding_block_max_P(build_window_tables(8, 10), 3);
  ASSERT_EQ(p8.size(), 1u);
  EXPECT_EQ(p8[0], (std::pair<std::uint64_t, std::uint64_t>{8, 5}));
  const auto whole = sliding_block_max_P(build_window_tables(100, 140), 41);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0].second, 139u);
  const auto p279 = sliding_block_max_P(build_window_tables(279, 540), 262);
  ASSERT_EQ(p279.size(), 1u);
  EXPECT_EQ(p279[0], (std::pair<std::uint64_t, std::uint64_t>{279, 523}));
  EXPECT_THROW(sliding_block_max_P(build_window_tables(8, 10), 4), DomainError);
}

TEST(SlidingMaxP, AgreesWithDirectEvaluationForKUpTo50) {
  const std::uint64_t lo = 2, hi = 100000;
  const WindowTables t = build_window_tables(lo, hi);
  std::vector<std::uint64_t> P(hi + 1);
  for (std::uint64_t x = lo; x <= hi; ++x) P[x] = oracle_P(x);
  std::mt19937_64 rng(5);
  for (std::uint32_t k = 2; k <= 50; ++k) {
    const auto got = sliding_block_max_P(t, k);
    ASSERT_EQ(got.size(), hi - lo + 2 - k);
    for (const auto& [n, p] : got) {
      std::uint64_t m = 0;
      for (std::uint32_t i = 0; i < k; ++i) m = std::max(m, P[n + i]);
      ASSERT_EQ(p, m) << n << " " << k;
    }
    for (int s = 0; s < 20; ++s) {
      const auto& [n, p] = got[rng() % got.size()];
      ASSERT_EQ(block_stats(big(n), k).greatest_prime, p);
    }
  }
}

TEST(SlidingOmega, AgreesWithBlockStats) {
  WindowOptions opts;
  opts.prime_lists = true;
  const WindowTables t = build_window_tables(1, 3000, opts);
  for (std::uint32_t k : {2u, 3u, 7u, 24u, 60u}) {
    for (const auto& [n, w] : sliding_block_omega(t, k)) {
      ASSERT_EQ(w, block_stats(big(n), k).omega) << n << " " << k;
    }
  }
  EXPECT_THROW(sliding_block_omega(build_window_tables(1, 100), 3), OutOfTableError);
}
