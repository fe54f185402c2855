#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "blockarith/block_stats.hpp"
#include "blockarith/errors.hpp"
#include "blockarith/primes.hpp"
#include "blockarith/verifiers.hpp"
#include "oracles.hpp"

using namespace blockarith;

namespace {

using Point = std::tuple<std::uint64_t, std::uint32_t, std::uint64_t>;  // n, k, lhs

struct NaiveBlocks {
  explicit NaiveBlocks(std::uint64_t top) : P(top + 1), primes(top + 1) {
    for (std::uint64_t x = 2; x <= top; ++x) {
      for (const auto& [p, e] : oracle::factor(x)) primes[x].push_back(p);
      P[x] = primes[x].back();
    }
    P[1] = 1;
  }
  std::uint64_t block_P(std::uint64_t n, std::uint32_t k) const {
    std::uint64_t m = 0;
    for (std::uint32_t i = 0; i < k; ++i) m = std::max(m, P[n + i]);
    return m;
  }
  std::uint64_t block_omega(std::uint64_t n, std::uint32_t k) const {
    std::set<std::uint64_t> s;
    for (std::uint32_t i = 0; i < k; ++i) s.insert(primes[n + i].begin(), primes[n + i].end());
    return s.size();
  }
  std::vector<std::uint64_t> P;
  std::vector<std::vector<std::uint64_t>> primes;
};

int naive_delta(std::int64_t k) { return k >= 3 && k <= 6 ? 2 : (k >= 7 && k <= 16 ? 1 : 0); }

// Returns true when (n,k) is an in-domain exception, written out per
// inequality straight from the definitions.
bool naive_exception(Inequality id, std::int64_t n, std::int64_t k, std::int64_t P, std::int64_t w) {
  const auto pk = static_cast<std::int64_t>(oracle::prime_pi(k));
  const auto p2k = static_cast<std::int64_t>(oracle::prime_pi(2 * k));
  switch (id) {
    case Inequality::kSylvester: return n > k && !(P > k);
    case Inequality::kLS18: return n > k && !(5 * P > 9 * k);
    case Inequality::kLS195: return n > k && !(20 * P > 39 * k);
    case Inequality::kLS197: return n > k + 13 && !(100 * P > 197 * k);
    case Inequality::kLS2K: return n > k + 13 && 262 * n > 279 * k && !(P > 2 * k);
    case Inequality::kNS442: return n > 4 * k && !(50 * P > 221 * k);
    case Inequality::kOmegaPi: return n > k && !(w > pk);
    case Inequality::kOmega34: return n > k && !(w >= pk + (3 * pk) / 4 - 1 + naive_delta(k));
    case Inequality::kOmega23: return n > k && !(w >= pk + (2 * pk) / 3 - 1);
    case Inequality::kOmega2K: return 12 * n > 17 * k && !(n == 6 && k == 4) && !(w >= p2k);
  }
  return false;
}

std::set<Point> as_points(const std::vector<ExceptionRecord>& records) {
  std::set<Point> out;
  for (const auto& r : records) out.emplace(r.n, r.k, r.lhs);
  return out;
}

ScanSpec rect(Inequality id, std::uint32_t kmin, std::uint32_t kmax, std::uint64_t nmin, std::uint64_t nmax) {
  ScanSpec s;
  s.id = id;
  s.kmin = kmin;
  s.kmax = kmax;
  s.nmin = nmin;
  s.nmax = nmax;
  return s;
}

}  // namespace

TEST(Inequalities, NamesRoundTrip) {
  const std::vector<std::string> names{"SYLVESTER", "LS18", "LS195", "LS197", "LS2K",
                                       "NS442", "OMEGA_PI", "OMEGA_34", "OMEGA_23", "OMEGA_2K"};
  ASSERT_EQ(all_inequalities().size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    EXPECT_EQ(inequality_name(all_inequalities()[i]), names[i]);
    EXPECT_EQ(parse_inequality(names[i]), all_inequalities()[i]);
  }
  EXPECT_FALSE(parse_inequality("LS19"));
}

TEST(Rational, NormalizesAndPrints) {
  EXPECT_EQ(Rational::make(27, 15).str(), "9/5");
  EXPECT_EQ(Rational::make(30, 2).str(), "15");
  EXPECT_EQ(Rational::make(6, 3), (Rational{2, 1}));
}

TEST(DeltaK, Examples) {
  EXPECT_EQ(delta_k(4), 2);
  EXPECT_EQ(delta_k(10), 1);
  EXPECT_EQ(delta_k(20), 0);
  EXPECT_EQ(delta_k(3), 2);
  EXPECT_EQ(delta_k(6), 2);
  EXPECT_EQ(delta_k(7), 1);
  EXPECT_EQ(delta_k(16), 1);
  EXPECT_EQ(delta_k(17), 0);
}

TEST(Domains, SideConditions) {
  EXPECT_FALSE(in_domain(Inequality::kLS18, 3, 3));
  EXPECT_TRUE(in_domain(Inequality::kLS18, 4, 3));
  EXPECT_FALSE(in_domain(Inequality::kLS197, 16, 3));
  EXPECT_TRUE(in_domain(Inequality::kLS197, 17, 3));
  EXPECT_FALSE(in_domain(Inequality::kLS2K, 279, 262));
  EXPECT_TRUE(in_domain(Inequality::kLS2K, 280, 262));
  EXPECT_FALSE(in_domain(Inequality::kNS442, 12, 3));
  EXPECT_TRUE(in_domain(Inequality::kNS442, 13, 3));
  EXPECT_FALSE(in_domain(Inequality::kOmega2K, 6, 4));
  EXPECT_FALSE(in_domain(Inequality::kOmega2K, 34, 24));
  EXPECT_TRUE(in_domain(Inequality::kOmega2K, 35, 24));
}

TEST(ScanP, LS18SmallRectangleGivesTheFourteenExceptions) {
  const auto records = scan(rect(Inequality::kLS18, 3, 80, 1, 10000));
  std::set<std::pair<std::uint64_t, std::uint32_t>> got;
  for (const auto& r : records) got.emplace(r.n, r.k);
  const std::set<std::pair<std::uint64_t, std::uint32_t>> expected{
      {8, 3}, {6, 4}, {7, 4}, {15, 13}, {16, 13}, {4, 3}, {5, 4},
      {6, 5}, {9, 8}, {12, 11}, {14, 13}, {15, 14}, {19, 18}, {64, 63}};
  EXPECT_EQ(got, expected);
  EXPECT_TRUE(std::is_sorted(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.k, a.n) < std::tie(b.k, b.n);
  }));
}

TEST(ScanP, OmegaPiIsEmpty) { EXPECT_TRUE(scan(rect(Inequality::kOmegaPi, 3, 100, 1, 10000)).empty()); }

TEST(Scan, EveryInequalityMatchesTheNaiveOracle) {
  const std::uint32_t kmin = 3, kmax = 40;
  const std::uint64_t nmax = 700;
  const NaiveBlocks naive(nmax + kmax);
  for (auto id : all_inequalities()) {
    std::set<Point> expected;
    for (std::uint32_t k = kmin; k <= kmax; ++k) {
      for (std::uint64_t n = 1; n <= nmax; ++n) {
        const auto P = naive.block_P(n, k);
        const auto w = naive.block_omega(n, k);
        if (naive_exception(id, n, k, P, w)) expected.emplace(n, k, bounds_greatest_prime(id) ? P : w);
      }
    }
    const auto records = scan(rect(id, kmin, kmax, 1, nmax));
    EXPECT_EQ(as_points(records), expected) << inequality_name(id);
    for (const auto& r : records) {
      ASSERT_TRUE(r.domain_ok);
      const auto again = check_point(id, r.n, r.k);
      ASSERT_TRUE(again.has_value());
      ASSERT_EQ(*again, r);
    }
  }
}

TEST(Scan, OutputIndependentOfWorkersAndBands) {
  for (auto id : {Inequality::kLS195, Inequality::kOmega34}) {
    ScanSpec base = rect(id, 3, 120, 1, 5000);
    const auto ref = scan(base);
    for (unsigned workers : {2u, 5u}) {
      for (std::uint32_t band : {1u, 7u, 64u}) {
        ScanSpec s = base;
        s.workers = workers;
        s.band_size = band;
        ASSERT_EQ(scan(s), ref) << inequality_name(id) << " workers=" << workers << " band=" << band;
      }
    }
  }
}

TEST(Scan, ResumeAfterCheckpointedBands) {
  ScanSpec base = rect(Inequality::kLS195, 3, 90, 1, 3000);
  base.band_size = 10;
  const auto full = scan(base);
  std::vector<ExceptionRecord> saved;
  std::uint32_t completed = 0;
  ScanSpec first = base;
  first.kmax = 42;
  first.on_band = [&](std::uint32_t last_k, const std::vector<ExceptionRecord>& band) {
    saved.insert(saved.end(), band.begin(), band.end());
    completed = last_k;
  };
  scan(first);
  EXPECT_EQ(completed, 42u);
  ScanSpec rest = base;
  rest.resume_after_k = completed;
  const auto tail = scan(rest);
  saved.insert(saved.end(), tail.begin(), tail.end());
  EXPECT_EQ(saved, full);
}

TEST(Scan, Errors) {
  EXPECT_THROW(scan(rect(Inequality::kLS18, 2, 10, 1, 100)), DomainError);
  EXPECT_THROW(scan(rect(Inequality::kLS18, 10, 5, 1, 100)), DomainError);
  EXPECT_THROW(scan(rect(Inequality::kLS18, 3, 10, 50, 10)), DomainError);
  EXPECT_THROW(scan_P(rect(Inequality::kOmega23, 3, 10, 1, 100)), DomainError);
  EXPECT_THROW(scan_omega(rect(Inequality::kLS18, 3, 10, 1, 100)), DomainError);
}

TEST(Boundary, LS2KWitness) {
  const auto w = boundary_witnesses(rect(Inequality::kLS2K, 3, 300, 1, 1000));
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].n, 279u);
  EXPECT_EQ(w[0].k, 262u);
  EXPECT_EQ(w[0].lhs, 523u);
  EXPECT_LE(w[0].lhs, 524u);
  EXPECT_FALSE(w[0].domain_ok);
  EXPECT_FALSE(w[0].satisfied);
  EXPECT_FALSE(check_point(Inequality::kLS2K, 279, 262).has_value());
  EXPECT_TRUE(scan(rect(Inequality::kLS2K, 262, 262, 279, 279)).empty());
}

TEST(Boundary, Omega2KWitnesses) {
  const auto w = boundary_witnesses(rect(Inequality::kOmega2K, 3, 30, 1, 100));
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0].lhs, oracle::prime_pi(8) - 1);
  EXPECT_EQ(w[1].lhs, oracle::prime_pi(48) - 1);
  EXPECT_EQ(w[1].lhs, 14u);
  EXPECT_FALSE(w[0].satisfied);
  EXPECT_FALSE(w[1].satisfied);
  EXPECT_TRUE(boundary_witnesses(rect(Inequality::kOmega2K, 3, 10, 1, 20)).size() == 1);
  EXPECT_TRUE(boundary_witnesses(rect(Inequality::kLS18, 3, 300, 1, 1000)).empty());
}

TEST(ErdosGcd, Examples) {
  EXPECT_EQ(erdos_gcd_bound(3), std::make_pair(BigInt(2), BigInt(6)));
  EXPECT_EQ(erdos_gcd_bound(4), std::make_pair(BigInt(24), BigInt(24)));
  EXPECT_EQ(erdos_gcd_bound(5), std::make_pair(BigInt(24), BigInt(120)));
}

TEST(ErdosGcd, StructureUpTo500) {
  for (std::uint32_t k = 2; k <= 500; ++k) {
    const auto [g, fact] = erdos_gcd_bound(k);
    ASSERT_EQ(fact, oracle::factorial(k));
    ASSERT_LE(g, fact);
    const bool prime = oracle::is_prime(k);
    ASSERT_EQ(g * (prime ? BigInt(k) : BigInt(1)), fact) << k;
    ASSERT_EQ(g == fact, !prime) << k;
  }
}

TEST(Hanson, Examples) {
  EXPECT_TRUE(hanson_check(2).holds);
  const HansonReport r = hanson_check(100);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.first_failure.has_value());
  mpz_class prim = 1, three = 1;
  for (unsigned x = 1; x <= 100; ++x) {
    three *= 3;
    if (oracle::is_prime(x)) prim *= x;
    ASSERT_LT(prim, three) << x;
  }
}

TEST(Khodzaev, DegenerateAndBruteForce) {
  EXPECT_FALSE(khodzaev_threshold(big(1), 1).threshold.has_value());
  for (std::uint64_t n : {std::uint64_t{100}, std::uint64_t{10000}}) {
    const std::uint32_t kmax = n == 100 ? 100 : 400;
    std::optional<std::uint32_t> expected;
    for (std::uint32_t k = 1; k <= kmax && !expected; ++k) {
      std::set<std::uint64_t> ps;
      for (std::uint32_t i = 0; i < k; ++i) {
        for (const auto& [p, e] : oracle::factor(n + i)) ps.insert(p);
      }
      mpz_class R = 1, kk;
      for (auto p : ps) R *= static_cast<unsigned long>(p);
      mpz_ui_pow_ui(kk.get_mpz_t(), k, k);
      if (R < kk) expected = k;
    }
    const KhodzaevReport r = khodzaev_threshold(big(n), kmax);
    ASSERT_TRUE(expected.has_value());
    EXPECT_EQ(r.threshold, expected) << n;
    EXPECT_LE(*r.threshold, kmax);
  }
  EXPECT_EQ(khodzaev_threshold(big(100), 100).threshold, std::optional<std::uint32_t>(20));
}
