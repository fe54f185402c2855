#include <gtest/gtest.h>

#include <set>

#include "blockarith/errors.hpp"
#include "blockarith/ew.hpp"
#include "oracles.hpp"

using namespace blockarith;

namespace {

std::set<std::pair<std::uint64_t, std::uint64_t>> pair_set(const std::vector<EwPair>& pairs) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& p : pairs) out.emplace(p.n1, p.n2);
  return out;
}

}  // namespace

TEST(EwFamily, Examples) {
  const EwPair h2 = ew_family(2);
  EXPECT_EQ(h2.n1, 2u);
  EXPECT_EQ(h2.n2, 8u);
  EXPECT_EQ(h2.witnesses, (std::vector<EwWitness>{{0, 2, 2}, {1, 3, 3}}));
  const EwPair h3 = ew_family(3);
  EXPECT_EQ(h3.n1, 6u);
  EXPECT_EQ(h3.n2, 48u);
  EXPECT_EQ(h3.witnesses, (std::vector<EwWitness>{{0, 6, 6}, {1, 7, 7}}));
  const EwPair h4 = ew_family(4);
  EXPECT_EQ(h4.n1, 14u);
  EXPECT_EQ(h4.n2, 224u);
  EXPECT_EQ(h4.witnesses[0].radical_first, 14u);
  EXPECT_EQ(h4.witnesses[1].radical_first, 15u);
}

TEST(EwFamily, VerifiesUpToTwelveWithSquareIdentity) {
  for (unsigned h = 2; h <= 12; ++h) {
    EwPair p = ew_family(h);
    ASSERT_TRUE(verify_ew_pair(p)) << h;
    const std::uint64_t m = (std::uint64_t{1} << h) - 1;
    ASSERT_EQ(p.n2 + 1, m * m) << h;
    ASSERT_EQ(oracle::radical(p.n1), oracle::radical(p.n2));
    ASSERT_EQ(oracle::radical(p.n1 + 1), oracle::radical(p.n2 + 1));
  }
  EXPECT_NO_THROW(ew_family(31));
  EXPECT_THROW(ew_family(1), DomainError);
  EXPECT_THROW(ew_family(32), ResourceLimitError);
}

TEST(FindEwPairs, Examples) {
  const auto k2 = find_ew_pairs(2, 1300);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> expected{{2, 8}, {6, 48}, {14, 224}, {30, 960}, {75, 1215}};
  ASSERT_EQ(k2.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(k2[i].n1, expected[i].first);
    EXPECT_EQ(k2[i].n2, expected[i].second);
    EwPair copy = k2[i];
    EXPECT_TRUE(verify_ew_pair(copy));
    EXPECT_EQ(copy, k2[i]);
  }
  const auto small = find_ew_pairs(2, 8);
  ASSERT_EQ(small.size(), 1u);
  EXPECT_EQ(small[0].n1, 2u);
  EXPECT_EQ(small[0].n2, 8u);
  EXPECT_TRUE(find_ew_pairs(3, 100000).empty());
  EXPECT_TRUE(find_ew_pairs(2, 1).empty());
  EXPECT_THROW(find_ew_pairs(1, 100), DomainError);
}

TEST(FindEwPairs, MatchesDoubleLoopOracle) {
  EXPECT_EQ(pair_set(find_ew_pairs(2, 1300)), oracle::ew_pairs(2, 1300));
  EXPECT_EQ(pair_set(find_ew_pairs(2, 3000, 4)), oracle::ew_pairs(2, 3000));
  EXPECT_EQ(pair_set(find_ew_pairs(3, 2000)), oracle::ew_pairs(3, 2000));
}

TEST(FindEwPairs, PrefixProperty) {
  std::vector<std::vector<EwPair>> by_k(6);
  for (std::uint32_t k = 2; k <= 5; ++k) by_k[k] = find_ew_pairs(k, 50000, 2);
  for (std::uint32_t k = 3; k <= 5; ++k) {
    const auto lower = pair_set(by_k[k - 1]);
    for (const auto& p : by_k[k]) ASSERT_TRUE(lower.count({p.n1, p.n2})) << p.n1 << " " << p.n2;
  }
  EXPECT_FALSE(by_k[2].empty());
}

TEST(FindEwPairs, WorkerCountDoesNotChangeOutput) {
  EXPECT_EQ(find_ew_pairs(2, 200000, 1), find_ew_pairs(2, 200000, 6));
}

TEST(VerifyEwPair, Examples) {
  EwPair a{2, 8, 2, {}};
  EXPECT_TRUE(verify_ew_pair(a));
  EXPECT_EQ(a.witnesses.size(), 2u);
  EwPair b{75, 1215, 3, {}};
  EXPECT_FALSE(verify_ew_pair(b));
  EXPECT_EQ(b.witnesses[2].radical_first, 77u);
  EXPECT_EQ(b.witnesses[2].radical_second, 1217u);
  EwPair c{5, 6, 1, {}};
  EXPECT_THROW(verify_ew_pair(c), ValidationError);
  EwPair d{8, 2, 2, {}};
  EXPECT_THROW(verify_ew_pair(d), ValidationError);
}
