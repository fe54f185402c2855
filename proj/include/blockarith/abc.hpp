#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockarith/bigint.hpp"
#include "blockarith/factor.hpp"

namespace blockarith {

/// Coprime a + b = c with a <= b, plus R(abc) and omega(abc).
struct AbcTriple {
  BigInt a;
  BigInt b;
  BigInt c;
  BigInt radical;
  std::uint32_t omega = 0;

  /// (1, 1, 2), the only triple with a = b.
  bool degenerate() const { return a == b; }

  /// log c / log R(abc) in floating point, for display and ordering only.
  double quality() const;

  /// Exact test quality > num/den, i.e. c^den > R^num. Requires den > 0, num >= 0.
  bool quality_exceeds(const BigRational& floor) const;
};

/// Validates and populates a triple; throws ValidationError naming the
/// violated condition.
AbcTriple make_triple(const BigInt& a, const BigInt& b, const BigInt& c, const FactorOptions& options = {});

enum class Verdict { kHolds, kFails, kUndecided };

std::string_view verdict_name(Verdict v);

struct PrecisionPolicy {
  unsigned start_bits = 64;
  unsigned max_bits = 4096;
  /// Decide clear cases from a double evaluation of the log-form inequality
  /// when the two sides differ by more than 1e-6 in absolute log terms.
  bool double_prefilter = true;
};

/// c < (6/5) R (ln R)^w / w! with R = R(abc), w = omega(abc). Undecided only
/// if the interval evaluation at max_bits still straddles c.
Verdict check_baker(const AbcTriple& t, const PrecisionPolicy& policy = {});

/// Interval-only Baker check at a fixed precision (no prefilter, no
/// escalation); exposed for the precision-monotonicity property.
Verdict check_baker_at(const AbcTriple& t, unsigned bits);

/// c < R^(7/4), decided as c^4 < R^7.
Verdict check_ls(const AbcTriple& t);

/// Fixed-width view of a triple used by the enumerators.
struct SmallTriple {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t radical = 0;
  std::uint32_t omega = 0;

  AbcTriple to_triple() const;
};

inline constexpr std::uint64_t kTripleCmaxCap = 2'000'000;

/// Calls visit for every coprime triple a <= b, a + b = c <= cmax, with c
/// ascending then a ascending. Radicals come from a sieve table.
/// Throws ResourceLimitError for cmax > kTripleCmaxCap.
void for_each_triple(std::uint64_t cmax, const std::function<void(const SmallTriple&)>& visit);

/// As above, restricted to cmin <= c <= cmax, reusing a radical table that
/// covers [1, cmax].
class WindowTables;
void for_each_triple(const WindowTables& radicals, std::uint64_t cmin, std::uint64_t cmax,
                     const std::function<void(const SmallTriple&)>& visit);

Verdict check_baker(const SmallTriple& t, const PrecisionPolicy& policy = {});
Verdict check_ls(const SmallTriple& t);

struct AbcAudit {
  std::uint64_t cmax = 0;
  std::uint64_t triples = 0;
  std::vector<SmallTriple> ls_failures;
  std::vector<SmallTriple> baker_failures;
  std::vector<SmallTriple> baker_undecided;
};

/// Runs check_ls and check_baker over every coprime triple with c <= cmax.
AbcAudit audit_triples(std::uint64_t cmax, const PrecisionPolicy& policy = {}, unsigned workers = 1);

/// Triples with c <= cmax and quality strictly above floor, sorted by
/// descending quality, then c, then a.
std::vector<AbcTriple> enumerate_triples(std::uint64_t cmax, const BigRational& quality_floor, unsigned workers = 1);

/// Parses "p/q", an integer, or a decimal like "1.4" exactly.
std::optional<BigRational> parse_rational(std::string_view text);

struct GapResult {
  std::uint32_t k = 0;
  BigInt x;
  BigInt gap;                 // prod_{even i} (x+i)^C(k,i) - prod_{odd i} (x+i)^C(k,i)
  BigInt predicted_leading;   // -(k-1)! x^(2^(k-1) - k)
  BigRational ratio;          // gap / predicted_leading, exact
};

inline constexpr std::uint32_t kLemmaDefaultCap = 8;

/// Requires x >= 1 and 2 <= k <= cap (ResourceLimitError above the cap).
GapResult lemma_product_gap(const BigInt& x, std::uint32_t k, std::uint32_t cap = kLemmaDefaultCap);

struct EwAbcChainReport {
  BigInt n1;
  BigInt n2;
  bool identity_holds = false;             // (n2+1)^2 - n2(n2+2) = 1
  bool hypothesis_holds = false;           // R(n1+i) = R(n2+i), i = 0,1,2
  std::optional<std::uint32_t> first_failing_shift;
  BigInt radical_n2_block;                 // R(n2(n2+1)(n2+2))
  // The rest is meaningful only when the hypothesis holds.
  bool primes_divide_difference = false;   // every p | n2(n2+1)(n2+2) divides n2 - n1
  bool radical_below_difference = false;   // R <= n2 - n1
  bool ls_inequality_holds = false;        // (n2+1)^8 < R^7 on the triple (1, n2(n2+2), (n2+1)^2)
  /// The hypothesis holds but the R^(7/4) consequence fails: the pair
  /// would be a counterexample to the explicit abc conjecture.
  bool abc_counterexample = false;
};

/// Requires 1 <= n1 < n2.
EwAbcChainReport ew_abc_chain(const BigInt& n1, const BigInt& n2, const FactorOptions& options = {});

}  // namespace blockarith
