#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blockarith/bigint.hpp"
#include "blockarith/factor.hpp"

namespace blockarith {

/// Named inequalities on P(n,k) and omega(n,k) that the scanners check.
enum class Inequality {
  kSylvester,  // P(n,k) > k, n > k
  kLS18,       // P(n,k) > 9k/5, n > k
  kLS195,      // P(n,k) > 39k/20, n > k
  kLS197,      // P(n,k) > 197k/100, n > k + 13
  kLS2K,       // P(n,k) > 2k, n > max(k + 13, 279k/262)
  kNS442,      // P(n,k) > 221k/50, n > 4k
  kOmegaPi,    // omega(n,k) > pi(k), n > k
  kOmega34,    // omega(n,k) >= pi(k) + [3 pi(k)/4] - 1 + delta(k), n > k
  kOmega23,    // omega(n,k) >= pi(k) + [2 pi(k)/3] - 1, n > k
  kOmega2K,    // omega(n,k) >= pi(2k), 12n > 17k and (n,k) != (6,4)
};

std::string_view inequality_name(Inequality id);
std::optional<Inequality> parse_inequality(std::string_view name);
std::vector<Inequality> all_inequalities();

/// True for the ids bounding P(n,k); the rest bound omega(n,k).
bool bounds_greatest_prime(Inequality id);

/// Exact nonnegative rational with positive denominator, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  friend bool operator==(const Rational&, const Rational&) = default;
  std::string str() const;
};

struct ExceptionRecord {
  Inequality id{};
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::uint64_t lhs = 0;  // P(n,k) or omega(n,k)
  Rational rhs;           // the bound the lhs failed to meet
  bool domain_ok = true;

  friend bool operator==(const ExceptionRecord&, const ExceptionRecord&) = default;
};

/// delta(k): 2 for 3 <= k <= 6, 1 for 7 <= k <= 16, 0 otherwise.
int delta_k(std::uint32_t k);

/// Side condition of each inequality.
bool in_domain(Inequality id, std::uint64_t n, std::uint32_t k);

/// Right-hand side of the inequality at k. The omega bounds need pi(k) and
/// pi(2k), which the caller supplies.
Rational inequality_bound(Inequality id, std::uint32_t k, std::uint64_t pi_k, std::uint64_t pi_2k);

/// Whether lhs satisfies the inequality against its bound (exact comparison).
bool satisfies(Inequality id, std::uint64_t lhs, const Rational& bound);

/// Evaluates one point directly through block_stats; nullopt when the point
/// is out of domain or the inequality holds.
std::optional<ExceptionRecord> check_point(Inequality id, std::uint64_t n, std::uint32_t k,
                                           const FactorOptions& options = {});

struct ScanSpec {
  Inequality id = Inequality::kLS18;
  std::uint32_t kmin = 3;
  std::uint32_t kmax = 3;
  std::uint64_t nmin = 1;
  std::uint64_t nmax = 1;
  unsigned workers = 1;
  /// k values already covered by a checkpoint; skipped by the scan.
  std::uint32_t resume_after_k = 0;
  /// Number of consecutive k values processed between band callbacks.
  std::uint32_t band_size = 16;
  /// Receives (last k of band, sorted records of that band) after each band.
  std::function<void(std::uint32_t, const std::vector<ExceptionRecord>&)> on_band;
};

/// Exceptions to a P inequality over the rectangle, sorted by (k, n).
/// Throws DomainError for kmin < 3 or empty ranges.
std::vector<ExceptionRecord> scan_P(const ScanSpec& spec);

/// Exceptions to an omega inequality over the rectangle, sorted by (k, n).
std::vector<ExceptionRecord> scan_omega(const ScanSpec& spec);

/// Dispatches on the inequality family.
std::vector<ExceptionRecord> scan(const ScanSpec& spec);

/// A point just outside an inequality's side condition where the inequality
/// fails, showing the side condition cannot be dropped.
struct BoundaryWitness {
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::uint64_t lhs = 0;
  Rational rhs;
  bool domain_ok = false;
  bool satisfied = false;
};

/// Known boundary points for an inequality inside the rectangle:
/// (279,262) for LS2K, (6,4) and (34,24) for OMEGA_2K. Values are computed,
/// not hardcoded.
std::vector<BoundaryWitness> boundary_witnesses(const ScanSpec& spec, const FactorOptions& options = {});

/// g = prod_{p < k} p^{v_p(k!)} together with k!.
std::pair<BigInt, BigInt> erdos_gcd_bound(std::uint32_t k);

struct HansonReport {
  std::uint64_t rmax = 0;
  bool holds = true;
  std::optional<std::uint64_t> first_failure;
  /// max over r of log(primorial(r) / 3^r) and where it is attained.
  double max_log_ratio = 0.0;
  std::uint64_t argmax_r = 1;
};

/// Checks primorial(r) < 3^r exactly for every 1 <= r <= rmax.
HansonReport hanson_check(std::uint64_t rmax);

struct KhodzaevReport {
  BigInt n;
  std::uint32_t kmax = 0;
  std::optional<std::uint32_t> threshold;  // least k with R(n,k) < k^k
  BigInt radical_at_threshold;
  double ratio_to_sqrt_n = 0.0;  // threshold / sqrt(n), diagnostic only
};

/// Smallest k <= kmax with R(n,k) < k^k, compared exactly.
KhodzaevReport khodzaev_threshold(const BigInt& n, std::uint32_t kmax, const FactorOptions& options = {});

}  // namespace blockarith
