#include "blockarith/verifiers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "blockarith/block_stats.hpp"
#include "blockarith/errors.hpp"
#include "blockarith/factor.hpp"
#include "blockarith/primes.hpp"
#include "blockarith/window.hpp"

namespace blockarith {

namespace {

struct InequalityInfo {
  Inequality id;
  std::string_view name;
};

constexpr std::array<InequalityInfo, 10> kInequalities = {{
    {Inequality::kSylvester, "SYLVESTER"},
    {Inequality::kLS18, "LS18"},
    {Inequality::kLS195, "LS195"},
    {Inequality::kLS197, "LS197"},
    {Inequality::kLS2K, "LS2K"},
    {Inequality::kNS442, "NS442"},
    {Inequality::kOmegaPi, "OMEGA_PI"},
    {Inequality::kOmega34, "OMEGA_34"},
    {Inequality::kOmega23, "OMEGA_23"},
    {Inequality::kOmega2K, "OMEGA_2K"},
}};

// Multiplier c of the bound P(n,k) > c*k, as num/den.
std::pair<std::int64_t, std::int64_t> p_multiplier(Inequality id) {
  switch (id) {
    case Inequality::kSylvester: return {1, 1};
    case Inequality::kLS18: return {9, 5};
    case Inequality::kLS195: return {39, 20};
    case Inequality::kLS197: return {197, 100};
    case Inequality::kLS2K: return {2, 1};
    case Inequality::kNS442: return {221, 50};
    default: throw DomainError("not a greatest-prime inequality");
  }
}

void validate_spec(const ScanSpec& spec) {
  if (spec.kmin < 3) throw DomainError("scans require kmin >= 3");
  if (spec.kmin > spec.kmax) throw DomainError("empty k range");
  if (spec.nmin > spec.nmax) throw DomainError("empty n range");
  if (spec.nmin < 1) throw DomainError("nmin must be >= 1");
}

// Runs body(k, out) for every k of each band, spreading k across workers,
// then hands the sorted band to the callback.
template <typename MakeState, typename Body>
std::vector<ExceptionRecord> run_bands(const ScanSpec& spec, MakeState make_state, Body body) {
  std::vector<ExceptionRecord> all;
  const std::uint32_t first_k = std::max(spec.kmin, spec.resume_after_k + 1);
  const std::uint32_t band = std::max<std::uint32_t>(spec.band_size, 1);
  const unsigned workers = std::max(1u, spec.workers);
  for (std::uint64_t band_lo = first_k; band_lo <= spec.kmax; band_lo += band) {
    const auto band_hi = static_cast<std::uint32_t>(std::min<std::uint64_t>(spec.kmax, band_lo + band - 1));
    std::vector<std::vector<ExceptionRecord>> per_k(band_hi - band_lo + 1);
    auto work = [&](unsigned w) {
      auto state = make_state();
      for (std::uint64_t k = band_lo + w; k <= band_hi; k += workers) {
        body(state, static_cast<std::uint32_t>(k), per_k[k - band_lo]);
      }
    };
    const unsigned used = std::min<unsigned>(workers, band_hi - band_lo + 1);
    if (used == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < used; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    std::vector<ExceptionRecord> band_records;
    for (auto& v : per_k) band_records.insert(band_records.end(), v.begin(), v.end());
    if (spec.on_band) spec.on_band(band_hi, band_records);
    all.insert(all.end(), band_records.begin(), band_records.end());
  }
  return all;
}

}  // namespace

std::string_view inequality_name(Inequality id) {
  for (const auto& info : kInequalities) {
    if (info.id == id) return info.name;
  }
  return "UNKNOWN";
}

std::optional<Inequality> parse_inequality(std::string_view name) {
  for (const auto& info : kInequalities) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

std::vector<Inequality> all_inequalities() {
  std::vector<Inequality> out;
  for (const auto& info : kInequalities) out.push_back(info.id);
  return out;
}

bool bounds_greatest_prime(Inequality id) {
  switch (id) {
    case Inequality::kOmegaPi:
    case Inequality::kOmega34:
    case Inequality::kOmega23:
    case Inequality::kOmega2K: return false;
    default: return true;
  }
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return Rational{num / g, den / g};
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

int delta_k(std::uint32_t k) {
  if (k >= 3 && k <= 6) return 2;
  if (k >= 7 && k <= 16) return 1;
  return 0;
}

bool in_domain(Inequality id, std::uint64_t n, std::uint32_t k) {
  switch (id) {
    case Inequality::kSylvester:
    case Inequality::kLS18:
    case Inequality::kLS195:
    case Inequality::kOmegaPi:
    case Inequality::kOmega34:
    case Inequality::kOmega23: return n > k;
    case Inequality::kLS197: return n > std::uint64_t{k} + 13;
    case Inequality::kLS2K: return n > std::uint64_t{k} + 13 && 262 * n > 279 * std::uint64_t{k};
    case Inequality::kNS442: return n > 4 * std::uint64_t{k};
    case Inequality::kOmega2K: return 12 * n > 17 * std::uint64_t{k} && !(n == 6 && k == 4);
  }
  return false;
}

Rational inequality_bound(Inequality id, std::uint32_t k, std::uint64_t pi_k, std::uint64_t pi_2k) {
  const auto pk = static_cast<std::int64_t>(pi_k);
  switch (id) {
    case Inequality::kOmegaPi: return Rational::make(pk, 1);
    case Inequality::kOmega34: return Rational::make(pk + (3 * pk) / 4 - 1 + delta_k(k), 1);
    case Inequality::kOmega23: return Rational::make(pk + (2 * pk) / 3 - 1, 1);
    case Inequality::kOmega2K: return Rational::make(static_cast<std::int64_t>(pi_2k), 1);
    default: {
      const auto [num, den] = p_multiplier(id);
      return Rational::make(num * static_cast<std::int64_t>(k), den);
    }
  }
}

bool satisfies(Inequality id, std::uint64_t lhs, const Rational& bound) {
  const auto scaled = static_cast<__int128>(lhs) * bound.den;
  const auto rhs = static_cast<__int128>(bound.num);
  // omega(n,k) > pi(k) and every P bound are strict; the other omega bounds are >=.
  if (bounds_greatest_prime(id) || id == Inequality::kOmegaPi) return scaled > rhs;
  return scaled >= rhs;
}

std::optional<ExceptionRecord> check_point(Inequality id, std::uint64_t n, std::uint32_t k,
                                           const FactorOptions& options) {
  if (!in_domain(id, n, k)) return std::nullopt;
  const BlockStats stats = block_stats(big(n), k, {}, options);
  std::uint64_t lhs = 0;
  Rational bound;
  if (bounds_greatest_prime(id)) {
    lhs = to_u64(stats.greatest_prime);
    bound = inequality_bound(id, k, 0, 0);
  } else {
    const PrimeTable table(std::max<std::uint64_t>(2, 2 * std::uint64_t{k}));
    lhs = stats.omega;
    bound = inequality_bound(id, k, table.pi(k), table.pi(2 * std::uint64_t{k}));
  }
  if (satisfies(id, lhs, bound)) return std::nullopt;
  return ExceptionRecord{id, n, k, lhs, bound, true};
}

std::vector<ExceptionRecord> scan_P(const ScanSpec& spec) {
  validate_spec(spec);
  if (!bounds_greatest_prime(spec.id)) throw DomainError("scan_P given an omega inequality");
  const std::uint64_t table_start = std::max<std::uint64_t>(spec.nmin, std::uint64_t{spec.kmin} + 1);
  if (table_start > spec.nmax) return {};
  WindowOptions opts;
  opts.workers = spec.workers;
  const WindowTables tables = build_window_tables(table_start, spec.nmax + spec.kmax - 1, opts);

  auto body = [&](int&, std::uint32_t k, std::vector<ExceptionRecord>& out) {
    const std::uint64_t n_first = std::max<std::uint64_t>(spec.nmin, std::uint64_t{k} + 1);
    const Rational bound = inequality_bound(spec.id, k, 0, 0);
    for_each_block_max_P(tables, k, n_first, spec.nmax, [&](std::uint64_t n, std::uint64_t p) {
      if (in_domain(spec.id, n, k) && !satisfies(spec.id, p, bound)) {
        out.push_back(ExceptionRecord{spec.id, n, k, p, bound, true});
      }
    });
  };
  return run_bands(spec, [] { return 0; }, body);
}

std::vector<ExceptionRecord> scan_omega(const ScanSpec& spec) {
  validate_spec(spec);
  if (bounds_greatest_prime(spec.id)) throw DomainError("scan_omega given a greatest-prime inequality");
  const std::uint64_t table_start = std::max<std::uint64_t>(spec.nmin, std::uint64_t{spec.kmin} + 1);
  if (table_start > spec.nmax) return {};
  WindowOptions opts;
  opts.workers = spec.workers;
  opts.prime_lists = true;
  const WindowTables tables = build_window_tables(table_start, spec.nmax + spec.kmax - 1, opts);
  const PrimeTable pi_table(std::max<std::uint64_t>(2, 2 * std::uint64_t{spec.kmax}));

  auto body = [&](SlidingOmega& counter, std::uint32_t k, std::vector<ExceptionRecord>& out) {
    const std::uint64_t n_first = std::max<std::uint64_t>(spec.nmin, std::uint64_t{k} + 1);
    const Rational bound = inequality_bound(spec.id, k, pi_table.pi(k), pi_table.pi(2 * std::uint64_t{k}));
    for_each_block_omega(counter, k, n_first, spec.nmax, [&](std::uint64_t n, std::uint32_t w) {
      if (in_domain(spec.id, n, k) && !satisfies(spec.id, w, bound)) {
        out.push_back(ExceptionRecord{spec.id, n, k, w, bound, true});
      }
    });
  };
  return run_bands(spec, [&] { return SlidingOmega(tables); }, body);
}

std::vector<ExceptionRecord> scan(const ScanSpec& spec) {
  return bounds_greatest_prime(spec.id) ? scan_P(spec) : scan_omega(spec);
}

std::vector<BoundaryWitness> boundary_witnesses(const ScanSpec& spec, const FactorOptions& options) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> points;
  if (spec.id == Inequality::kLS2K) points = {{279, 262}};
  if (spec.id == Inequality::kOmega2K) points = {{6, 4}, {34, 24}};
  std::vector<BoundaryWitness> out;
  for (const auto& [n, k] : points) {
    if (k < spec.kmin || k > spec.kmax || n < spec.nmin || n > spec.nmax) continue;
    const BlockStats stats = block_stats(big(n), k, {}, options);
    BoundaryWitness w;
    w.n = n;
    w.k = k;
    w.domain_ok = in_domain(spec.id, n, k);
    if (bounds_greatest_prime(spec.id)) {
      w.lhs = to_u64(stats.greatest_prime);
      w.rhs = inequality_bound(spec.id, k, 0, 0);
    } else {
      const PrimeTable table(2 * std::uint64_t{k});
      w.lhs = stats.omega;
      w.rhs = inequality_bound(spec.id, k, table.pi(k), table.pi(2 * std::uint64_t{k}));
    }
    w.satisfied = satisfies(spec.id, w.lhs, w.rhs);
    out.push_back(w);
  }
  return out;
}

std::pair<BigInt, BigInt> erdos_gcd_bound(std::uint32_t k) {
  if (k < 2) throw DomainError("erdos_gcd_bound needs k >= 2");
  BigInt g = 1;
  for (std::uint32_t p = 2; p < k; ++p) {
    if (is_prime(std::uint64_t{p})) g *= pow(big(p), legendre_vp(k, p));
  }
  return {g, factorial(k)};
}

HansonReport hanson_check(std::uint64_t rmax) {
  if (rmax < 1) throw DomainError("hanson_check needs rmax >= 1");
  HansonReport report;
  report.rmax = rmax;
  // r = 1: empty product 1 < 3.
  report.max_log_ratio = -std::log(3.0);
  report.argmax_r = 1;
  if (rmax < 2) return report;

  // Between consecutive primes the product is constant while 3^r grows, so
  // primorial(r) < 3^r for all r follows from the check at r = 1 and at
  // every prime r.
  const PrimeTable table(rmax);
  BigInt product = 1;
  BigInt power = 1;  // 3^last
  std::uint64_t last = 0;
  const double log3 = std::log(3.0);
  for (std::uint32_t p : table.primes()) {
    product *= p;
    for (std::uint64_t gap = p - last; gap > 0;) {
      const std::uint64_t step = std::min<std::uint64_t>(gap, 40);
      BigInt chunk;
      mpz_ui_pow_ui(chunk.get_mpz_t(), 3, step);
      power *= chunk;
      gap -= step;
    }
    last = p;
    if (product >= power) {
      report.holds = false;
      if (!report.first_failure) report.first_failure = p;
    }
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, product.get_mpz_t());
    const double log_ratio = std::log(mant) + static_cast<double>(exp2) * std::log(2.0) - static_cast<double>(p) * log3;
    if (log_ratio > report.max_log_ratio) {
      report.max_log_ratio = log_ratio;
      report.argmax_r = p;
    }
  }
  return report;
}

KhodzaevReport khodzaev_threshold(const BigInt& n, std::uint32_t kmax, const FactorOptions& options) {
  if (sgn(n) <= 0) throw DomainError("khodzaev_threshold needs n >= 1");
  KhodzaevReport report;
  report.n = n;
  report.kmax = kmax;
  std::set<BigInt> primes;
  BigInt rad = 1;
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    const Factorization f = factorize(n + (k - 1), options);
    for (const auto& pp : f.factors()) {
      if (primes.insert(pp.prime).second) rad *= pp.prime;
    }
    if (rad < pow(big(k), k)) {
      report.threshold = k;
      report.radical_at_threshold = rad;
      report.ratio_to_sqrt_n = static_cast<double>(k) / std::sqrt(n.get_d());
      break;
    }
  }
  return report;
}

}  // namespace blockarith
