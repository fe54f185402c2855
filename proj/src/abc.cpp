#include "blockarith/abc.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "blockarith/block_stats.hpp"
#include "blockarith/errors.hpp"
#include "blockarith/factor.hpp"
#include "blockarith/window.hpp"

namespace blockarith {

namespace {

// RAII holder for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

constexpr double kPrefilterMargin = 1e-6;

// Decides Baker's inequality in log form from doubles; nullopt when the
// sides are too close to trust double rounding.
std::optional<Verdict> baker_prefilter(double c, double radical, std::uint32_t omega) {
  const double log_r = std::log(radical);
  const double rhs = std::log(1.2) + log_r + omega * std::log(log_r) - std::lgamma(omega + 1.0);
  const double lhs = std::log(c);
  if (rhs - lhs > kPrefilterMargin) return Verdict::kHolds;
  if (lhs - rhs > kPrefilterMargin) return Verdict::kFails;
  return std::nullopt;
}

std::vector<SmallTriple> collect_triples(const WindowTables& rad, std::uint64_t cmax, unsigned workers,
                                         const std::function<bool(const SmallTriple&)>& keep) {
  workers = std::max(1u, workers);
  std::vector<std::vector<SmallTriple>> parts(workers);
  // Interleaved c-ranges keep the work balanced; each part stays ordered by (c, a).
  constexpr std::uint64_t kChunk = 64;
  auto work = [&](unsigned w) {
    for (std::uint64_t lo = 2 + w * kChunk; lo <= cmax; lo += workers * kChunk) {
      const std::uint64_t hi = std::min(cmax, lo + kChunk - 1);
      for_each_triple(rad, lo, hi, [&](const SmallTriple& t) {
        if (keep(t)) parts[w].push_back(t);
      });
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::vector<SmallTriple> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end(),
            [](const SmallTriple& x, const SmallTriple& y) { return x.c != y.c ? x.c < y.c : x.a < y.a; });
  return out;
}

}  // namespace

double AbcTriple::quality() const { return std::log(c.get_d()) / std::log(radical.get_d()); }

bool AbcTriple::quality_exceeds(const BigRational& floor) const {
  if (sgn(floor) < 0) return true;
  const BigInt& num = floor.get_num();
  const BigInt& den = floor.get_den();
  if (!num.fits_ulong_p() || !den.fits_ulong_p()) throw ResourceLimitError("quality floor has oversized terms");
  return pow(c, den.get_ui()) > pow(radical, num.get_ui());
}

AbcTriple make_triple(const BigInt& a, const BigInt& b, const BigInt& c, const FactorOptions& options) {
  if (sgn(a) <= 0 || sgn(b) <= 0 || sgn(c) <= 0) throw ValidationError("abc triple entries must be positive");
  if (a + b != c) throw ValidationError("abc triple needs a + b = c");
  if (a > b) throw ValidationError("abc triple needs a <= b");
  if (gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1) throw ValidationError("abc triple must be pairwise coprime");
  AbcTriple t{a, b, c, 1, 0};
  for (const BigInt* v : {&a, &b, &c}) {
    const Factorization f = factorize(*v, options);
    t.radical *= radical(f);
    t.omega += omega(f);
  }
  return t;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kFails: return "fails";
    case Verdict::kUndecided: return "undecided";
  }
  return "undecided";
}

Verdict check_baker_at(const AbcTriple& t, unsigned bits) {
  if (t.radical < 2) throw DomainError("Baker check needs R(abc) >= 2");
  const auto prec = static_cast<mpfr_prec_t>(bits);
  Mpfr log_lo(prec), log_hi(prec), six_r(prec), den(prec), lo(prec), hi(prec);
  mpfr_set_z(log_lo.get(), t.radical.get_mpz_t(), MPFR_RNDD);
  mpfr_log(log_lo.get(), log_lo.get(), MPFR_RNDD);
  mpfr_set_z(log_hi.get(), t.radical.get_mpz_t(), MPFR_RNDU);
  mpfr_log(log_hi.get(), log_hi.get(), MPFR_RNDU);

  const BigInt six_radical = 6 * t.radical;
  const BigInt five_fact = 5 * factorial(t.omega);

  // Lower bound of the right side: every rounding pushed down.
  mpfr_pow_ui(lo.get(), log_lo.get(), t.omega, MPFR_RNDD);
  mpfr_set_z(six_r.get(), six_radical.get_mpz_t(), MPFR_RNDD);
  mpfr_mul(lo.get(), lo.get(), six_r.get(), MPFR_RNDD);
  mpfr_set_z(den.get(), five_fact.get_mpz_t(), MPFR_RNDU);
  mpfr_div(lo.get(), lo.get(), den.get(), MPFR_RNDD);

  mpfr_pow_ui(hi.get(), log_hi.get(), t.omega, MPFR_RNDU);
  mpfr_set_z(six_r.get(), six_radical.get_mpz_t(), MPFR_RNDU);
  mpfr_mul(hi.get(), hi.get(), six_r.get(), MPFR_RNDU);
  mpfr_set_z(den.get(), five_fact.get_mpz_t(), MPFR_RNDD);
  mpfr_div(hi.get(), hi.get(), den.get(), MPFR_RNDU);

  if (mpfr_cmp_z(lo.get(), t.c.get_mpz_t()) > 0) return Verdict::kHolds;
  if (mpfr_cmp_z(hi.get(), t.c.get_mpz_t()) <= 0) return Verdict::kFails;
  return Verdict::kUndecided;
}

Verdict check_baker(const AbcTriple& t, const PrecisionPolicy& policy) {
  if (policy.double_prefilter && t.c.fits_ulong_p()) {
    if (auto v = baker_prefilter(t.c.get_d(), t.radical.get_d(), t.omega)) return *v;
  }
  for (unsigned bits = std::max(policy.start_bits, 2u); bits <= policy.max_bits; bits *= 2) {
    const Verdict v = check_baker_at(t, bits);
    if (v != Verdict::kUndecided) return v;
  }
  return Verdict::kUndecided;
}

Verdict check_ls(const AbcTriple& t) {
  return pow(t.c, 4) < pow(t.radical, 7) ? Verdict::kHolds : Verdict::kFails;
}

AbcTriple SmallTriple::to_triple() const { return AbcTriple{big(a), big(b), big(c), big(radical), omega}; }

Verdict check_baker(const SmallTriple& t, const PrecisionPolicy& policy) {
  if (policy.double_prefilter) {
    if (auto v = baker_prefilter(static_cast<double>(t.c), static_cast<double>(t.radical), t.omega)) return *v;
  }
  PrecisionPolicy rest = policy;
  rest.double_prefilter = false;
  return check_baker(t.to_triple(), rest);
}

Verdict check_ls(const SmallTriple& t) {
  // c^4 < c^7 <= R^7 whenever R >= c >= 2.
  if (t.radical >= t.c) return Verdict::kHolds;
  return check_ls(t.to_triple());
}

void for_each_triple(const WindowTables& rad, std::uint64_t cmin, std::uint64_t cmax,
                     const std::function<void(const SmallTriple&)>& visit) {
  if (cmax > kTripleCmaxCap) {
    throw ResourceLimitError("triple enumeration caps c at " + std::to_string(kTripleCmaxCap));
  }
  if (cmax > rad.end() || rad.start() != 1) throw OutOfTableError("radical table does not cover [1, cmax]");
  for (std::uint64_t c = std::max<std::uint64_t>(cmin, 2); c <= cmax; ++c) {
    const std::uint64_t rc = rad.radical(c);
    const std::uint32_t wc = rad.omega(c);
    for (std::uint64_t a = 1; 2 * a <= c; ++a) {
      // gcd(a, c) = 1 with a + b = c makes the triple pairwise coprime.
      if (std::gcd(a, c) != 1) continue;
      const std::uint64_t b = c - a;
      visit(SmallTriple{a, b, c, rad.radical(a) * rad.radical(b) * rc, rad.omega(a) + rad.omega(b) + wc});
    }
  }
}

void for_each_triple(std::uint64_t cmax, const std::function<void(const SmallTriple&)>& visit) {
  if (cmax < 2) return;
  if (cmax > kTripleCmaxCap) {
    throw ResourceLimitError("triple enumeration caps c at " + std::to_string(kTripleCmaxCap));
  }
  const WindowTables rad = build_window_tables(1, cmax);
  for_each_triple(rad, 2, cmax, visit);
}

AbcAudit audit_triples(std::uint64_t cmax, const PrecisionPolicy& policy, unsigned workers) {
  AbcAudit audit;
  audit.cmax = cmax;
  if (cmax < 2) return audit;
  if (cmax > kTripleCmaxCap) {
    throw ResourceLimitError("triple enumeration caps c at " + std::to_string(kTripleCmaxCap));
  }
  const WindowTables rad = build_window_tables(1, cmax);
  std::atomic<std::uint64_t> visited{0};
  auto keep = [&](const SmallTriple& t) {
    visited.fetch_add(1, std::memory_order_relaxed);
    return check_ls(t) == Verdict::kFails || check_baker(t, policy) != Verdict::kHolds;
  };
  const std::vector<SmallTriple> kept = collect_triples(rad, cmax, workers, keep);
  for (const auto& t : kept) {
    if (check_ls(t) == Verdict::kFails) audit.ls_failures.push_back(t);
    const Verdict b = check_baker(t, policy);
    if (b == Verdict::kFails) audit.baker_failures.push_back(t);
    if (b == Verdict::kUndecided) audit.baker_undecided.push_back(t);
  }
  audit.triples = visited.load();
  return audit;
}

std::vector<AbcTriple> enumerate_triples(std::uint64_t cmax, const BigRational& quality_floor, unsigned workers) {
  if (cmax < 2) return {};
  if (cmax > kTripleCmaxCap) {
    throw ResourceLimitError("triple enumeration caps c at " + std::to_string(kTripleCmaxCap));
  }
  const WindowTables rad = build_window_tables(1, cmax);
  const double fnum = quality_floor.get_num().get_d();
  const double fden = quality_floor.get_den().get_d();
  auto keep = [&](const SmallTriple& t) {
    // Cheap rejection of clearly low quality; borderline cases go exact.
    const double margin = fden * std::log(static_cast<double>(t.c)) - fnum * std::log(static_cast<double>(t.radical));
    if (margin < -1e-6) return false;
    return t.to_triple().quality_exceeds(quality_floor);
  };
  const std::vector<SmallTriple> kept = collect_triples(rad, cmax, workers, keep);
  std::vector<AbcTriple> out;
  out.reserve(kept.size());
  for (const auto& t : kept) out.push_back(t.to_triple());
  std::stable_sort(out.begin(), out.end(), [](const AbcTriple& x, const AbcTriple& y) {
    const double qx = x.quality();
    const double qy = y.quality();
    if (qx != qy) return qx > qy;
    if (x.c != y.c) return x.c < y.c;
    return x.a < y.a;
  });
  return out;
}

std::optional<BigRational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_bigint(text.substr(0, slash));
    auto den = parse_bigint(text.substr(slash + 1));
    if (!num || !den || sgn(*den) == 0) return std::nullopt;
    BigRational q(*num, *den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    auto whole = parse_bigint(digits.empty() || digits == "-" || digits == "+" ? digits + "0" : digits);
    if (!whole) return std::nullopt;
    BigInt scale = pow(BigInt(10), frac.size());
    BigInt fpart(frac, 10);
    BigInt num = *whole * scale + (text[0] == '-' ? -fpart : fpart);
    BigRational q(num, scale);
    q.canonicalize();
    return q;
  }
  auto whole = parse_bigint(text);
  if (!whole) return std::nullopt;
  return BigRational(*whole);
}

GapResult lemma_product_gap(const BigInt& x, std::uint32_t k, std::uint32_t cap) {
  if (sgn(x) <= 0) throw DomainError("lemma_product_gap needs x >= 1");
  if (k < 2) throw DomainError("lemma_product_gap needs k >= 2");
  if (k > cap) {
    throw ResourceLimitError("lemma degree cap exceeded: k=" + std::to_string(k) + " > " + std::to_string(cap));
  }
  BigInt even = 1;
  BigInt odd = 1;
  for (std::uint32_t i = 0; i <= k; ++i) {
    const BigInt term = pow(x + i, binomial(k, i).get_ui());
    (i % 2 == 0 ? even : odd) *= term;
  }
  GapResult r;
  r.k = k;
  r.x = x;
  r.gap = even - odd;
  const unsigned long degree = (1ul << (k - 1)) - k;
  r.predicted_leading = -factorial(k - 1) * pow(x, degree);
  r.ratio = BigRational(r.gap, r.predicted_leading);
  r.ratio.canonicalize();
  return r;
}

EwAbcChainReport ew_abc_chain(const BigInt& n1, const BigInt& n2, const FactorOptions& options) {
  if (sgn(n1) <= 0 || n1 >= n2) throw DomainError("ew_abc_chain needs 1 <= n1 < n2");
  EwAbcChainReport rep;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.identity_holds = (n2 + 1) * (n2 + 1) - n2 * (n2 + 2) == 1;

  rep.hypothesis_holds = true;
  for (std::uint32_t i = 0; i < 3; ++i) {
    if (radical(factorize(n1 + i, options)) != radical(factorize(n2 + i, options))) {
      rep.hypothesis_holds = false;
      rep.first_failing_shift = i;
      break;
    }
  }

  const Factorization block = block_factorization(n2, 3, options);
  rep.radical_n2_block = radical(block);
  const BigInt diff = n2 - n1;
  rep.primes_divide_difference = std::all_of(block.factors().begin(), block.factors().end(),
                                             [&](const PrimePower& pp) { return diff % pp.prime == 0; });
  rep.radical_below_difference = rep.radical_n2_block <= diff;
  // Triple (1, n2(n2+2), (n2+1)^2) has R(abc) = R(n2(n2+1)(n2+2)).
  const BigInt c = (n2 + 1) * (n2 + 1);
  rep.ls_inequality_holds = pow(c, 4) < pow(rep.radical_n2_block, 7);
  rep.abc_counterexample = rep.hypothesis_holds && !rep.ls_inequality_holds;
  return rep;
}

}  // namespace blockarith
