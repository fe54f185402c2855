#include "blockarith/window.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "blockarith/errors.hpp"
#include "blockarith/primes.hpp"

namespace blockarith {

namespace {

constexpr std::uint64_t kWindowEndCap = std::uint64_t{1} << 40;

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct SegmentLists {
  std::vector<std::uint32_t> counts;  // primes per entry
  std::vector<std::uint64_t> values;
};

}  // namespace

std::uint64_t WindowTables::powerfree(unsigned m, std::uint64_t x) const {
  auto it = powerfree_.find(m);
  if (it == powerfree_.end()) throw OutOfTableError("Q_" + std::to_string(m) + " was not tabulated");
  return it->second[x - start_];
}

std::span<const std::uint64_t> WindowTables::distinct_primes(std::uint64_t x) const {
  if (prime_offsets_.empty()) throw OutOfTableError("window tables were built without prime lists");
  const std::uint64_t i = x - start_;
  return std::span<const std::uint64_t>(prime_values_).subspan(prime_offsets_[i], prime_offsets_[i + 1] - prime_offsets_[i]);
}

WindowTables build_window_tables(std::uint64_t start, std::uint64_t end, const WindowOptions& options) {
  if (start < 1 || start > end) {
    throw DomainError("window range must satisfy 1 <= start <= end, got [" + std::to_string(start) + ", " +
                      std::to_string(end) + "]");
  }
  if (end >= kWindowEndCap) throw ResourceLimitError("window end " + std::to_string(end) + " exceeds 2^40");
  for (unsigned m : options.moduli) {
    if (m < 2) throw DomainError("powerfree modulus must be >= 2");
  }
  const std::uint64_t size = end - start + 1;
  const std::uint64_t per_entry = 17 + 8 * options.moduli.size() + (options.prime_lists ? 40 : 0);
  require_budget(size * per_entry, "window tables");

  WindowTables t;
  t.start_ = start;
  t.end_ = end;
  t.greatest_prime_.assign(size, 1);
  t.radical_.assign(size, 1);
  t.omega_.assign(size, 0);
  for (unsigned m : options.moduli) t.powerfree_[m].assign(size, 1);

  const std::uint64_t root = isqrt(end);
  std::vector<std::uint32_t> base;
  if (root >= 2) {
    PrimeTable small(root);
    base.assign(small.primes().begin(), small.primes().end());
  }

  const std::uint64_t seg = std::max<std::uint64_t>(options.segment_size, 1);
  const std::uint64_t num_segments = (size + seg - 1) / seg;
  std::vector<SegmentLists> lists(options.prime_lists ? num_segments : 0);

  auto run_segment = [&](std::uint64_t s) {
    const std::uint64_t lo = start + s * seg;
    const std::uint64_t hi = std::min(end, lo + seg - 1);
    const std::uint64_t len = hi - lo + 1;
    std::vector<std::uint64_t> rest(len);
    for (std::uint64_t i = 0; i < len; ++i) rest[i] = lo + i;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> pairs;  // (offset, prime)
    const std::uint64_t off = lo - start;

    for (std::uint32_t p : base) {
      std::uint64_t first = (lo + p - 1) / p * p;
      for (std::uint64_t x = first; x <= hi; x += p) {
        const std::uint64_t i = x - lo;
        unsigned e = 0;
        do {
          rest[i] /= p;
          ++e;
        } while (rest[i] % p == 0);
        t.greatest_prime_[off + i] = p;
        t.radical_[off + i] *= p;
        ++t.omega_[off + i];
        for (auto& [m, q] : t.powerfree_) q[off + i] *= ipow(p, e % m);
        if (options.prime_lists) pairs.emplace_back(static_cast<std::uint32_t>(i), p);
      }
    }
    for (std::uint64_t i = 0; i < len; ++i) {
      const std::uint64_t r = rest[i];
      if (r == 1) continue;
      // A leftover above sqrt(end) is a single prime to the first power.
      t.greatest_prime_[off + i] = r;
      t.radical_[off + i] *= r;
      ++t.omega_[off + i];
      for (auto& [m, q] : t.powerfree_) q[off + i] *= r;
      if (options.prime_lists) pairs.emplace_back(static_cast<std::uint32_t>(i), r);
    }
    if (options.prime_lists) {
      SegmentLists& out = lists[s];
      out.counts.assign(len, 0);
      for (const auto& pr : pairs) ++out.counts[pr.first];
      std::vector<std::uint64_t> cursor(len + 1, 0);
      for (std::uint64_t i = 0; i < len; ++i) cursor[i + 1] = cursor[i] + out.counts[i];
      out.values.resize(pairs.size());
      // pairs are ordered by prime within each entry, so a stable scatter keeps primes ascending.
      for (const auto& pr : pairs) out.values[cursor[pr.first]++] = pr.second;
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(num_segments)));
  if (workers == 1) {
    for (std::uint64_t s = 0; s < num_segments; ++s) run_segment(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t s = w; s < num_segments; s += workers) run_segment(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  if (options.prime_lists) {
    t.prime_offsets_.reserve(size + 1);
    t.prime_offsets_.push_back(0);
    for (auto& sl : lists) {
      for (std::uint32_t c : sl.counts) t.prime_offsets_.push_back(t.prime_offsets_.back() + c);
      t.prime_values_.insert(t.prime_values_.end(), sl.values.begin(), sl.values.end());
      sl = SegmentLists{};
    }
  }
  return t;
}

SlidingOmega::SlidingOmega(const WindowTables& tables) : tables_(&tables) {
  if (!tables.has_prime_lists()) throw OutOfTableError("sliding omega needs window tables with prime lists");
  require_budget((tables.end() + 1) * sizeof(std::uint32_t), "sliding omega counters");
  counts_.assign(tables.end() + 1, 0);
}

void SlidingOmega::add(std::uint64_t x) {
  for (std::uint64_t p : tables_->distinct_primes(x)) {
    if (counts_[p]++ == 0) ++distinct_;
  }
}

void SlidingOmega::remove(std::uint64_t x) {
  for (std::uint64_t p : tables_->distinct_primes(x)) {
    if (--counts_[p] == 0) --distinct_;
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> sliding_block_max_P(const WindowTables& tables, std::uint32_t k) {
  if (k < 1 || k > tables.size()) {
    throw DomainError("window length " + std::to_string(k) + " does not fit table of length " +
                      std::to_string(tables.size()));
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  out.reserve(tables.size() - k + 1);
  for_each_block_max_P(tables, k, tables.start(), tables.end() - k + 1,
                       [&](std::uint64_t n, std::uint64_t p) { out.emplace_back(n, p); });
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> sliding_block_omega(const WindowTables& tables, std::uint32_t k) {
  if (k < 1 || k > tables.size()) {
    throw DomainError("window length " + std::to_string(k) + " does not fit table of length " +
                      std::to_string(tables.size()));
  }
  SlidingOmega counter(tables);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  out.reserve(tables.size() - k + 1);
  for_each_block_omega(counter, k, tables.start(), tables.end() - k + 1,
                       [&](std::uint64_t n, std::uint32_t w) { out.emplace_back(n, w); });
  return out;
}

}  // namespace blockarith
