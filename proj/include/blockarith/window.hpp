#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace blockarith {

struct WindowOptions {
  std::vector<unsigned> moduli;
  /// Keep the distinct primes of every entry (needed for sliding omega).
  bool prime_lists = false;
  std::uint64_t segment_size = std::uint64_t{1} << 15;
  unsigned workers = 1;
};

/// Per-integer P, R, omega (and optionally Q_m and prime lists) over
/// [start, end], filled by a segmented sieve. Immutable once built.
class WindowTables {
 public:
  std::uint64_t start() const { return start_; }
  std::uint64_t end() const { return end_; }
  std::uint64_t size() const { return end_ - start_ + 1; }
  bool contains(std::uint64_t x) const { return x >= start_ && x <= end_; }

  std::uint64_t greatest_prime(std::uint64_t x) const { return greatest_prime_[x - start_]; }
  std::uint64_t radical(std::uint64_t x) const { return radical_[x - start_]; }
  std::uint32_t omega(std::uint64_t x) const { return omega_[x - start_]; }
  /// Q_m(x); throws OutOfTableError if m was not requested at build time.
  std::uint64_t powerfree(unsigned m, std::uint64_t x) const;
  /// Distinct primes of x ascending; throws OutOfTableError without prime lists.
  std::span<const std::uint64_t> distinct_primes(std::uint64_t x) const;

  std::span<const std::uint64_t> greatest_primes() const { return greatest_prime_; }
  std::span<const std::uint64_t> radicals() const { return radical_; }
  std::span<const std::uint8_t> omegas() const { return omega_; }
  bool has_prime_lists() const { return !prime_offsets_.empty(); }

 private:
  friend WindowTables build_window_tables(std::uint64_t start, std::uint64_t end, const WindowOptions& options);

  std::uint64_t start_ = 1;
  std::uint64_t end_ = 0;
  std::vector<std::uint64_t> greatest_prime_;
  std::vector<std::uint64_t> radical_;
  std::vector<std::uint8_t> omega_;
  std::map<unsigned, std::vector<std::uint64_t>> powerfree_;
  std::vector<std::uint64_t> prime_offsets_;
  std::vector<std::uint64_t> prime_values_;
};

/// Requires 1 <= start <= end, end < 2^40, and the tables within budget.
WindowTables build_window_tables(std::uint64_t start, std::uint64_t end, const WindowOptions& options = {});

/// Monotonic deque giving the maximum of a sliding window.
template <typename T>
class SlidingMax {
 public:
  void push(std::uint64_t index, T value) {
    while (!items_.empty() && items_.back().second <= value) items_.pop_back();
    items_.emplace_back(index, value);
  }
  /// Drops entries with index < first.
  void expire_before(std::uint64_t first) {
    while (!items_.empty() && items_.front().first < first) items_.pop_front();
  }
  T max() const { return items_.front().second; }
  bool empty() const { return items_.empty(); }
  void clear() { items_.clear(); }

 private:
  std::deque<std::pair<std::uint64_t, T>> items_;
};

/// Number of distinct primes across a sliding multiset of integers.
class SlidingOmega {
 public:
  explicit SlidingOmega(const WindowTables& tables);
  void add(std::uint64_t x);
  void remove(std::uint64_t x);
  std::uint32_t distinct() const { return distinct_; }

 private:
  const WindowTables* tables_;
  std::vector<std::uint32_t> counts_;
  std::uint32_t distinct_ = 0;
};

/// Calls visit(n, P(n,k)) for every n in [n_first, n_last]; the blocks must
/// lie inside the tables.
template <typename Visit>
void for_each_block_max_P(const WindowTables& tables, std::uint32_t k, std::uint64_t n_first, std::uint64_t n_last,
                          Visit&& visit) {
  if (n_first > n_last) return;
  SlidingMax<std::uint64_t> window;
  for (std::uint64_t x = n_first; x + 1 < n_first + k; ++x) window.push(x, tables.greatest_prime(x));
  for (std::uint64_t n = n_first; n <= n_last; ++n) {
    const std::uint64_t last = n + k - 1;
    window.push(last, tables.greatest_prime(last));
    window.expire_before(n);
    visit(n, window.max());
  }
}

/// Calls visit(n, omega(n,k)) for every n in [n_first, n_last].
template <typename Visit>
void for_each_block_omega(SlidingOmega& counter, std::uint32_t k, std::uint64_t n_first, std::uint64_t n_last,
                          Visit&& visit) {
  if (n_first > n_last) return;
  for (std::uint64_t x = n_first; x + 1 < n_first + k; ++x) counter.add(x);
  for (std::uint64_t n = n_first; n <= n_last; ++n) {
    counter.add(n + k - 1);
    visit(n, counter.distinct());
    counter.remove(n);
  }
  for (std::uint64_t x = n_last + 1; x < n_last + k; ++x) counter.remove(x);
}

/// (n, P(n,k)) for every window of length k inside the tables.
std::vector<std::pair<std::uint64_t, std::uint64_t>> sliding_block_max_P(const WindowTables& tables, std::uint32_t k);

/// (n, omega(n,k)) for every window of length k; tables need prime lists.
std::vector<std::pair<std::uint64_t, std::uint32_t>> sliding_block_omega(const WindowTables& tables, std::uint32_t k);

}  // namespace blockarith
