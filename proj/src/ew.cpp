#include "blockarith/ew.hpp"

#include <algorithm>
#include <string>
#include <thread>
#include <unordered_map>

#include "blockarith/block_stats.hpp"
#include "blockarith/errors.hpp"
#include "blockarith/factor.hpp"
#include "blockarith/primes.hpp"
#include "blockarith/window.hpp"

namespace blockarith {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer folded into a running hash
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

std::uint64_t key_hash(const WindowTables& rad, std::uint64_t n, std::uint32_t k) {
  std::uint64_t h = k;
  for (std::uint32_t i = 0; i < k; ++i) h = mix(h, rad.radical(n + i));
  return h;
}

bool same_key(const WindowTables& rad, std::uint64_t x, std::uint64_t y, std::uint32_t k) {
  for (std::uint32_t i = 0; i < k; ++i) {
    if (rad.radical(x + i) != rad.radical(y + i)) return false;
  }
  return true;
}

std::uint64_t radical_u64(std::uint64_t x, const FactorOptions& options) {
  return to_u64(radical(factorize(big(x), options)));
}

}  // namespace

EwPair ew_family(unsigned h, const FactorOptions& options) {
  if (h < 2) throw DomainError("ew_family needs h >= 2");
  if (h > 31) throw ResourceLimitError("ew_family supports h <= 31");
  const std::uint64_t p = std::uint64_t{1} << h;
  EwPair pair{p - 2, p * (p - 2), 2, {}};
  verify_ew_pair(pair, options);
  return pair;
}

std::vector<EwPair> find_ew_pairs(std::uint32_t k, std::uint64_t n2max, unsigned workers) {
  if (k < 2) throw DomainError("find_ew_pairs needs k >= 2");
  if (n2max < 2) return {};
  require_budget(n2max * 24, "Erdos-Woods key hashes");
  WindowOptions opts;
  opts.workers = workers;
  const WindowTables rad = build_window_tables(1, n2max + k - 1, opts);

  // Pass 1: hash every key; only hashes seen twice can hold a pair.
  std::vector<std::uint64_t> hashes(n2max);
  workers = std::max(1u, workers);
  auto hash_range = [&](unsigned w) {
    for (std::uint64_t n = 1 + w; n <= n2max; n += workers) hashes[n - 1] = key_hash(rad, n, k);
  };
  if (workers == 1) {
    hash_range(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(hash_range, w);
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> colliding = hashes;
  std::sort(colliding.begin(), colliding.end());
  {
    std::vector<std::uint64_t> dup;
    for (std::size_t i = 1; i < colliding.size(); ++i) {
      if (colliding[i] == colliding[i - 1] && (dup.empty() || dup.back() != colliding[i])) dup.push_back(colliding[i]);
    }
    colliding.swap(dup);
  }

  // Pass 2: retain only indices in colliding buckets, in ascending order.
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> buckets;
  for (std::uint64_t n = 1; n <= n2max; ++n) {
    const std::uint64_t hv = hashes[n - 1];
    if (std::binary_search(colliding.begin(), colliding.end(), hv)) buckets[hv].push_back(n);
  }
  hashes = {};

  std::vector<EwPair> out;
  for (const auto& [hv, members] : buckets) {
    for (std::size_t j = 1; j < members.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (!same_key(rad, members[i], members[j], k)) continue;
        EwPair pair{members[i], members[j], k, {}};
        for (std::uint32_t s = 0; s < k; ++s) {
          pair.witnesses.push_back({s, rad.radical(members[i] + s), rad.radical(members[j] + s)});
        }
        out.push_back(std::move(pair));
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EwPair& x, const EwPair& y) { return x.n2 != y.n2 ? x.n2 < y.n2 : x.n1 < y.n1; });
  return out;
}

bool verify_ew_pair(EwPair& pair, const FactorOptions& options) {
  if (pair.k < 2) throw ValidationError("Erdos-Woods pair needs k >= 2");
  if (pair.n1 < 1 || pair.n1 >= pair.n2) throw ValidationError("Erdos-Woods pair needs 1 <= n1 < n2");
  pair.witnesses.clear();
  bool ok = true;
  for (std::uint32_t i = 0; i < pair.k; ++i) {
    const EwWitness w{i, radical_u64(pair.n1 + i, options), radical_u64(pair.n2 + i, options)};
    ok = ok && w.radical_first == w.radical_second;
    pair.witnesses.push_back(w);
  }
  return ok;
}

}  // namespace blockarith
