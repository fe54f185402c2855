#pragma once

#include <cstdint>
#include <vector>

#include "blockarith/factor.hpp"

namespace blockarith {

struct EwWitness {
  std::uint32_t shift = 0;
  std::uint64_t radical_first = 0;   // R(n1 + shift)
  std::uint64_t radical_second = 0;  // R(n2 + shift)

  friend bool operator==(const EwWitness&, const EwWitness&) = default;
};

/// n1 < n2 with R(n1 + i) = R(n2 + i) for 0 <= i < k.
struct EwPair {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::uint32_t k = 0;
  std::vector<EwWitness> witnesses;

  friend bool operator==(const EwPair&, const EwPair&) = default;
};

/// The k = 2 pair (2^h - 2, 2^h (2^h - 2)), verified. Requires 2 <= h <= 31.
EwPair ew_family(unsigned h, const FactorOptions& options = {});

/// All pairs n1 < n2 <= n2max agreeing on k consecutive radicals, sorted by
/// (n2, n1). Requires k >= 2.
std::vector<EwPair> find_ew_pairs(std::uint32_t k, std::uint64_t n2max, unsigned workers = 1);

/// Recomputes all 2k radicals by factorization, rewrites the witnesses and
/// reports whether the pair satisfies the condition. Throws ValidationError
/// for k < 2, n1 < 1 or n1 >= n2.
bool verify_ew_pair(EwPair& pair, const FactorOptions& options = {});

}  // namespace blockarith
