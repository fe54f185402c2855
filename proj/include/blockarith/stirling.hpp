#pragma once

#include "blockarith/bigint.hpp"

namespace blockarith {

inline constexpr unsigned kStirlingMax = 200;

/// Stirling number of the second kind S(n, k), evaluated exactly from the
/// alternating sum (1/k!) * sum_{i=0..k} (-1)^(k-i) C(k,i) i^n.
/// Both arguments must be <= kStirlingMax (DomainError otherwise).
BigInt stirling2(unsigned n, unsigned k);

}  // namespace blockarith
