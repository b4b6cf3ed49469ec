// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>

namespace disco {

using u64 = std::uint64_t;

inline int popcount(u64 x) noexcept { return std::popcount(x); }

/// Mask with bits [0, p) set. Safe for p == 64.
inline constexpr u64 mask_below(int p) noexcept {
    return (p >= 64) ? ~u64{0} : ((u64{1} << p) - 1);
}

/// Bits strictly between positions a and b (order-free, endpoints excluded).
inline constexpr u64 mask_between(int a, int b) noexcept {
    const int lo = a < b ? a : b;
    const int hi = a < b ? b : a;
    return mask_below(hi) & ~mask_below(lo + 1);
}

/// Number of set bits of occ strictly between orbital positions a and b.
inline int count_between(u64 occ, int a, int b) noexcept {
    return popcount(occ & mask_between(a, b));
}

inline bool test_bit(u64 occ, int p) noexcept { return (occ >> p) & u64{1}; }
inline constexpr u64 set_bit(u64 occ, int p) noexcept { return occ | (u64{1} << p); }
inline constexpr u64 clear_bit(u64 occ, int p) noexcept { return occ & ~(u64{1} << p); }

/// Next bit pattern with the same popcount in increasing numeric order
/// (Gosper's hack). Undefined for x == 0.
inline u64 next_bit_permutation(u64 x) noexcept {
    const u64 c = x & (~x + 1);  // lowest set bit
    const u64 r = x + c;
    return r | (((x ^ r) >> 2) / c);
}

}  // namespace disco
