// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <optional>
#include <string>

#include "disco/bits.hpp"

namespace disco {

/// Occupation-number configuration over n <= 64 spatial orbitals, one bitmask
/// per spin channel. Bit k set means spatial orbital k is occupied in that
/// channel. Comparison order is lexicographic on (alpha, beta) as unsigned
/// integers, which fixes the basis ordering everywhere.
struct Determinant {
    u64 alpha = 0;
    u64 beta = 0;

    friend constexpr auto operator<=>(const Determinant&, const Determinant&) = default;
};

enum class Spin : std::uint8_t { Alpha = 0, Beta = 1 };

inline u64& channel(Determinant& d, Spin s) noexcept {
    return s == Spin::Alpha ? d.alpha : d.beta;
}
inline u64 channel(const Determinant& d, Spin s) noexcept {
    return s == Spin::Alpha ? d.alpha : d.beta;
}

struct ExcitationResult {
    Determinant det;
    int phase;  // +1 or -1
};

/// a_q^dag a_p within one spin channel. Fermionic sign convention: occupied
/// spin orbitals are ordered alpha block (ascending spatial index) before
/// beta block, so same-channel signs reduce to a bit count strictly between
/// p and q in that channel. Returns nullopt when the string annihilates the
/// determinant (p unoccupied, or q occupied with q != p).
std::optional<ExcitationResult> apply_single_excitation(const Determinant& det, int p,
                                                        int q, Spin spin);

/// a_q^dag a_qbar^dag a_pbar a_p: moves the opposite-spin pair on spatial
/// orbital p to spatial orbital q. Requires p doubly occupied and q empty in
/// both channels; otherwise annihilates. Throws std::invalid_argument for
/// p == q.
std::optional<ExcitationResult> apply_pair_excitation(const Determinant& det, int p, int q);

/// "2ab0" style string, orbital 0 leftmost: 2 = doubly occupied, a/b = single
/// channel, 0 = empty.
std::string to_string(const Determinant& det, int n_orbitals);

}  // namespace disco
