// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/determinant.hpp"

#include <stdexcept>

namespace disco {

std::optional<ExcitationResult> apply_single_excitation(const Determinant& det, int p,
                                                        int q, Spin spin) {
    const u64 occ = channel(det, spin);
    if (!test_bit(occ, p)) return std::nullopt;
    if (p == q) return ExcitationResult{det, +1};
    if (test_bit(occ, q)) return std::nullopt;

    Determinant out = det;
    channel(out, spin) = set_bit(clear_bit(occ, p), q);
    const int phase = (count_between(occ, p, q) % 2 == 0) ? +1 : -1;
    return ExcitationResult{out, phase};
}

std::optional<ExcitationResult> apply_pair_excitation(const Determinant& det, int p, int q) {
    if (p == q) throw std::invalid_argument("apply_pair_excitation: p == q");
    if (!test_bit(det.alpha, p) || !test_bit(det.beta, p)) return std::nullopt;
    if (test_bit(det.alpha, q) || test_bit(det.beta, q)) return std::nullopt;

    // Cross-channel crossings cancel pairwise for a full pair move, leaving
    // one between-count per channel.
    const int perm = count_between(det.alpha, p, q) + count_between(det.beta, p, q);
    Determinant out;
    out.alpha = set_bit(clear_bit(det.alpha, p), q);
    out.beta = set_bit(clear_bit(det.beta, p), q);
    return ExcitationResult{out, (perm % 2 == 0) ? +1 : -1};
}

std::string to_string(const Determinant& det, int n_orbitals) {
    std::string s;
    s.reserve(static_cast<std::size_t>(n_orbitals));
    for (int k = 0; k < n_orbitals; ++k) {
        const bool a = test_bit(det.alpha, k);
        const bool b = test_bit(det.beta, k);
        s += a ? (b ? '2' : 'a') : (b ? 'b' : '0');
    }
    return s;
}

}  // namespace disco
