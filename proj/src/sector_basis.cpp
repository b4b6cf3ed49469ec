// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/sector_basis.hpp"

#include <cassert>
#include <stdexcept>

namespace disco {

namespace {

std::vector<u64> enumerate_strings(int n, int k) {
    // All k-subsets of n orbitals in increasing numeric order.
    std::vector<u64> out;
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    u64 m = mask_below(k);
    const u64 limit = mask_below(n);
    while (m <= limit) {
        out.push_back(m);
        if (m == (limit & ~mask_below(n - k))) break;  // highest pattern
        m = next_bit_permutation(m);
    }
    return out;
}

}  // namespace

SectorBasis SectorBasis::build(int n_orbitals, int n_alpha, int n_beta) {
    if (n_orbitals < 1 || n_orbitals > 64)
        throw std::invalid_argument("SectorBasis: n_orbitals must be in [1, 64]");
    if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orbitals || n_beta > n_orbitals)
        throw std::invalid_argument("SectorBasis: electron count exceeds orbital count");

    SectorBasis b;
    b.n_orbitals_ = n_orbitals;
    b.n_alpha_ = n_alpha;
    b.n_beta_ = n_beta;

    b.binom_.assign(static_cast<std::size_t>(n_orbitals + 1) * (n_orbitals + 1), 0);
    for (int n = 0; n <= n_orbitals; ++n) {
        b.binom_[static_cast<std::size_t>(n) * (n_orbitals + 1)] = 1;
        for (int k = 1; k <= n; ++k)
            b.binom_[static_cast<std::size_t>(n) * (n_orbitals + 1) + k] =
                b.binom(n - 1, k - 1) + b.binom(n - 1, k);
    }

    const auto alphas = enumerate_strings(n_orbitals, n_alpha);
    const auto betas = enumerate_strings(n_orbitals, n_beta);
    b.n_beta_strings_ = betas.size();
    b.dets_.reserve(alphas.size() * betas.size());
    for (u64 a : alphas)
        for (u64 bb : betas) b.dets_.push_back(Determinant{a, bb});
    return b;
}

std::size_t SectorBasis::rank_string(u64 occ) const noexcept {
    // Combinadic rank: position of occ among same-popcount words in
    // increasing numeric order.
    std::size_t r = 0;
    int i = 1;
    while (occ) {
        const int p = std::countr_zero(occ);
        r += binom(p, i);
        ++i;
        occ &= occ - 1;
    }
    return r;
}

std::size_t SectorBasis::index_of(const Determinant& d) const noexcept {
    assert(popcount(d.alpha) == n_alpha_ && popcount(d.beta) == n_beta_);
    return rank_string(d.alpha) * n_beta_strings_ + rank_string(d.beta);
}

std::size_t SectorBasis::reference_index() const noexcept {
    return index_of(Determinant{mask_below(n_alpha_), mask_below(n_beta_)});
}

}  // namespace disco
