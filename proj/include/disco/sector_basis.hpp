// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "disco/determinant.hpp"

namespace disco {

/// Complete determinant basis of a fixed (n_alpha, n_beta) particle sector,
/// ordered lexicographically on (alpha, beta) occupation words. Immutable
/// after construction; reverse lookup is a combinadic rank (no hashing), so
/// the ordering is reproducible bit-for-bit across runs.
class SectorBasis {
public:
    static SectorBasis build(int n_orbitals, int n_alpha, int n_beta);

    std::size_t size() const noexcept { return dets_.size(); }
    const Determinant& det(std::size_t i) const { return dets_[i]; }
    const std::vector<Determinant>& determinants() const noexcept { return dets_; }

    /// Rank of a determinant in this basis. The determinant must belong to
    /// the sector (checked in debug builds only).
    std::size_t index_of(const Determinant& d) const noexcept;

    int n_orbitals() const noexcept { return n_orbitals_; }
    int n_alpha() const noexcept { return n_alpha_; }
    int n_beta() const noexcept { return n_beta_; }
    int sz2() const noexcept { return n_alpha_ - n_beta_; }  // 2 Sz

    /// Closed-shell-style reference: alpha fills the n_alpha lowest orbitals,
    /// beta the n_beta lowest. For n_alpha == n_beta this doubly occupies
    /// the lowest n_alpha orbitals.
    std::size_t reference_index() const noexcept;

private:
    int n_orbitals_ = 0;
    int n_alpha_ = 0;
    int n_beta_ = 0;
    std::size_t n_beta_strings_ = 0;
    std::vector<Determinant> dets_;
    std::vector<u64> binom_;  // (n+1) x (n+1), row-major

    u64 binom(int n, int k) const noexcept {
        return (k < 0 || k > n) ? 0 : binom_[static_cast<std::size_t>(n) * (n_orbitals_ + 1) + k];
    }
    std::size_t rank_string(u64 occ) const noexcept;
};

}  // namespace disco
