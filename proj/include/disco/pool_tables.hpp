// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "disco/pool.hpp"
#include "disco/sector_basis.hpp"

namespace disco {

/// Disjoint coupled-determinant pairs of one generator sweep, canonicalised
/// so that kappa e_a = +e_b and kappa e_b = -e_a for every entry (the
/// fermionic sign is folded into the (a, b) orientation).
struct PairSweep {
    std::vector<std::int32_t> a;
    std::vector<std::int32_t> b;

    std::size_t size() const noexcept { return a.size(); }
};

/// Precomputed pair tables for every pool operator over one sector basis.
/// Exponentials are exact closed-form Givens rotations over these tables;
/// the optimiser applies them millions of times, so tables are built once
/// and shared read-only.
///
/// A SpinAdaptedSingle holds two sweeps (alpha channel then beta channel;
/// the channel exponentials commute and are applied in that fixed order).
/// A PairedDouble holds one sweep.
class PoolTables {
public:
    PoolTables(const OperatorPool& pool, const SectorBasis& basis);

    /// x <- exp(t * kappa_op) x, in place. Norm-preserving by construction.
    void apply_exponential(std::size_t op_index, double t, std::span<double> x) const;

    /// y <- kappa_op x (overwrites y). The generator is real antisymmetric.
    void apply_generator(std::size_t op_index, std::span<const double> x,
                         std::span<double> y) const;

    /// Pure convenience wrappers.
    std::vector<double> exponential_applied(std::size_t op_index, double t,
                                            std::span<const double> x) const;
    std::vector<double> generator_applied(std::size_t op_index,
                                          std::span<const double> x) const;

    const OperatorPool& pool() const noexcept { return *pool_; }
    const SectorBasis& basis() const noexcept { return *basis_; }
    std::size_t dim() const noexcept { return dim_; }

    const std::vector<PairSweep>& sweeps(std::size_t op_index) const {
        return per_op_[op_index];
    }

private:
    const OperatorPool* pool_;
    const SectorBasis* basis_;
    std::size_t dim_;
    std::vector<std::vector<PairSweep>> per_op_;

    void check_state(std::span<const double> x) const;
};

}  // namespace disco
