// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/pool_tables.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "disco/kernels.hpp"

namespace disco {

namespace {

void push_pair(PairSweep& sweep, std::size_t from, std::size_t to, int phase) {
    // kappa maps from -> phase * to; orient so the stored pair carries +1.
    if (phase > 0) {
        sweep.a.push_back(static_cast<std::int32_t>(from));
        sweep.b.push_back(static_cast<std::int32_t>(to));
    } else {
        sweep.a.push_back(static_cast<std::int32_t>(to));
        sweep.b.push_back(static_cast<std::int32_t>(from));
    }
}

PairSweep build_single_sweep(const SectorBasis& basis, int p, int q, Spin spin) {
    PairSweep sweep;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Determinant& d = basis.det(i);
        const u64 occ = channel(d, spin);
        if (!test_bit(occ, p) || test_bit(occ, q)) continue;
        const auto res = apply_single_excitation(d, p, q, spin);
        push_pair(sweep, i, basis.index_of(res->det), res->phase);
    }
    return sweep;
}

PairSweep build_pair_sweep(const SectorBasis& basis, int p, int q) {
    PairSweep sweep;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto res = apply_pair_excitation(basis.det(i), p, q);
        if (!res) continue;
        push_pair(sweep, i, basis.index_of(res->det), res->phase);
    }
    return sweep;
}

}  // namespace

PoolTables::PoolTables(const OperatorPool& pool, const SectorBasis& basis)
    : pool_(&pool), basis_(&basis), dim_(basis.size()) {
    if (pool.n_orbitals() > basis.n_orbitals())
        throw std::invalid_argument("PoolTables: pool orbital range exceeds basis");
    per_op_.reserve(pool.size());
    for (const OperatorId& op : pool.operators()) {
        std::vector<PairSweep> sweeps;
        if (op.kind == OperatorKind::SpinAdaptedSingle) {
            sweeps.push_back(build_single_sweep(basis, op.p, op.q, Spin::Alpha));
            sweeps.push_back(build_single_sweep(basis, op.p, op.q, Spin::Beta));
        } else {
            sweeps.push_back(build_pair_sweep(basis, op.p, op.q));
        }
        per_op_.push_back(std::move(sweeps));
    }
}

void PoolTables::check_state(std::span<const double> x) const {
    if (x.size() != dim_) throw std::invalid_argument("PoolTables: state dimension mismatch");
}

void PoolTables::apply_exponential(std::size_t op_index, double t, std::span<double> x) const {
    check_state(x);
    if (!std::isfinite(t)) throw std::invalid_argument("PoolTables: non-finite amplitude");
    if (t == 0.0) return;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const auto& rotate = kernels::active().rotate_pairs;
    for (const PairSweep& sweep : per_op_[op_index])
        rotate(sweep.a.data(), sweep.b.data(), sweep.size(), c, s, x.data());
}

void PoolTables::apply_generator(std::size_t op_index, std::span<const double> x,
                                 std::span<double> y) const {
    check_state(x);
    check_state(y);
    std::memset(y.data(), 0, y.size() * sizeof(double));
    const auto& accumulate = kernels::active().pair_accumulate;
    for (const PairSweep& sweep : per_op_[op_index])
        accumulate(sweep.a.data(), sweep.b.data(), sweep.size(), 1.0, x.data(), y.data());
}

std::vector<double> PoolTables::exponential_applied(std::size_t op_index, double t,
                                                    std::span<const double> x) const {
    std::vector<double> out(x.begin(), x.end());
    apply_exponential(op_index, t, out);
    return out;
}

std::vector<double> PoolTables::generator_applied(std::size_t op_index,
                                                  std::span<const double> x) const {
    std::vector<double> out(x.size());
    apply_generator(op_index, x, out);
    return out;
}

}  // namespace disco
