// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/pool.hpp"

#include <stdexcept>

namespace disco {

std::string to_string(const OperatorId& op) {
    const char* kind = op.kind == OperatorKind::SpinAdaptedSingle ? "single" : "pair";
    return std::string(kind) + " " + std::to_string(op.p) + " " + std::to_string(op.q);
}

OperatorPool OperatorPool::build(int n_orbitals) {
    if (n_orbitals < 2) throw std::invalid_argument("OperatorPool: need at least 2 orbitals");
    OperatorPool pool;
    pool.n_orbitals_ = n_orbitals;
    pool.ops_.reserve(static_cast<std::size_t>(n_orbitals) * (n_orbitals - 1));
    for (int kind = 0; kind < 2; ++kind)
        for (int p = 0; p < n_orbitals; ++p)
            for (int q = p + 1; q < n_orbitals; ++q)
                pool.ops_.push_back(OperatorId{static_cast<OperatorKind>(kind),
                                               static_cast<std::uint8_t>(p),
                                               static_cast<std::uint8_t>(q)});
    return pool;
}

OperatorPool OperatorPool::from_operators(int n_orbitals, std::vector<OperatorId> ops) {
    OperatorPool pool;
    pool.n_orbitals_ = n_orbitals;
    pool.ops_ = std::move(ops);
    for (const OperatorId& op : pool.ops_)
        if (op.p >= op.q || op.q >= n_orbitals)
            throw std::invalid_argument("OperatorPool: operator indices out of range");
    return pool;
}

std::size_t OperatorPool::index_of(const OperatorId& op) const {
    // Built pools are a fixed enumeration; use the closed form and verify.
    const int n = n_orbitals_;
    const std::size_t half = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (ops_.size() == 2 * half) {
        const std::size_t p = op.p, q = op.q;
        const std::size_t pair_rank = p * (2 * n - p - 1) / 2 + (q - p - 1);
        const std::size_t idx =
            (op.kind == OperatorKind::SpinAdaptedSingle ? 0 : half) + pair_rank;
        if (idx < ops_.size() && ops_[idx] == op) return idx;
    }
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i] == op) return i;
    throw std::invalid_argument("OperatorPool: operator not in pool");
}

std::uint64_t OperatorPool::fingerprint() const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t byte) {
        h ^= byte;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(n_orbitals_));
    for (const OperatorId& op : ops_) {
        mix(static_cast<std::uint64_t>(op.kind));
        mix(op.p);
        mix(op.q);
    }
    return h;
}

}  // namespace disco
