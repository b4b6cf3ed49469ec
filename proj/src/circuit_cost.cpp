// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/circuit_cost.hpp"

#include <stdexcept>

namespace disco {

std::size_t cnot_count(const OperatorId& op, const CostModel& model) {
    if (op.kind == OperatorKind::PairedDouble) return model.paired_double_cnots;
    const std::size_t z = std::size_t(op.q) - std::size_t(op.p) - 1;
    return 2 * (model.single_cnot_base + model.single_cnot_per_z * z);
}

std::size_t cnot_count(const Ansatz& ansatz, const OperatorPool& pool, const CostModel& model) {
    std::size_t total = 0;
    for (std::size_t index : ansatz.sequence) {
        if (index >= pool.size())
            throw std::invalid_argument("cnot_count: operator index outside the pool");
        total += cnot_count(pool.op(index), model);
    }
    return total;
}

}  // namespace disco
