// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "disco/ansatz.hpp"
#include "disco/pool.hpp"

namespace disco {

// Gate-cost constants for the two pool operator families. Paired-double
// exponentials cost a fixed number of CNOTs; each spin channel of a one-body
// rotation pays a base cost plus a per-qubit charge for the parity string
// spanning the qubits strictly between the two orbitals.
struct CostModel {
    std::size_t paired_double_cnots = 13;
    std::size_t single_cnot_base = 2;
    std::size_t single_cnot_per_z = 2;
};

// CNOT cost of one exponential under the model. Qubits are ordered as the
// determinants are: all alpha orbitals first, then all beta orbitals, so both
// spin channels of a single span the same number of intervening qubits.
std::size_t cnot_count(const OperatorId& op, const CostModel& model);

// Total over the sequence; additive, so reordering never changes the result.
std::size_t cnot_count(const Ansatz& ansatz, const OperatorPool& pool,
                       const CostModel& model = {});

}  // namespace disco
