// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "disco/pool_tables.hpp"
#include "disco/sector_hamiltonian.hpp"

namespace disco {

/// Unitary product state over a fixed operator pool:
///   |psi> = exp(t_M k_{s_M}) ... exp(t_1 k_{s_1}) |reference>
/// sequence holds pool operator indices; entry 0 is applied first. The same
/// operator may appear multiple times.
struct Ansatz {
    std::vector<std::size_t> sequence;
    std::vector<double> amplitudes;
    std::size_t reference = 0;

    std::size_t size() const noexcept { return sequence.size(); }
};

/// Throws std::invalid_argument on shape mismatch, out-of-range operator or
/// reference indices, or non-finite amplitudes.
void validate_ansatz(const Ansatz& ansatz, const PoolTables& tables);

/// Applies the product to the unit reference determinant. Unit norm by
/// construction.
void evaluate_state(const Ansatz& ansatz, const PoolTables& tables, std::span<double> out);
std::vector<double> evaluate_state(const Ansatz& ansatz, const PoolTables& tables);

double energy(const Ansatz& ansatz, const SectorHamiltonian& h, const PoolTables& tables);

/// Scratch buffers for repeated energy/gradient evaluation.
struct AnsatzWorkspace {
    std::vector<double> psi;
    std::vector<double> sigma;
    std::vector<double> kpsi;
};

/// Energy and full analytic gradient dE/dt_i in one reverse sweep: after the
/// forward product and one Hamiltonian application, each operator is
/// unapplied from both |psi> and H|psi| while recording
/// g_i = 2 <sigma|kappa_{s_i}|psi>. Cost: one matvec plus O(M) rotations.
double energy_and_gradient(const Ansatz& ansatz, const SectorHamiltonian& h,
                           const PoolTables& tables, std::span<double> gradient,
                           AnsatzWorkspace& ws);

struct EnergyGradient {
    double energy = 0.0;
    std::vector<double> gradient;
};

EnergyGradient energy_and_gradient(const Ansatz& ansatz, const SectorHamiltonian& h,
                                   const PoolTables& tables);

/// First-order energy response 2 <sigma|kappa_k|psi> of appending each pool
/// operator at zero amplitude, given psi and sigma = H psi.
std::vector<double> candidate_gradients(std::span<const double> psi,
                                        std::span<const double> sigma,
                                        const PoolTables& tables);

/// Text serialisation: header with sector shape and pool fingerprint, then
/// one "kind p q amplitude" record per operator with hexadecimal-float
/// amplitudes. Round-trips bit-exactly. Reading validates the header against
/// the supplied tables and throws std::runtime_error with a line number on
/// any mismatch.
void write_ansatz(std::ostream& out, const Ansatz& ansatz, const PoolTables& tables);
Ansatz read_ansatz(std::istream& in, const PoolTables& tables);

void write_ansatz_file(const std::string& path, const Ansatz& ansatz, const PoolTables& tables);
Ansatz read_ansatz_file(const std::string& path, const PoolTables& tables);

}  // namespace disco
