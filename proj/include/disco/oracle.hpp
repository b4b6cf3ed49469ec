// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "disco/sector_hamiltonian.hpp"

namespace disco {

/// Certified ground-state solve. eigenvalues holds the full ascending
/// spectrum on the dense path and {E0, second-eigenvalue probe} on the
/// iterative path; every energy includes the scalar core term.
struct SpectrumResult {
    std::vector<double> eigenvalues;
    std::vector<double> ground_vector;  // unit norm
    std::string method;                 // "dense" or "iterative"
    double residual_norm = 0.0;         // ||H v - E0 v||
    bool degenerate_ground = false;     // gap to next eigenvalue below gap threshold
    int matvec_count = 0;

    double ground_energy() const { return eigenvalues.front(); }
};

struct OracleOptions {
    std::size_t dense_cap = 6000;        // dense eigensolve at or below this dimension
    std::size_t iterative_cap = 2000000;  // hard dimension limit
    double residual_tolerance = 1e-9;    // scaled by max(1, |E0|)
    int max_iterations = 600;            // iterative matvec budget
    int max_subspace = 32;
    double degeneracy_gap = 1e-8;
};

/// Lowest eigenpair of the sector Hamiltonian: dense symmetric eigensolve up
/// to dense_cap, otherwise a Davidson iteration with diagonal
/// preconditioning. The residual bound ||H v - E v|| <= tol * max(1, |E|) is
/// verified before returning; non-convergence throws with the residual
/// attained.
SpectrumResult fci_ground_state(const SectorHamiltonian& h, const OracleOptions& opts = {});

using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

/// Column-by-column dense matrix of a linear operator given via its apply
/// callback. Column-major storage, column j at [j*dim, (j+1)*dim).
std::vector<double> dense_operator_matrix(std::size_t dim, const ApplyFn& apply,
                                          std::size_t cap = 8192);
std::vector<double> dense_operator_matrix(const SectorHamiltonian& h, std::size_t cap = 8192);

/// y = exp(t A) x for a dense column-major matrix, by scaling and squaring
/// with a Taylor series truncated at machine-level term size.
std::vector<double> dense_expm_apply(std::span<const double> matrix, double t,
                                     std::span<const double> x);

}  // namespace disco
