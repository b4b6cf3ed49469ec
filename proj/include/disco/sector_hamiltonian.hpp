// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "disco/fcidump.hpp"
#include "disco/sector_basis.hpp"

namespace disco {

/// Sparse symmetric sector Hamiltonian, row-compressed with sorted column
/// indices. Elements are computed once per unordered index pair and mirrored,
/// so H_ij == H_ji bit-exactly. The scalar core energy is carried separately
/// and added by energy expectation values only.
class SectorHamiltonian {
public:
    SectorHamiltonian(const SectorBasis& basis, double core_energy,
                      std::vector<std::uint32_t> row_ptr, std::vector<std::uint32_t> col,
                      std::vector<double> val);

    std::size_t dim() const noexcept { return basis_->size(); }
    std::size_t nnz() const noexcept { return col_.size(); }
    double core_energy() const noexcept { return core_energy_; }
    const SectorBasis& basis() const noexcept { return *basis_; }

    /// y = H x (no core energy). Callable concurrently.
    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> applied(std::span<const double> x) const;

    /// x^T H x + core_energy for a unit-norm state.
    double expectation(std::span<const double> x) const;

    std::span<const std::uint32_t> row_ptr() const noexcept { return row_ptr_; }
    std::span<const std::uint32_t> col() const noexcept { return col_; }
    std::span<const double> val() const noexcept { return val_; }

    /// Diagonal copy (Davidson preconditioning).
    std::vector<double> diagonal() const;

private:
    const SectorBasis* basis_;
    double core_energy_;
    std::vector<std::uint32_t> row_ptr_;
    std::vector<std::uint32_t> col_;
    std::vector<double> val_;
};

/// Assembles the second-quantised molecular Hamiltonian over the sector
/// basis by literal operator application of every non-zero integral term
/// (equivalent to the Slater-Condon rules). Requires basis electron counts
/// consistent with NELEC/MS2.
SectorHamiltonian build_molecular_hamiltonian(const FcidumpData& data,
                                              const SectorBasis& basis);

/// General observable expectation; for the Hamiltonian this includes the
/// core energy.
double expectation(const SectorHamiltonian& h, std::span<const double> state);

/// <S^2> via S- S+ + Sz(Sz+1) applied in the determinant basis.
double s_squared_expectation(std::span<const double> state, const SectorBasis& basis);

/// S^2 |state>, same sector (spin-free helper for commutator checks).
std::vector<double> apply_s_squared(std::span<const double> state, const SectorBasis& basis);

/// Site-averaged double occupancy (1/n) sum_p <n_{p,alpha} n_{p,beta}> for
/// states expressed directly over site determinants.
double double_occupancy(std::span<const double> state, const SectorBasis& basis);

/// Same, for states expressed over a rotated orbital basis: coeffs is the
/// column-major n x n orthogonal matrix with coeffs[s + n*p] = <site s|orbital p>.
double double_occupancy(std::span<const double> state, const SectorBasis& basis,
                        std::span<const double> coeffs);

}  // namespace disco
