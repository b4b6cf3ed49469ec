// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace disco {

/// Molecular integrals over spatial orbitals (restricted, real). one_body is
/// symmetric; two_body stores (pq|rs) in chemists' notation with the full
/// 8-fold permutational symmetry materialised. File indices are 1-based,
/// storage is 0-based.
struct FcidumpData {
    int n_orbitals = 0;
    int n_electrons = 0;
    int ms2 = 0;
    double core_energy = 0.0;
    std::vector<double> one_body;  // n*n
    std::vector<double> two_body;  // n^4

    double h(int p, int q) const {
        return one_body[static_cast<std::size_t>(p) * n_orbitals + q];
    }
    double eri(int p, int q, int r, int s) const {
        const std::size_t n = static_cast<std::size_t>(n_orbitals);
        return two_body[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
    }

    void allocate(int n);
    void set_h(int p, int q, double v);            // writes both (p,q) and (q,p)
    void set_eri(int p, int q, int r, int s, double v);  // writes all 8 images

    int n_alpha() const { return (n_electrons + ms2) / 2; }
    int n_beta() const { return (n_electrons - ms2) / 2; }
};

/// Parses the standard FCIDUMP layout: &FCI namelist header with NORB,
/// NELEC, MS2 (ORBSYM/ISYM accepted and ignored), then "value i j k l"
/// lines. i=j=k=l=0 is the core energy, k=l=0 a one-body integral, and the
/// rest two-body integrals in chemists' notation. Unspecified integrals are
/// zero. Malformed input reports the offending line number.
FcidumpData parse_fcidump(std::istream& in);
FcidumpData parse_fcidump_file(const std::string& path);

/// Effective integrals with the n_frozen lowest orbitals constrained doubly
/// occupied: their one- and two-body contributions move into core_energy and
/// the remaining one-body integrals pick up the frozen Coulomb-exchange mean
/// field. Orbital ordering is preserved (frozen block removed from the
/// front).
FcidumpData freeze_core(const FcidumpData& data, int n_frozen);

}  // namespace disco
