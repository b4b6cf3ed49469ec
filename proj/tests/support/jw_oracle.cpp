// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "jw_oracle.hpp"

#include <bit>
#include <cstddef>
#include <stdexcept>

namespace jwtest {

namespace {

int mode_of(int p, disco::Spin s, int n) { return s == disco::Spin::Alpha ? p : n + p; }

int parity_below(std::size_t idx, int mode) {
    const std::size_t mask = (std::size_t{1} << mode) - 1;
    return std::popcount(idx & mask) % 2 == 0 ? +1 : -1;
}

}  // namespace

std::size_t fock_dim(int n_orbitals) {
    if (n_orbitals < 1 || n_orbitals > 14)
        throw std::invalid_argument("jw oracle limited to small orbital counts");
    return std::size_t{1} << (2 * n_orbitals);
}

std::size_t fock_index(const disco::Determinant& d, int n_orbitals) {
    return static_cast<std::size_t>(d.alpha) |
           (static_cast<std::size_t>(d.beta) << n_orbitals);
}

std::vector<double> apply_annihilate(int mode, int n_orbitals, const std::vector<double>& x) {
    const std::size_t dim = fock_dim(n_orbitals);
    const std::size_t bit = std::size_t{1} << mode;
    std::vector<double> y(dim, 0.0);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        if (x[idx] == 0.0 || !(idx & bit)) continue;
        y[idx & ~bit] += parity_below(idx, mode) * x[idx];
    }
    return y;
}

std::vector<double> apply_create(int mode, int n_orbitals, const std::vector<double>& x) {
    const std::size_t dim = fock_dim(n_orbitals);
    const std::size_t bit = std::size_t{1} << mode;
    std::vector<double> y(dim, 0.0);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        if (x[idx] == 0.0 || (idx & bit)) continue;
        y[idx | bit] += parity_below(idx, mode) * x[idx];
    }
    return y;
}

namespace {

void accumulate(std::vector<double>& acc, double w, const std::vector<double>& x) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * x[i];
}

std::vector<double> column(const std::vector<double>& acc, const disco::SectorBasis& basis) {
    std::vector<double> out(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        out[i] = acc[fock_index(basis.det(i), basis.n_orbitals())];
    return out;
}

}  // namespace

std::vector<double> sector_hamiltonian_dense(const disco::FcidumpData& data,
                                             const disco::SectorBasis& basis) {
    const int n = basis.n_orbitals();
    const std::size_t dim = basis.size();
    constexpr disco::Spin kSpins[2] = {disco::Spin::Alpha, disco::Spin::Beta};
    std::vector<double> out(dim * dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> v(fock_dim(n), 0.0);
        v[fock_index(basis.det(j), n)] = 1.0;
        std::vector<double> acc(v.size(), 0.0);
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
                const double h = data.h(p, q);
                if (h == 0.0) continue;
                for (disco::Spin s : kSpins) {
                    auto t = apply_annihilate(mode_of(q, s, n), n, v);
                    t = apply_create(mode_of(p, s, n), n, t);
                    accumulate(acc, h, t);
                }
            }
        }
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s) {
                        const double w = data.eri(p, q, r, s);
                        if (w == 0.0) continue;
                        for (disco::Spin sig : kSpins)
                            for (disco::Spin tau : kSpins) {
                                auto t = apply_annihilate(mode_of(q, sig, n), n, v);
                                t = apply_annihilate(mode_of(s, tau, n), n, t);
                                t = apply_create(mode_of(r, tau, n), n, t);
                                t = apply_create(mode_of(p, sig, n), n, t);
                                accumulate(acc, 0.5 * w, t);
                            }
                    }
        const std::vector<double> col = column(acc, basis);
        for (std::size_t i = 0; i < dim; ++i) out[j * dim + i] = col[i];
    }
    return out;
}

std::vector<double> sector_generator_dense(const disco::OperatorId& op,
                                           const disco::SectorBasis& basis) {
    const int n = basis.n_orbitals();
    const std::size_t dim = basis.size();
    const int p = op.p, q = op.q;
    std::vector<double> out(dim * dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> v(fock_dim(n), 0.0);
        v[fock_index(basis.det(j), n)] = 1.0;
        std::vector<double> acc(v.size(), 0.0);
        if (op.kind == disco::OperatorKind::SpinAdaptedSingle) {
            for (disco::Spin s : {disco::Spin::Alpha, disco::Spin::Beta}) {
                auto up = apply_annihilate(mode_of(p, s, n), n, v);
                up = apply_create(mode_of(q, s, n), n, up);
                accumulate(acc, 1.0, up);
                auto down = apply_annihilate(mode_of(q, s, n), n, v);
                down = apply_create(mode_of(p, s, n), n, down);
                accumulate(acc, -1.0, down);
            }
        } else {
            auto up = apply_annihilate(p, n, v);
            up = apply_annihilate(n + p, n, up);
            up = apply_create(n + q, n, up);
            up = apply_create(q, n, up);
            accumulate(acc, 1.0, up);
            auto down = apply_annihilate(q, n, v);
            down = apply_annihilate(n + q, n, down);
            down = apply_create(n + p, n, down);
            down = apply_create(p, n, down);
            accumulate(acc, -1.0, down);
        }
        const std::vector<double> col = column(acc, basis);
        for (std::size_t i = 0; i < dim; ++i) out[j * dim + i] = col[i];
    }
    return out;
}

}  // namespace jwtest
