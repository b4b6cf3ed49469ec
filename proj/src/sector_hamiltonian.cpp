// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/sector_hamiltonian.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "disco/kernels.hpp"
#include "disco/second_quant.hpp"

namespace disco {

SectorHamiltonian::SectorHamiltonian(const SectorBasis& basis, double core_energy,
                                     std::vector<std::uint32_t> row_ptr,
                                     std::vector<std::uint32_t> col, std::vector<double> val)
    : basis_(&basis),
      core_energy_(core_energy),
      row_ptr_(std::move(row_ptr)),
      col_(std::move(col)),
      val_(std::move(val)) {
    if (row_ptr_.size() != basis.size() + 1)
        throw std::invalid_argument("SectorHamiltonian: row pointer size mismatch");
}

void SectorHamiltonian::apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != dim() || y.size() != dim())
        throw std::invalid_argument("SectorHamiltonian: state dimension mismatch");
    kernels::active().csr_spmv(row_ptr_.data(), col_.data(), val_.data(), dim(), x.data(),
                               y.data());
}

std::vector<double> SectorHamiltonian::applied(std::span<const double> x) const {
    std::vector<double> y(dim());
    apply(x, y);
    return y;
}

double SectorHamiltonian::expectation(std::span<const double> x) const {
    const std::vector<double> y = applied(x);
    return kernels::active().dot(x.data(), y.data(), dim()) + core_energy_;
}

std::vector<double> SectorHamiltonian::diagonal() const {
    std::vector<double> d(dim(), 0.0);
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::uint32_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            if (col_[k] == r) d[r] = val_[k];
    return d;
}

namespace {

// Dense column accumulator with a touched-index list; reused across columns.
class ColumnAccumulator {
public:
    explicit ColumnAccumulator(std::size_t dim) : value_(dim, 0.0), seen_(dim, 0) {}

    void add(std::size_t i, double v) {
        if (!seen_[i]) {
            seen_[i] = 1;
            touched_.push_back(static_cast<std::uint32_t>(i));
        }
        value_[i] += v;
    }

    template <typename Fn>
    void drain_sorted(Fn&& fn) {
        std::sort(touched_.begin(), touched_.end());
        for (std::uint32_t i : touched_) {
            if (value_[i] != 0.0) fn(i, value_[i]);
            value_[i] = 0.0;
            seen_[i] = 0;
        }
        touched_.clear();
    }

private:
    std::vector<double> value_;
    std::vector<char> seen_;
    std::vector<std::uint32_t> touched_;
};

std::vector<int> occupied_list(u64 occ) {
    std::vector<int> out;
    while (occ) {
        out.push_back(std::countr_zero(occ));
        occ &= occ - 1;
    }
    return out;
}

struct Triplet {
    std::uint32_t row, col;
    double v;
};

SectorHamiltonian assemble_symmetric(const SectorBasis& basis, double core_energy,
                                     std::vector<Triplet>& lower) {
    // lower holds each unordered pair once (row >= col); mirror and build CSR.
    const std::size_t dim = basis.size();
    std::vector<std::uint32_t> counts(dim + 1, 0);
    for (const Triplet& t : lower) {
        ++counts[t.row + 1];
        if (t.row != t.col) ++counts[t.col + 1];
    }
    for (std::size_t r = 0; r < dim; ++r) counts[r + 1] += counts[r];
    std::vector<std::uint32_t> row_ptr = counts;
    std::vector<std::uint32_t> col(row_ptr[dim]);
    std::vector<double> val(row_ptr[dim]);
    std::vector<std::uint32_t> cursor(row_ptr.begin(), row_ptr.end() - 1);
    for (const Triplet& t : lower) {
        col[cursor[t.row]] = t.col;
        val[cursor[t.row]] = t.v;
        ++cursor[t.row];
        if (t.row != t.col) {
            col[cursor[t.col]] = t.row;
            val[cursor[t.col]] = t.v;
            ++cursor[t.col];
        }
    }
    // Sort each row by column index (values travel along).
    std::vector<std::pair<std::uint32_t, double>> tmp;
    for (std::size_t r = 0; r < dim; ++r) {
        const std::uint32_t lo = row_ptr[r], hi = row_ptr[r + 1];
        tmp.assign(hi - lo, {});
        for (std::uint32_t k = lo; k < hi; ++k) tmp[k - lo] = {col[k], val[k]};
        std::sort(tmp.begin(), tmp.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::uint32_t k = lo; k < hi; ++k) {
            col[k] = tmp[k - lo].first;
            val[k] = tmp[k - lo].second;
        }
    }
    return SectorHamiltonian(basis, core_energy, std::move(row_ptr), std::move(col),
                             std::move(val));
}

}  // namespace

SectorHamiltonian build_molecular_hamiltonian(const FcidumpData& data,
                                              const SectorBasis& basis) {
    if (data.n_orbitals != basis.n_orbitals())
        throw std::invalid_argument("build_molecular_hamiltonian: orbital count mismatch");
    if (data.n_electrons != basis.n_alpha() + basis.n_beta())
        throw std::invalid_argument("build_molecular_hamiltonian: electron count mismatch");

    const int n = data.n_orbitals;
    const std::size_t dim = basis.size();
    ColumnAccumulator acc(dim);
    std::vector<Triplet> lower;
    constexpr Spin kSpins[2] = {Spin::Alpha, Spin::Beta};

    for (std::size_t j = 0; j < dim; ++j) {
        const Determinant d = basis.det(j);
        const SignedDet root{d, +1};

        // One-body: sum_{pq,sigma} h_pq a^dag_{p sigma} a_{q sigma}
        for (Spin sigma : kSpins) {
            for (int q : occupied_list(channel(d, sigma))) {
                const auto t1 = annihilate(root, q, sigma);
                for (int p = 0; p < n; ++p) {
                    const double v = data.h(p, q);
                    if (v == 0.0) continue;
                    const auto t2 = create(*t1, p, sigma);
                    if (!t2) continue;
                    acc.add(basis.index_of(t2->det), v * t2->sign);
                }
            }
        }

        // Two-body: (1/2) sum_{pqrs,sigma tau} (pq|rs)
        //           a^dag_{p sigma} a^dag_{r tau} a_{s tau} a_{q sigma}
        for (Spin sigma : kSpins) {
            for (Spin tau : kSpins) {
                for (int q : occupied_list(channel(d, sigma))) {
                    const auto t1 = annihilate(root, q, sigma);
                    for (int s : occupied_list(channel(d, tau))) {
                        const auto t2 = annihilate(*t1, s, tau);
                        if (!t2) continue;
                        for (int r = 0; r < n; ++r) {
                            const auto t3 = create(*t2, r, tau);
                            if (!t3) continue;
                            for (int p = 0; p < n; ++p) {
                                const double v = data.eri(p, q, r, s);
                                if (v == 0.0) continue;
                                const auto t4 = create(*t3, p, sigma);
                                if (!t4) continue;
                                acc.add(basis.index_of(t4->det), 0.5 * v * t4->sign);
                            }
                        }
                    }
                }
            }
        }

        acc.drain_sorted([&](std::uint32_t i, double v) {
            if (i >= j) lower.push_back({i, static_cast<std::uint32_t>(j), v});
        });
    }
    return assemble_symmetric(basis, data.core_energy, lower);
}

double expectation(const SectorHamiltonian& h, std::span<const double> state) {
    return h.expectation(state);
}

namespace {

// S+ |state>: maps the (na, nb) sector into (na+1, nb-1).
std::vector<double> s_plus_apply(std::span<const double> state, const SectorBasis& basis,
                                 const SectorBasis& raised) {
    std::vector<double> out(raised.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double x = state[i];
        if (x == 0.0) continue;
        const SignedDet root{basis.det(i), +1};
        const u64 candidates = root.det.beta & ~root.det.alpha;
        for (u64 m = candidates; m; m &= m - 1) {
            const int p = std::countr_zero(m);
            const auto t1 = annihilate(root, p, Spin::Beta);
            const auto t2 = create(*t1, p, Spin::Alpha);
            out[raised.index_of(t2->det)] += t2->sign * x;
        }
    }
    return out;
}

std::vector<double> s_minus_apply(std::span<const double> state, const SectorBasis& raised,
                                  const SectorBasis& basis) {
    std::vector<double> out(basis.size(), 0.0);
    for (std::size_t i = 0; i < raised.size(); ++i) {
        const double x = state[i];
        if (x == 0.0) continue;
        const SignedDet root{raised.det(i), +1};
        const u64 candidates = root.det.alpha & ~root.det.beta;
        for (u64 m = candidates; m; m &= m - 1) {
            const int p = std::countr_zero(m);
            const auto t1 = annihilate(root, p, Spin::Alpha);
            const auto t2 = create(*t1, p, Spin::Beta);
            out[basis.index_of(t2->det)] += t2->sign * x;
        }
    }
    return out;
}

}  // namespace

double s_squared_expectation(std::span<const double> state, const SectorBasis& basis) {
    if (state.size() != basis.size())
        throw std::invalid_argument("s_squared_expectation: dimension mismatch");
    const double sz = 0.5 * basis.sz2();
    double lowering = 0.0;
    if (basis.n_beta() > 0 && basis.n_alpha() < basis.n_orbitals()) {
        const SectorBasis raised =
            SectorBasis::build(basis.n_orbitals(), basis.n_alpha() + 1, basis.n_beta() - 1);
        const std::vector<double> up = s_plus_apply(state, basis, raised);
        lowering = kernels::active().dot(up.data(), up.data(), up.size());
    }
    return lowering + sz * (sz + 1.0);
}

std::vector<double> apply_s_squared(std::span<const double> state, const SectorBasis& basis) {
    if (state.size() != basis.size())
        throw std::invalid_argument("apply_s_squared: dimension mismatch");
    const double sz = 0.5 * basis.sz2();
    std::vector<double> out(state.size(), 0.0);
    if (basis.n_beta() > 0 && basis.n_alpha() < basis.n_orbitals()) {
        const SectorBasis raised =
            SectorBasis::build(basis.n_orbitals(), basis.n_alpha() + 1, basis.n_beta() - 1);
        const std::vector<double> up = s_plus_apply(state, basis, raised);
        out = s_minus_apply(up, raised, basis);
    }
    const double w = sz * (sz + 1.0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * state[i];
    return out;
}

double double_occupancy(std::span<const double> state, const SectorBasis& basis) {
    if (state.size() != basis.size())
        throw std::invalid_argument("double_occupancy: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Determinant& d = basis.det(i);
        acc += state[i] * state[i] * popcount(d.alpha & d.beta);
    }
    return acc / basis.n_orbitals();
}

namespace {

// y = N_{s,sigma} x with N = sum_{pq} c_p c_q a^dag_{p sigma} a_{q sigma},
// c the site-s row of the orbital coefficient matrix.
void apply_site_number(std::span<const double> c, Spin sigma, std::span<const double> x,
                       std::span<double> y, const SectorBasis& basis) {
    std::fill(y.begin(), y.end(), 0.0);
    const int n = basis.n_orbitals();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double xv = x[i];
        if (xv == 0.0) continue;
        const Determinant& d = basis.det(i);
        for (int q : occupied_list(channel(d, sigma))) {
            y[i] += c[q] * c[q] * xv;
            for (int p = 0; p < n; ++p) {
                if (p == q || test_bit(channel(d, sigma), p)) continue;
                // a^dag_p a_q moves q -> p
                const auto res = apply_single_excitation(d, q, p, sigma);
                y[basis.index_of(res->det)] += c[p] * c[q] * res->phase * xv;
            }
        }
    }
}

}  // namespace

double double_occupancy(std::span<const double> state, const SectorBasis& basis,
                        std::span<const double> coeffs) {
    if (state.size() != basis.size())
        throw std::invalid_argument("double_occupancy: dimension mismatch");
    const int n = basis.n_orbitals();
    if (coeffs.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("double_occupancy: coefficient matrix size mismatch");
    std::vector<double> site_row(n);
    std::vector<double> ua(state.size());
    std::vector<double> ub(state.size());
    double acc = 0.0;
    for (int s = 0; s < n; ++s) {
        for (int p = 0; p < n; ++p) site_row[p] = coeffs[s + static_cast<std::size_t>(n) * p];
        apply_site_number(site_row, Spin::Alpha, state, ua, basis);
        apply_site_number(site_row, Spin::Beta, state, ub, basis);
        // N_alpha and N_beta commute and are Hermitian: <x|Na Nb|x> = <Na x|Nb x>
        acc += kernels::active().dot(ua.data(), ub.data(), ua.size());
    }
    return acc / n;
}

}  // namespace disco
