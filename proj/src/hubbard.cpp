// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/hubbard.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace disco {

namespace {

void validate(const HubbardSpec& spec) {
    if (spec.lx < 1 || spec.ly < 1)
        throw std::invalid_argument("HubbardSpec: lattice extents must be positive");
    if (spec.n_sites() > 64) throw std::invalid_argument("HubbardSpec: more than 64 sites");
    if (!(spec.t_hop == spec.t_hop) || !(spec.u_rep == spec.u_rep))
        throw std::invalid_argument("HubbardSpec: parameters must be finite");
}

}  // namespace

std::vector<std::pair<int, int>> lattice_edges(const HubbardSpec& spec) {
    validate(spec);
    const auto site = [&](int x, int y) { return x + spec.lx * y; };
    std::set<std::pair<int, int>> bonds;
    const auto add = [&](int a, int b) {
        if (a == b) return;
        bonds.insert({std::min(a, b), std::max(a, b)});
    };
    for (int y = 0; y < spec.ly; ++y) {
        for (int x = 0; x < spec.lx; ++x) {
            if (x + 1 < spec.lx) add(site(x, y), site(x + 1, y));
            if (y + 1 < spec.ly) add(site(x, y), site(x, y + 1));
            if (spec.bc_x == Boundary::Periodic && x == spec.lx - 1)
                add(site(x, y), site(0, y));
            if (spec.bc_y == Boundary::Periodic && y == spec.ly - 1)
                add(site(x, y), site(x, 0));
        }
    }
    return {bonds.begin(), bonds.end()};
}

std::vector<double> site_hopping_matrix(const HubbardSpec& spec) {
    const int n = spec.n_sites();
    std::vector<double> t(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& [a, b] : lattice_edges(spec)) {
        t[a + static_cast<std::size_t>(n) * b] = -spec.t_hop;
        t[b + static_cast<std::size_t>(n) * a] = -spec.t_hop;
    }
    return t;
}

namespace {

HubbardSystem make_site_system(const HubbardSpec& spec, int n_electrons, int ms2) {
    const int n = spec.n_sites();
    HubbardSystem sys;
    sys.spec = spec;
    sys.representation = HubbardRepresentation::Site;
    sys.integrals.n_orbitals = n;
    sys.integrals.n_electrons = n_electrons;
    sys.integrals.ms2 = ms2;
    sys.integrals.allocate(n);
    const std::vector<double> t = site_hopping_matrix(spec);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            sys.integrals.set_h(p, q, t[p + static_cast<std::size_t>(n) * q]);
    for (int s = 0; s < n; ++s) sys.integrals.set_eri(s, s, s, s, spec.u_rep);
    sys.orbital_to_site.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int s = 0; s < n; ++s) sys.orbital_to_site[s + static_cast<std::size_t>(n) * s] = 1.0;
    return sys;
}

// Fixes each eigenvector's overall sign so the largest-magnitude component
// (lowest index on ties) is positive, making the rotation reproducible.
void fix_eigenvector_signs(Eigen::MatrixXd& c) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < c.rows(); ++i)
            if (std::abs(c(i, j)) > std::abs(c(best, j))) best = i;
        if (c(best, j) < 0.0) c.col(j) = -c.col(j);
    }
}

HubbardSystem make_orbital_system(const HubbardSpec& spec, int n_electrons, int ms2) {
    const int n = spec.n_sites();
    const std::vector<double> t = site_hopping_matrix(spec);
    Eigen::MatrixXd tm = Eigen::Map<const Eigen::MatrixXd>(t.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tm);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("make_hubbard_system: hopping diagonalisation failed");
    Eigen::MatrixXd c = solver.eigenvectors();  // c(s, p) = <site s|orbital p>
    fix_eigenvector_signs(c);

    HubbardSystem sys;
    sys.spec = spec;
    sys.representation = HubbardRepresentation::Orbital;
    sys.integrals.n_orbitals = n;
    sys.integrals.n_electrons = n_electrons;
    sys.integrals.ms2 = ms2;
    sys.integrals.allocate(n);
    for (int p = 0; p < n; ++p) sys.integrals.set_h(p, p, solver.eigenvalues()(p));

    // (pq|rs) = U sum_s c(s,p) c(s,q) c(s,r) c(s,s'); rank-one per site.
    std::vector<double>& eri = sys.integrals.two_body;
    std::vector<double> m(static_cast<std::size_t>(n) * n);
    for (int s = 0; s < n; ++s) {
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                m[static_cast<std::size_t>(p) * n + q] = c(s, p) * c(s, q);
        std::size_t idx = 0;
        for (std::size_t pq = 0; pq < m.size(); ++pq)
            for (std::size_t rs = 0; rs < m.size(); ++rs) eri[idx++] += spec.u_rep * m[pq] * m[rs];
    }

    sys.orbital_to_site.resize(static_cast<std::size_t>(n) * n);
    Eigen::Map<Eigen::MatrixXd>(sys.orbital_to_site.data(), n, n) = c;
    return sys;
}

}  // namespace

HubbardSystem make_hubbard_system(const HubbardSpec& spec, int n_electrons, int ms2,
                                  HubbardRepresentation representation) {
    validate(spec);
    const int n = spec.n_sites();
    if (n_electrons < 0 || n_electrons > 2 * n)
        throw std::invalid_argument("make_hubbard_system: electron count out of range");
    if ((n_electrons + ms2) % 2 != 0 || std::abs(ms2) > n_electrons)
        throw std::invalid_argument("make_hubbard_system: inconsistent ms2");
    return representation == HubbardRepresentation::Site
               ? make_site_system(spec, n_electrons, ms2)
               : make_orbital_system(spec, n_electrons, ms2);
}

}  // namespace disco
