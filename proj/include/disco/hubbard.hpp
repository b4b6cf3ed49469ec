// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "disco/fcidump.hpp"

namespace disco {

enum class Boundary { Open, Periodic };

// Rectangular lattice Fermi-Hubbard model
//   H = -t sum_{<ij>,sigma} (a^dag_i a_j + h.c.) + U sum_i n_{i up} n_{i down}
// with sites indexed s = x + lx * y.
struct HubbardSpec {
    int lx = 1;
    int ly = 1;
    double t_hop = 1.0;
    double u_rep = 0.0;
    Boundary bc_x = Boundary::Open;
    Boundary bc_y = Boundary::Open;

    int n_sites() const { return lx * ly; }
};

// Unordered nearest-neighbour bonds, each pair listed once. Periodic wrap
// edges that coincide with an existing bond (extent 1 or 2) are dropped so
// the hopping amplitude stays -t on every bond.
std::vector<std::pair<int, int>> lattice_edges(const HubbardSpec& spec);

// Column-major n x n one-body hopping matrix: -t on every bond, else zero.
std::vector<double> site_hopping_matrix(const HubbardSpec& spec);

// Basis the interaction is expressed in. Site keeps the lattice basis
// (diagonal interaction); Orbital rotates to the hopping eigenbasis, where
// the mean-field ground determinant is a good starting reference.
enum class HubbardRepresentation { Site, Orbital };

// Electronic-structure view of a Hubbard model: integrals plus the
// orbital-to-site coefficient matrix needed for lattice observables.
// orbital_to_site is column-major with entry [s + n*p] = <site s|orbital p>;
// it is the identity in the Site representation.
struct HubbardSystem {
    HubbardSpec spec;
    HubbardRepresentation representation = HubbardRepresentation::Orbital;
    FcidumpData integrals;
    std::vector<double> orbital_to_site;
};

HubbardSystem make_hubbard_system(const HubbardSpec& spec, int n_electrons, int ms2,
                                  HubbardRepresentation representation);

}  // namespace disco
