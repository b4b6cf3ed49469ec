// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "disco/hubbard.hpp"
#include "disco/optimizer.hpp"
#include "test_util.hpp"

using namespace disco;

namespace {

struct Problem {
    SectorBasis basis;
    OperatorPool pool;
    PoolTables tables;
    SectorHamiltonian h;

    Problem(const HubbardSpec& spec, int na, int nb, HubbardRepresentation rep)
        : basis(SectorBasis::build(spec.n_sites(), na, nb)),
          pool(OperatorPool::build(spec.n_sites())),
          tables(pool, basis),
          h(build_molecular_hamiltonian(
              make_hubbard_system(spec, na + nb, na - nb, rep).integrals, basis)) {}
};

Ansatz random_ansatz(std::mt19937_64& rng, const Problem& prob, std::size_t m,
                     double amp_range = 0.5) {
    std::uniform_int_distribution<std::size_t> op_dist(0, prob.pool.size() - 1);
    std::uniform_real_distribution<double> amp_dist(-amp_range, amp_range);
    Ansatz a;
    a.reference = prob.basis.reference_index();
    for (std::size_t i = 0; i < m; ++i) {
        a.sequence.push_back(op_dist(rng));
        a.amplitudes.push_back(amp_dist(rng));
    }
    return a;
}

double dimer_ground(double t, double u) { return 0.5 * (u - std::sqrt(u * u + 16.0 * t * t)); }

bool same_amplitudes(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

OptimizerConfig quick_config(std::size_t m, std::uint64_t seed) {
    OptimizerConfig c;
    c.m_operators = m;
    c.bh_steps_per_cycle = 3;
    c.max_macro_cycles = 8;
    c.restarts = 2;
    c.rng_seed = seed;
    return c;
}

}  // namespace

TEST_CASE("local relaxation solves the dimer pair rotation") {
    const Problem prob({2, 1, 1.0, 4.0}, 1, 1, HubbardRepresentation::Orbital);
    Ansatz a;
    a.reference = prob.basis.reference_index();
    a.sequence = {prob.pool.index_of({OperatorKind::PairedDouble, 0, 1})};
    a.amplitudes = {0.1};
    const LocalMinimum m = local_minimize(a, prob.h, prob.tables);
    CHECK(m.converged);
    CHECK(m.energy == doctest::Approx(dimer_ground(1.0, 4.0)).epsilon(1e-10));
    CHECK(m.grad_norm <= 1e-9);

    SUBCASE("stationary input is returned unchanged") {
        const LocalMinimum again = local_minimize(m.ansatz, prob.h, prob.tables);
        CHECK(again.energy == doctest::Approx(m.energy).epsilon(1e-14));
        CHECK(same_amplitudes(again.ansatz.amplitudes, m.ansatz.amplitudes));
    }
}

TEST_CASE("relaxation never raises the energy") {
    const Problem prob({4, 1, 1.0, 3.0}, 2, 2, HubbardRepresentation::Site);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Ansatz start = random_ansatz(rng, prob, 5, 1.0);
        const double before = energy(start, prob.h, prob.tables);
        const LocalMinimum m = local_minimize(start, prob.h, prob.tables);
        CHECK(m.energy <= before + 1e-12);
    }
}

TEST_CASE("basin hopping") {
    const Problem prob({4, 1, 1.0, 3.0}, 2, 2, HubbardRepresentation::Site);
    std::mt19937_64 rng(23);
    const Ansatz start = random_ansatz(rng, prob, 4);
    OptimizerConfig config = quick_config(4, 23);

    SUBCASE("zero steps reduces to local relaxation") {
        config.bh_steps_per_cycle = 0;
        std::mt19937_64 hop_rng(1);
        const BasinHopResult hop = basin_hop(start, prob.h, prob.tables, config, hop_rng);
        const LocalMinimum direct = local_minimize(start, prob.h, prob.tables);
        CHECK(hop.steps == 0);
        CHECK(hop.best.energy == direct.energy);
        CHECK(same_amplitudes(hop.best.ansatz.amplitudes, direct.ansatz.amplitudes));
    }
    SUBCASE("best-seen is at least as good as plain relaxation") {
        config.bh_steps_per_cycle = 5;
        std::mt19937_64 hop_rng(2);
        const BasinHopResult hop = basin_hop(start, prob.h, prob.tables, config, hop_rng);
        const LocalMinimum direct = local_minimize(start, prob.h, prob.tables);
        CHECK(hop.steps == 5);
        CHECK(hop.best.energy <= direct.energy + 1e-12);
    }
    SUBCASE("deterministic given the generator state") {
        std::mt19937_64 r1(77), r2(77);
        const BasinHopResult a = basin_hop(start, prob.h, prob.tables, config, r1);
        const BasinHopResult b = basin_hop(start, prob.h, prob.tables, config, r2);
        CHECK(a.best.energy == b.best.energy);
        CHECK(same_amplitudes(a.best.ansatz.amplitudes, b.best.ansatz.amplitudes));
        CHECK(a.accepted == b.accepted);
    }
}

TEST_CASE("cyclic move") {
    const Problem prob({4, 1, 1.0, 3.0}, 2, 2, HubbardRepresentation::Orbital);
    const OptimizerConfig config = quick_config(0, 1);
    const std::size_t a = prob.pool.index_of({OperatorKind::PairedDouble, 0, 1});
    const std::size_t b = prob.pool.index_of({OperatorKind::PairedDouble, 2, 3});

    SUBCASE("single-operator sequences have no rotations") {
        Ansatz one;
        one.reference = prob.basis.reference_index();
        one.sequence = {a};
        one.amplitudes = {0.3};
        const LocalMinimum current = local_minimize(one, prob.h, prob.tables);
        const MoveResult mr = cyclic_move(current, prob.h, prob.tables, config);
        CHECK(!mr.changed);
        CHECK(mr.candidates == 0);
        CHECK(mr.best.energy == current.energy);
    }
    SUBCASE("rotations of a commuting sequence keep the energy") {
        // Operators on disjoint orbital pairs commute, so ordering is moot.
        Ansatz c;
        c.reference = prob.basis.reference_index();
        c.sequence = {a, b, a};
        c.amplitudes = {0.4, -0.3, 0.2};
        const LocalMinimum current = local_minimize(c, prob.h, prob.tables);
        const MoveResult mr = cyclic_move(current, prob.h, prob.tables, config);
        CHECK(mr.candidates == 2);
        CHECK(mr.best.energy == doctest::Approx(current.energy).epsilon(1e-12));
    }
    SUBCASE("degenerate rotations pick the smallest shift") {
        Ansatz z;
        z.reference = prob.basis.reference_index();
        z.sequence = {a, b, a};
        z.amplitudes = {0.0, 0.0, 0.0};
        LocalMinimum current;
        current.ansatz = z;
        current.energy = energy(z, prob.h, prob.tables);
        const MoveResult mr = cyclic_move(current, prob.h, prob.tables, config);
        CHECK(mr.best.ansatz.sequence == std::vector<std::size_t>{b, a, a});
    }
}

TEST_CASE("mutation move") {
    const Problem prob({2, 1, 1.0, 3.0}, 1, 1, HubbardRepresentation::Orbital);
    const OptimizerConfig config = quick_config(0, 1);
    const std::size_t single = prob.pool.index_of({OperatorKind::SpinAdaptedSingle, 0, 1});

    SUBCASE("pool of one operator leaves the input alone") {
        const OperatorPool tiny =
            OperatorPool::from_operators(2, {{OperatorKind::PairedDouble, 0, 1}});
        const PoolTables tables(tiny, prob.basis);
        Ansatz a;
        a.reference = prob.basis.reference_index();
        a.sequence = {0};
        a.amplitudes = {0.2};
        const LocalMinimum current = local_minimize(a, prob.h, tables);
        const MoveResult mr = mutation_move(current, prob.h, tables, config);
        CHECK(!mr.changed);
        CHECK(mr.candidates == 0);
    }
    SUBCASE("an unproductive operator is mutated into a productive one") {
        Ansatz a;
        a.reference = prob.basis.reference_index();
        a.sequence = {single};  // orbital rotations cannot lower a closed-shell dimer
        a.amplitudes = {0.0};
        const LocalMinimum current = local_minimize(a, prob.h, prob.tables);
        const MoveResult mr = mutation_move(current, prob.h, prob.tables, config);
        CHECK(mr.candidates == 1);
        CHECK(mr.best.energy < current.energy - 0.1);
        CHECK(mr.best.energy == doctest::Approx(dimer_ground(1.0, 3.0)).epsilon(1e-9));
    }
}

TEST_CASE("discrete move enumeration counts") {
    const Problem prob({4, 1, 1.0, 3.0}, 2, 2, HubbardRepresentation::Site);
    const OptimizerConfig config = quick_config(0, 1);
    std::mt19937_64 rng(31);
    const LocalMinimum current =
        local_minimize(random_ansatz(rng, prob, 4), prob.h, prob.tables);
    REQUIRE(prob.pool.size() == 12);
    CHECK(cyclic_move(current, prob.h, prob.tables, config).candidates == 3);
    CHECK(mutation_move(current, prob.h, prob.tables, config).candidates == 4 * 11);
    CHECK(swap_move(current, prob.h, prob.tables, config).candidates == 6);
}

TEST_CASE("swap move") {
    const Problem prob({4, 1, 1.0, 3.0}, 2, 2, HubbardRepresentation::Orbital);
    const OptimizerConfig config = quick_config(0, 1);
    const std::size_t a = prob.pool.index_of({OperatorKind::PairedDouble, 0, 1});
    const std::size_t b = prob.pool.index_of({OperatorKind::PairedDouble, 2, 3});

    SUBCASE("swapping identical operators changes nothing") {
        Ansatz same;
        same.reference = prob.basis.reference_index();
        same.sequence = {a, a};
        same.amplitudes = {0.3, -0.2};
        const LocalMinimum current = local_minimize(same, prob.h, prob.tables);
        const MoveResult mr = swap_move(current, prob.h, prob.tables, config);
        CHECK(mr.candidates == 1);
        CHECK(mr.best.energy == doctest::Approx(current.energy).epsilon(1e-12));
    }
    SUBCASE("swapping commuting operators changes nothing") {
        Ansatz c;
        c.reference = prob.basis.reference_index();
        c.sequence = {a, b};
        c.amplitudes = {0.25, -0.35};
        const LocalMinimum current = local_minimize(c, prob.h, prob.tables);
        const MoveResult mr = swap_move(current, prob.h, prob.tables, config);
        CHECK(mr.best.energy == doctest::Approx(current.energy).epsilon(1e-12));
    }
}

TEST_CASE("deterministic candidate merge across thread counts") {
    const Problem prob({4, 1, 1.0, 3.0}, 2, 2, HubbardRepresentation::Site);
    std::mt19937_64 rng(41);
    const LocalMinimum current =
        local_minimize(random_ansatz(rng, prob, 3), prob.h, prob.tables);
    OptimizerConfig serial = quick_config(0, 1);
    OptimizerConfig threaded = serial;
    threaded.threads = 2;
    const MoveResult a = mutation_move(current, prob.h, prob.tables, serial);
    const MoveResult b = mutation_move(current, prob.h, prob.tables, threaded);
    CHECK(a.best.energy == b.best.energy);
    CHECK(a.best.ansatz.sequence == b.best.ansatz.sequence);
    CHECK(same_amplitudes(a.best.ansatz.amplitudes, b.best.ansatz.amplitudes));
}

TEST_CASE("full search on the dimer finds and certifies the ground state") {
    const Problem prob({2, 1, 1.0, 4.0}, 1, 1, HubbardRepresentation::Orbital);
    const OptimizerConfig config = quick_config(1, 7);
    const Biminimum bi = disco_vqe(prob.h, prob.tables, config);
    CHECK(bi.energy == doctest::Approx(dimer_ground(1.0, 4.0)).epsilon(1e-9));
    CHECK(bi.certified);
    CHECK(bi.grad_norm <= config.grad_tolerance);
    CHECK(bi.restart_energies.size() >= 1);

    SUBCASE("certified states really have no better neighbour") {
        const LocalMinimum state{bi.ansatz, bi.energy, bi.grad_norm, true, 0};
        using MoveFn = MoveResult (*)(const LocalMinimum&, const SectorHamiltonian&,
                                      const PoolTables&, const OptimizerConfig&, bool);
        for (MoveFn move : {MoveFn(&cyclic_move), MoveFn(&mutation_move), MoveFn(&swap_move)}) {
            const MoveResult mr = move(state, prob.h, prob.tables, config, true);
            if (mr.changed) CHECK(mr.best.energy >= bi.energy - 1e-9);
        }
    }
}

TEST_CASE("search bookkeeping") {
    const Problem prob({2, 1, 1.0, 4.0}, 1, 1, HubbardRepresentation::Orbital);

    SUBCASE("empty ansatz is trivially certified at the reference energy") {
        const OptimizerConfig config = quick_config(0, 3);
        const Biminimum bi = disco_vqe(prob.h, prob.tables, config);
        CHECK(bi.certified);
        Ansatz empty;
        empty.reference = prob.basis.reference_index();
        CHECK(bi.energy == doctest::Approx(energy(empty, prob.h, prob.tables)).epsilon(1e-14));
    }
    SUBCASE("identical seeds reproduce the run exactly") {
        const OptimizerConfig config = quick_config(1, 99);
        const Biminimum a = disco_vqe(prob.h, prob.tables, config);
        const Biminimum b = disco_vqe(prob.h, prob.tables, config);
        CHECK(a.energy == b.energy);
        CHECK(same_amplitudes(a.ansatz.amplitudes, b.ansatz.amplitudes));
        REQUIRE(a.move_history.size() == b.move_history.size());
        for (std::size_t i = 0; i < a.move_history.size(); ++i) {
            CHECK(a.move_history[i].move == b.move_history[i].move);
            CHECK(a.move_history[i].energy_after == b.move_history[i].energy_after);
        }
    }
    SUBCASE("best-ever energy is monotone along the history") {
        const OptimizerConfig config = quick_config(1, 13);
        const Biminimum bi = disco_vqe(prob.h, prob.tables, config);
        for (std::size_t i = 1; i < bi.move_history.size(); ++i)
            CHECK(bi.move_history[i].best_energy <=
                  bi.move_history[i - 1].best_energy + 1e-15);
    }
    SUBCASE("stop_energy aborts the search immediately when already satisfied") {
        OptimizerConfig config = quick_config(1, 5);
        config.stop_energy = 1e6;
        const Biminimum bi = disco_vqe(prob.h, prob.tables, config);
        CHECK(!bi.certified);
        CHECK(bi.macro_cycles == 0);
        CHECK(bi.move_history.size() == 1);
    }
}

TEST_CASE("optimizer config validation") {
    const Problem prob({2, 1, 1.0, 4.0}, 1, 1, HubbardRepresentation::Orbital);
    OptimizerConfig config = quick_config(1, 1);
    config.discrete_decay = 1.5;
    CHECK_THROWS_AS(disco_vqe(prob.h, prob.tables, config), std::invalid_argument);
    config = quick_config(1, 1);
    config.energy_tolerance = 0.0;
    CHECK_THROWS_AS(disco_vqe(prob.h, prob.tables, config), std::invalid_argument);
    config = quick_config(1, 1);
    config.restarts = 0;
    CHECK_THROWS_AS(disco_vqe(prob.h, prob.tables, config), std::invalid_argument);
    config = quick_config(1, 1);
    config.threads = 0;
    CHECK_THROWS_AS(disco_vqe(prob.h, prob.tables, config), std::invalid_argument);
}

TEST_CASE("greedy growth baseline") {
    SUBCASE("first pick maximises the selection gradient") {
        const Problem prob({4, 1, 1.0, 3.0}, 2, 2, HubbardRepresentation::Site);
        Ansatz empty;
        empty.reference = prob.basis.reference_index();
        const std::vector<double> psi = evaluate_state(empty, prob.tables);
        std::vector<double> sigma(psi.size());
        prob.h.apply(psi, sigma);
        const std::vector<double> g = candidate_gradients(psi, sigma, prob.tables);
        std::size_t expect = 0;
        for (std::size_t k = 1; k < g.size(); ++k)
            if (std::abs(g[k]) > std::abs(g[expect])) expect = k;
        const AdaptResult adapt = adapt_vqe(prob.h, prob.tables, 3, 1e-8);
        REQUIRE(!adapt.selections.empty());
        CHECK(adapt.selections[0] == expect);
    }
    SUBCASE("energy trace is monotone and reaches the dimer ground state") {
        const Problem prob({2, 1, 1.0, 4.0}, 1, 1, HubbardRepresentation::Orbital);
        const AdaptResult adapt = adapt_vqe(prob.h, prob.tables, 2, 1e-8);
        for (std::size_t i = 1; i < adapt.energy_trace.size(); ++i)
            CHECK(adapt.energy_trace[i] <= adapt.energy_trace[i - 1] + 1e-12);
        CHECK(adapt.energy_trace.back() ==
              doctest::Approx(dimer_ground(1.0, 4.0)).epsilon(1e-9));
    }
    SUBCASE("an exact reference stagnates at once") {
        const Problem prob({4, 1, 1.0, 0.0}, 2, 2, HubbardRepresentation::Orbital);
        const AdaptResult adapt = adapt_vqe(prob.h, prob.tables, 3, 1e-6);
        CHECK(adapt.stagnated);
        CHECK(adapt.ansatz.size() == 0);
        CHECK(adapt.energy_trace.size() == 1);
    }
}
