// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "disco/ansatz.hpp"
#include "disco/pool_tables.hpp"
#include "disco/sector_hamiltonian.hpp"

namespace disco {

struct OptimizerConfig {
    std::size_t m_operators = 0;          // ansatz length M
    std::size_t bh_steps_per_cycle = 10;  // basin-hopping perturbations per macro-cycle
    double bh_perturbation_scale = 0.4;   // uniform amplitude offset bound, radians-like
    double bh_temperature = 0.005;        // Metropolis temperature of the hopping chain
    double discrete_temperature = 0.005;  // initial Metropolis temperature for uphill moves
    double discrete_decay = 0.9;          // geometric temperature factor per macro-cycle
    std::size_t max_macro_cycles = 50;
    double grad_tolerance = 1e-9;    // max-norm target of full continuous relaxations
    double energy_tolerance = 1e-10; // energies closer than this count as ties
    std::uint64_t rng_seed = 1;
    std::size_t restarts = 5;        // independent seeded searches; best one is reported
    std::size_t threads = 1;         // concurrent candidate relaxations in discrete phases
    std::optional<double> stop_energy;  // optional early exit once the best energy reaches this
    std::size_t relax_iterations = 400;       // iteration cap of a full relaxation
    double coarse_grad_tolerance = 1e-6;      // screening tolerance for discrete candidates
    std::size_t coarse_iterations = 60;       // iteration cap of a screening relaxation
    double initial_amplitude_scale = 0.1;     // uniform draw bound of restart amplitudes
    // Warm start: the first restart begins from this ansatz instead of a
    // random draw (length must equal m_operators); later restarts stay random.
    std::optional<Ansatz> initial_ansatz;
};

void validate(const OptimizerConfig& config);

struct LocalMinimum {
    Ansatz ansatz;
    double energy = 0.0;
    double grad_norm = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
};

// Relaxes all amplitudes of `start` by limited-memory BFGS on the analytic
// gradient; the operator sequence is left untouched.
LocalMinimum local_minimize(const Ansatz& start, const SectorHamiltonian& h,
                            const PoolTables& tables, double grad_tolerance = 1e-9,
                            std::size_t max_iterations = 400);

struct BasinHopResult {
    LocalMinimum best;           // lowest minimum seen across all hops
    std::size_t steps = 0;       // perturbations attempted
    std::size_t accepted = 0;    // Metropolis acceptances
    std::size_t skipped = 0;     // perturbations whose relaxation did not converge
};

// Relaxes `start`, then `bh_steps_per_cycle` times perturbs every amplitude by
// a uniform offset in [-s, +s] and relaxes again, walking by Metropolis at
// bh_temperature. Deterministic given the generator state.
BasinHopResult basin_hop(const Ansatz& start, const SectorHamiltonian& h, const PoolTables& tables,
                         const OptimizerConfig& config, std::mt19937_64& rng);

struct MoveResult {
    LocalMinimum best;             // lowest fully relaxed candidate (input when none exist)
    std::size_t candidates = 0;    // relaxations performed by the enumeration
    bool changed = false;          // false when the neighbourhood is empty
};

// Lowest-energy cyclic rotation of the (operator, amplitude) sequence after
// relaxation; all M-1 nontrivial rotations are tested.
MoveResult cyclic_move(const LocalMinimum& current, const SectorHamiltonian& h,
                       const PoolTables& tables, const OptimizerConfig& config,
                       bool full_relax_all = false);

// Lowest-energy single-position replacement with any other pool operator;
// M * (pool size - 1) candidates.
MoveResult mutation_move(const LocalMinimum& current, const SectorHamiltonian& h,
                         const PoolTables& tables, const OptimizerConfig& config,
                         bool full_relax_all = false);

// Lowest-energy transposition of two sequence positions; M(M-1)/2 candidates.
MoveResult swap_move(const LocalMinimum& current, const SectorHamiltonian& h,
                     const PoolTables& tables, const OptimizerConfig& config,
                     bool full_relax_all = false);

struct MoveRecord {
    std::size_t cycle = 0;
    std::string move;              // "init", "basin_hop", "cyclic", ...
    std::size_t candidates = 0;
    double energy_before = 0.0;
    double energy_candidate = 0.0; // best candidate offered by the move
    bool accepted = false;
    bool uphill = false;           // accepted through the Metropolis rule
    double energy_after = 0.0;     // energy of the walker after the decision
    double best_energy = 0.0;      // best-ever energy at this point of the run
};

struct Biminimum {
    Ansatz ansatz;
    double energy = 0.0;
    double grad_norm = 0.0;
    bool certified = false;
    std::vector<MoveRecord> move_history;  // history of the winning restart
    std::size_t macro_cycles = 0;
    std::size_t candidate_relaxations = 0; // total over discrete phases, winning restart
    std::size_t restart_index = 0;
    std::vector<double> restart_energies;  // final energy of every restart
};

// Full global search: per restart, alternates basin-hopping with the cyclic,
// mutation and swap neighbourhoods, accepting downhill always and uphill by an
// annealed Metropolis rule. Stops early once a state is certified: gradient
// below grad_tolerance and no fully relaxed neighbour lower by more than
// energy_tolerance. Deterministic given rng_seed.
Biminimum disco_vqe(const SectorHamiltonian& h, const PoolTables& tables,
                    const OptimizerConfig& config);

struct AdaptResult {
    Ansatz ansatz;
    std::vector<double> energy_trace;  // reference energy, then one entry per added operator
    std::vector<std::size_t> selections;  // pool index chosen at each step
    bool stagnated = false;  // all selection gradients fell below tolerance before the cap
};

// Greedy baseline: repeatedly appends the pool operator with the largest
// selection gradient at the current state and relaxes all amplitudes.
AdaptResult adapt_vqe(const SectorHamiltonian& h, const PoolTables& tables,
                      std::size_t max_operators, double selection_tolerance,
                      const OptimizerConfig& config = {});

}  // namespace disco
