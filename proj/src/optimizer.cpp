// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <thread>
#include <utility>

#include "disco/lbfgs.hpp"

namespace disco {
namespace {

constexpr double kFallbackAmplitude = 0.05;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Relaxes every candidate produced by `make` (a pure function of the index)
// and returns the results in enumeration order, independent of scheduling.
std::vector<LocalMinimum> relax_candidates(std::size_t count,
                                           const std::function<Ansatz(std::size_t)>& make,
                                           const SectorHamiltonian& h, const PoolTables& tables,
                                           double grad_tolerance, std::size_t max_iterations,
                                           std::size_t threads) {
    std::vector<LocalMinimum> out(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = local_minimize(make(i), h, tables, grad_tolerance, max_iterations);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            out[i] = local_minimize(make(i), h, tables, grad_tolerance, max_iterations);
    };
    std::vector<std::thread> crew;
    const std::size_t n_workers = std::min(threads, count);
    crew.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) crew.emplace_back(worker);
    for (std::thread& t : crew) t.join();
    return out;
}

// First candidate in enumeration order wins ties within energy_tolerance, so
// lower positions and lower pool indices take precedence.
std::size_t pick_best(const std::vector<LocalMinimum>& candidates, double energy_tolerance) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (candidates[i].energy < candidates[best].energy - energy_tolerance) best = i;
    return best;
}

// Shared skeleton of the three neighbourhood moves: enumerate, screen with a
// coarse relaxation, then fully refine the winner (or relax everything fully
// when a certification pass asks for it).
MoveResult run_move(const LocalMinimum& current, const SectorHamiltonian& h,
                    const PoolTables& tables, const OptimizerConfig& config, bool full_relax_all,
                    std::size_t count, const std::function<Ansatz(std::size_t)>& make) {
    MoveResult result;
    if (count == 0) {
        result.best = current;
        return result;
    }
    const double screen_tol =
        full_relax_all ? config.grad_tolerance : config.coarse_grad_tolerance;
    const std::size_t screen_iters =
        full_relax_all ? config.relax_iterations : config.coarse_iterations;
    const std::vector<LocalMinimum> relaxed =
        relax_candidates(count, make, h, tables, screen_tol, screen_iters, config.threads);
    const std::size_t winner = pick_best(relaxed, config.energy_tolerance);
    result.candidates = count;
    result.changed = true;
    result.best = full_relax_all
                      ? relaxed[winner]
                      : local_minimize(relaxed[winner].ansatz, h, tables, config.grad_tolerance,
                                       config.relax_iterations);
    return result;
}

double metropolis_threshold(double delta, double temperature) {
    if (temperature <= 0.0) return 0.0;
    return std::exp(-delta / temperature);
}

struct SearchOutcome {
    LocalMinimum best;
    LocalMinimum walker;
    bool certified = false;
    std::vector<MoveRecord> history;
    std::size_t macro_cycles = 0;
    std::size_t candidate_relaxations = 0;
};

class SingleSearch {
  public:
    SingleSearch(const SectorHamiltonian& h, const PoolTables& tables,
                 const OptimizerConfig& config, std::uint64_t seed, bool use_initial)
        : h_(h), tables_(tables), config_(config), rng_(seed), use_initial_(use_initial) {}

    SearchOutcome run() {
        initialise();
        if (config_.m_operators == 0) {
            // No amplitudes and no discrete neighbours: the reference state is
            // a biminimum by definition.
            outcome_.certified = true;
            finish();
            return std::move(outcome_);
        }
        for (std::size_t cycle = 0; cycle < config_.max_macro_cycles && !stop_requested_;
             ++cycle) {
            outcome_.macro_cycles = cycle + 1;
            hop_phase(cycle);
            if (stop_requested_) break;
            const bool quiet = discrete_phase(cycle);
            if (stop_requested_) break;
            if (quiet && certification_phase(cycle)) break;
        }
        finish();
        return std::move(outcome_);
    }

  private:
    void initialise() {
        Ansatz start;
        if (use_initial_) {
            start = *config_.initial_ansatz;
        } else {
            start.reference = tables_.basis().reference_index();
            std::uniform_int_distribution<std::size_t> op_dist(0, tables_.pool().size() - 1);
            std::uniform_real_distribution<double> amp_dist(-config_.initial_amplitude_scale,
                                                            config_.initial_amplitude_scale);
            for (std::size_t i = 0; i < config_.m_operators; ++i) {
                start.sequence.push_back(op_dist(rng_));
                start.amplitudes.push_back(amp_dist(rng_));
            }
        }
        outcome_.walker = local_minimize(start, h_, tables_, config_.grad_tolerance,
                                         config_.relax_iterations);
        outcome_.best = outcome_.walker;
        record(0, "init", 0, outcome_.walker.energy, outcome_.walker.energy, true, false);
        check_stop();
    }

    void hop_phase(std::size_t cycle) {
        if (config_.bh_steps_per_cycle == 0) return;
        const double before = outcome_.walker.energy;
        const BasinHopResult hop = basin_hop(outcome_.walker.ansatz, h_, tables_, config_, rng_);
        const bool improved = hop.best.energy < before - config_.energy_tolerance;
        if (improved) outcome_.walker = hop.best;
        track_best();
        record(cycle, "basin_hop", hop.steps, before, hop.best.energy, improved, false);
        check_stop();
    }

    // Runs the three neighbourhoods with screening relaxations. Returns true
    // when nothing was accepted, i.e. the walker survived the whole phase.
    // Mutation and swap repeat while they keep lowering the energy (up to M
    // repetitions), so one macro-cycle can rewrite the whole sequence; a
    // single Metropolis decision on the last, uphill candidate ends a phase.
    bool discrete_phase(std::size_t cycle) {
        const double temperature =
            config_.discrete_temperature * std::pow(config_.discrete_decay, double(cycle));
        bool quiet = true;
        for (const auto& [name, move] : moves()) {
            const bool single = std::strcmp(name, "cyclic") == 0;
            const std::size_t repetitions =
                single ? 1 : std::max<std::size_t>(config_.m_operators, 1);
            for (std::size_t rep = 0; rep < repetitions; ++rep) {
                const double before = outcome_.walker.energy;
                const MoveResult mr = move(outcome_.walker, h_, tables_, config_, false);
                outcome_.candidate_relaxations += mr.candidates;
                const double delta = mr.best.energy - before;
                bool accepted = false;
                bool uphill = false;
                if (mr.changed) {
                    if (delta < -config_.energy_tolerance) {
                        accepted = true;
                    } else if (delta > config_.energy_tolerance) {
                        std::uniform_real_distribution<double> unit(0.0, 1.0);
                        if (unit(rng_) < metropolis_threshold(delta, temperature)) {
                            accepted = true;
                            uphill = true;
                        }
                    }
                }
                if (accepted) {
                    outcome_.walker = mr.best;
                    quiet = false;
                    track_best();
                }
                record(cycle, name, mr.candidates, before, mr.best.energy, accepted, uphill);
                check_stop();
                if (stop_requested_) return false;
                if (!accepted || uphill) break;
            }
        }
        return quiet;
    }

    // Full-relaxation re-test of every neighbour of the walker. Returns true
    // when the walker is certified and the search should stop.
    bool certification_phase(std::size_t cycle) {
        const double before = outcome_.walker.energy;
        LocalMinimum best_neighbour;
        bool have_neighbour = false;
        for (const auto& [name, move] : moves()) {
            const MoveResult mr = move(outcome_.walker, h_, tables_, config_, true);
            outcome_.candidate_relaxations += mr.candidates;
            record(cycle, std::string("certify_") + name, mr.candidates, before, mr.best.energy,
                   false, false);
            if (mr.changed &&
                (!have_neighbour || mr.best.energy < best_neighbour.energy)) {
                best_neighbour = mr.best;
                have_neighbour = true;
            }
        }
        if (have_neighbour && best_neighbour.energy < before - config_.energy_tolerance) {
            outcome_.walker = best_neighbour;
            track_best();
            record(cycle, "certify_descend", 0, before, best_neighbour.energy, true, false);
            check_stop();
            return false;
        }
        if (outcome_.walker.grad_norm > config_.grad_tolerance) {
            outcome_.walker = local_minimize(outcome_.walker.ansatz, h_, tables_,
                                             config_.grad_tolerance,
                                             4 * config_.relax_iterations);
            track_best();
            if (outcome_.walker.grad_norm > config_.grad_tolerance) return false;
        }
        if (outcome_.best.energy < outcome_.walker.energy - config_.energy_tolerance) {
            // A better state was seen earlier; certify that one instead of the
            // current walker by jumping back and continuing the search.
            outcome_.walker = outcome_.best;
            record(cycle, "jump_to_best", 0, before, outcome_.best.energy, true, false);
            return false;
        }
        outcome_.certified = true;
        record(cycle, "certified", 0, before, outcome_.walker.energy, true, false);
        return true;
    }

    using MoveFn = MoveResult (*)(const LocalMinimum&, const SectorHamiltonian&,
                                  const PoolTables&, const OptimizerConfig&, bool);
    static const std::vector<std::pair<const char*, MoveFn>>& moves() {
        static const std::vector<std::pair<const char*, MoveFn>> table{
            {"cyclic", &cyclic_move}, {"mutation", &mutation_move}, {"swap", &swap_move}};
        return table;
    }

    void track_best() {
        if (outcome_.walker.energy < outcome_.best.energy) outcome_.best = outcome_.walker;
    }

    void check_stop() {
        if (config_.stop_energy && outcome_.best.energy <= *config_.stop_energy)
            stop_requested_ = true;
    }

    void record(std::size_t cycle, std::string move, std::size_t candidates, double before,
                double candidate_energy, bool accepted, bool uphill) {
        MoveRecord r;
        r.cycle = cycle;
        r.move = std::move(move);
        r.candidates = candidates;
        r.energy_before = before;
        r.energy_candidate = candidate_energy;
        r.accepted = accepted;
        r.uphill = uphill;
        r.energy_after = outcome_.walker.energy;
        r.best_energy = outcome_.best.energy;
        outcome_.history.push_back(std::move(r));
    }

    void finish() {
        // The certified state is the walker; otherwise report the best seen.
        if (!outcome_.certified) outcome_.walker = outcome_.best;
    }

    const SectorHamiltonian& h_;
    const PoolTables& tables_;
    const OptimizerConfig& config_;
    std::mt19937_64 rng_;
    bool use_initial_;
    SearchOutcome outcome_;
    bool stop_requested_ = false;
};

}  // namespace

void validate(const OptimizerConfig& config) {
    if (!(config.bh_perturbation_scale >= 0.0))
        throw std::invalid_argument("optimizer: bh_perturbation_scale must be non-negative");
    if (!(config.bh_temperature >= 0.0))
        throw std::invalid_argument("optimizer: bh_temperature must be non-negative");
    if (!(config.discrete_temperature >= 0.0))
        throw std::invalid_argument("optimizer: discrete_temperature must be non-negative");
    if (!(config.discrete_decay > 0.0 && config.discrete_decay <= 1.0))
        throw std::invalid_argument("optimizer: discrete_decay must lie in (0, 1]");
    if (!(config.grad_tolerance > 0.0))
        throw std::invalid_argument("optimizer: grad_tolerance must be positive");
    if (!(config.energy_tolerance > 0.0))
        throw std::invalid_argument("optimizer: energy_tolerance must be positive");
    if (!(config.coarse_grad_tolerance > 0.0))
        throw std::invalid_argument("optimizer: coarse_grad_tolerance must be positive");
    if (!(config.initial_amplitude_scale >= 0.0))
        throw std::invalid_argument("optimizer: initial_amplitude_scale must be non-negative");
    if (config.restarts == 0) throw std::invalid_argument("optimizer: restarts must be positive");
    if (config.threads == 0) throw std::invalid_argument("optimizer: threads must be positive");
    if (config.relax_iterations == 0 || config.coarse_iterations == 0)
        throw std::invalid_argument("optimizer: iteration caps must be positive");
    if (config.stop_energy && !std::isfinite(*config.stop_energy))
        throw std::invalid_argument("optimizer: stop_energy must be finite");
    if (config.initial_ansatz && config.initial_ansatz->size() != config.m_operators)
        throw std::invalid_argument(
            "optimizer: initial_ansatz length must equal m_operators");
}

LocalMinimum local_minimize(const Ansatz& start, const SectorHamiltonian& h,
                            const PoolTables& tables, double grad_tolerance,
                            std::size_t max_iterations) {
    validate_ansatz(start, tables);
    Ansatz shaped = start;
    AnsatzWorkspace ws;
    const Objective objective = [&](std::span<const double> x, std::span<double> grad) {
        std::copy(x.begin(), x.end(), shaped.amplitudes.begin());
        return energy_and_gradient(shaped, h, tables, grad, ws);
    };
    LbfgsOptions options;
    options.grad_tolerance = grad_tolerance;
    options.max_iterations = max_iterations;
    LbfgsResult r = lbfgs_minimize(objective, start.amplitudes, options);
    LocalMinimum m;
    m.ansatz = start;
    m.ansatz.amplitudes = std::move(r.x);
    m.energy = r.value;
    m.grad_norm = r.grad_norm;
    m.converged = r.converged;
    m.evaluations = r.evaluations;
    return m;
}

BasinHopResult basin_hop(const Ansatz& start, const SectorHamiltonian& h, const PoolTables& tables,
                         const OptimizerConfig& config, std::mt19937_64& rng) {
    validate(config);
    BasinHopResult result;
    LocalMinimum walker =
        local_minimize(start, h, tables, config.grad_tolerance, config.relax_iterations);
    result.best = walker;
    std::uniform_real_distribution<double> offset(-config.bh_perturbation_scale,
                                                  config.bh_perturbation_scale);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t step = 0; step < config.bh_steps_per_cycle; ++step) {
        ++result.steps;
        Ansatz trial = walker.ansatz;
        for (double& t : trial.amplitudes) t += offset(rng);
        const LocalMinimum candidate =
            local_minimize(trial, h, tables, config.grad_tolerance, config.relax_iterations);
        if (!candidate.converged) {
            ++result.skipped;
            continue;
        }
        const double delta = candidate.energy - walker.energy;
        if (delta <= 0.0 || unit(rng) < metropolis_threshold(delta, config.bh_temperature)) {
            walker = candidate;
            ++result.accepted;
        }
        if (candidate.energy < result.best.energy) result.best = candidate;
    }
    return result;
}

MoveResult cyclic_move(const LocalMinimum& current, const SectorHamiltonian& h,
                       const PoolTables& tables, const OptimizerConfig& config,
                       bool full_relax_all) {
    const std::size_t m = current.ansatz.size();
    const std::size_t count = m >= 2 ? m - 1 : 0;
    const auto make = [&](std::size_t idx) {
        const std::size_t shift = idx + 1;
        Ansatz rotated = current.ansatz;
        for (std::size_t j = 0; j < m; ++j) {
            rotated.sequence[j] = current.ansatz.sequence[(j + shift) % m];
            rotated.amplitudes[j] = current.ansatz.amplitudes[(j + shift) % m];
        }
        return rotated;
    };
    return run_move(current, h, tables, config, full_relax_all, count, make);
}

MoveResult mutation_move(const LocalMinimum& current, const SectorHamiltonian& h,
                         const PoolTables& tables, const OptimizerConfig& config,
                         bool full_relax_all) {
    const std::size_t m = current.ansatz.size();
    const std::size_t pool_size = tables.pool().size();
    const std::size_t per_position = pool_size >= 1 ? pool_size - 1 : 0;
    const std::size_t count = m * per_position;
    const auto make = [&](std::size_t idx) {
        const std::size_t position = idx / per_position;
        std::size_t op = idx % per_position;
        if (op >= current.ansatz.sequence[position]) ++op;  // skip the incumbent operator
        Ansatz mutated = current.ansatz;
        mutated.sequence[position] = op;
        if (!std::isfinite(mutated.amplitudes[position]))
            mutated.amplitudes[position] = kFallbackAmplitude;
        return mutated;
    };
    return run_move(current, h, tables, config, full_relax_all, count, make);
}

MoveResult swap_move(const LocalMinimum& current, const SectorHamiltonian& h,
                     const PoolTables& tables, const OptimizerConfig& config,
                     bool full_relax_all) {
    const std::size_t m = current.ansatz.size();
    const std::size_t count = m >= 2 ? m * (m - 1) / 2 : 0;
    // Unordered pairs (i, j), i < j, enumerated i-major.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    const auto make = [&](std::size_t idx) {
        const auto [i, j] = pairs[idx];
        Ansatz swapped = current.ansatz;
        std::swap(swapped.sequence[i], swapped.sequence[j]);
        std::swap(swapped.amplitudes[i], swapped.amplitudes[j]);
        return swapped;
    };
    return run_move(current, h, tables, config, full_relax_all, count, make);
}

Biminimum disco_vqe(const SectorHamiltonian& h, const PoolTables& tables,
                    const OptimizerConfig& config) {
    validate(config);
    if (tables.pool().size() == 0 && config.m_operators > 0)
        throw std::invalid_argument("disco_vqe: empty operator pool");
    Biminimum best;
    std::vector<double> energies;
    bool have_best = false;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        SingleSearch search(h, tables, config, mix_seed(config.rng_seed, r),
                            r == 0 && config.initial_ansatz.has_value());
        SearchOutcome outcome = search.run();
        Biminimum bi;
        bi.ansatz = outcome.walker.ansatz;
        bi.energy = outcome.walker.energy;
        bi.grad_norm = outcome.walker.grad_norm;
        bi.certified = outcome.certified;
        bi.move_history = std::move(outcome.history);
        bi.macro_cycles = outcome.macro_cycles;
        bi.candidate_relaxations = outcome.candidate_relaxations;
        bi.restart_index = r;
        energies.push_back(bi.energy);
        const bool better =
            !have_best || bi.energy < best.energy - config.energy_tolerance ||
            (bi.certified && !best.certified &&
             bi.energy < best.energy + config.energy_tolerance);
        if (better) {
            best = std::move(bi);
            have_best = true;
        }
        if (config.stop_energy && best.energy <= *config.stop_energy) break;
    }
    best.restart_energies = std::move(energies);
    return best;
}

AdaptResult adapt_vqe(const SectorHamiltonian& h, const PoolTables& tables,
                      std::size_t max_operators, double selection_tolerance,
                      const OptimizerConfig& config) {
    validate(config);
    if (!(selection_tolerance >= 0.0))
        throw std::invalid_argument("adapt_vqe: selection_tolerance must be non-negative");
    if (tables.pool().size() == 0 && max_operators > 0)
        throw std::invalid_argument("adapt_vqe: empty operator pool");
    AdaptResult result;
    result.ansatz.reference = tables.basis().reference_index();
    result.energy_trace.push_back(energy(result.ansatz, h, tables));
    std::vector<double> psi(tables.dim());
    std::vector<double> sigma(tables.dim());
    while (result.ansatz.size() < max_operators) {
        evaluate_state(result.ansatz, tables, psi);
        h.apply(psi, sigma);
        const std::vector<double> gradients = candidate_gradients(psi, sigma, tables);
        std::size_t pick = 0;
        for (std::size_t k = 1; k < gradients.size(); ++k)
            if (std::abs(gradients[k]) > std::abs(gradients[pick])) pick = k;
        if (std::abs(gradients[pick]) < selection_tolerance) {
            result.stagnated = true;
            break;
        }
        result.ansatz.sequence.push_back(pick);
        result.ansatz.amplitudes.push_back(0.0);
        result.selections.push_back(pick);
        const LocalMinimum relaxed = local_minimize(result.ansatz, h, tables,
                                                    config.grad_tolerance,
                                                    config.relax_iterations);
        result.ansatz = relaxed.ansatz;
        result.energy_trace.push_back(relaxed.energy);
    }
    return result;
}

}  // namespace disco
