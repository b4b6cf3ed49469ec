// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "disco/ansatz.hpp"
#include "disco/circuit_cost.hpp"
#include "disco/hubbard.hpp"
#include "disco/optimizer.hpp"
#include "disco/oracle.hpp"
#include "disco/sector_hamiltonian.hpp"

namespace disco {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
    throw std::invalid_argument("config: " + where + ": " + what);
}

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) config_error(where, "expected an object");
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    require_object(obj, where);
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) config_error(where, "unknown key '" + item.key() + "'");
    }
}

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) config_error(where, "expected a number");
    return j.get<double>();
}

std::int64_t as_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) config_error(where, "expected an integer");
    return j.get<std::int64_t>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) config_error(where, "expected a string");
    return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& where) {
    if (!j.is_boolean()) config_error(where, "expected a boolean");
    return j.get<bool>();
}

std::size_t as_count(const json& j, const std::string& where) {
    const std::int64_t v = as_integer(j, where);
    if (v < 0) config_error(where, "expected a non-negative integer");
    return std::size_t(v);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// Configuration resolution. Everything is validated here, before any state
// is built or any file is written.

struct ResolvedJob {
    std::string method;  // disco | adapt | fci | replay

    bool from_fcidump = false;
    std::string fcidump_path;
    int frozen = 0;
    HubbardSpec hubbard;
    HubbardRepresentation representation = HubbardRepresentation::Site;

    int n_alpha = 0;
    int n_beta = 0;

    OptimizerConfig optimizer;
    std::optional<double> stop_error;
    std::optional<std::string> warm_start_file;

    std::size_t adapt_max_operators = 0;
    double adapt_selection_tolerance = 1e-6;

    std::string replay_ansatz;
    bool replay_relax = false;

    CostModel cost;
    bool fci_enabled = true;
    OracleOptions oracle;

    json resolved;  // full config echo with defaults materialised
};

Boundary parse_boundary(const json& j, const std::string& where) {
    const std::string s = as_string(j, where);
    if (s == "open") return Boundary::Open;
    if (s == "periodic") return Boundary::Periodic;
    config_error(where, "expected \"open\" or \"periodic\"");
}

HubbardRepresentation parse_representation(const json& j, const std::string& where) {
    const std::string s = as_string(j, where);
    if (s == "site") return HubbardRepresentation::Site;
    if (s == "orbital") return HubbardRepresentation::Orbital;
    config_error(where, "expected \"site\" or \"orbital\"");
}

void resolve_system(const json& config, ResolvedJob& job) {
    const json* system = find(config, "system");
    if (!system) config_error("system", "required");
    check_keys(*system, "system", {"fcidump", "frozen", "hubbard"});
    const json* fcidump = find(*system, "fcidump");
    const json* hubbard = find(*system, "hubbard");
    if (!!fcidump == !!hubbard)
        config_error("system", "exactly one of 'fcidump' and 'hubbard' must be given");
    if (fcidump) {
        job.from_fcidump = true;
        job.fcidump_path = as_string(*fcidump, "system.fcidump");
        if (const json* frozen = find(*system, "frozen")) {
            const std::int64_t v = as_integer(*frozen, "system.frozen");
            if (v < 0) config_error("system.frozen", "must be non-negative");
            job.frozen = int(v);
        }
        if (!fs::exists(job.fcidump_path))
            config_error("system.fcidump", "file not found: " + job.fcidump_path);
        job.resolved["system"] = {{"fcidump", job.fcidump_path}, {"frozen", job.frozen}};
    } else {
        if (find(*system, "frozen")) config_error("system.frozen", "only valid with fcidump");
        check_keys(*hubbard, "system.hubbard",
                   {"lx", "ly", "t", "u", "bc_x", "bc_y", "representation"});
        HubbardSpec spec;
        if (const json* v = find(*hubbard, "lx")) spec.lx = int(as_integer(*v, "system.hubbard.lx"));
        if (const json* v = find(*hubbard, "ly")) spec.ly = int(as_integer(*v, "system.hubbard.ly"));
        if (const json* v = find(*hubbard, "t")) spec.t_hop = as_number(*v, "system.hubbard.t");
        if (const json* v = find(*hubbard, "u")) spec.u_rep = as_number(*v, "system.hubbard.u");
        if (const json* v = find(*hubbard, "bc_x"))
            spec.bc_x = parse_boundary(*v, "system.hubbard.bc_x");
        if (const json* v = find(*hubbard, "bc_y"))
            spec.bc_y = parse_boundary(*v, "system.hubbard.bc_y");
        job.hubbard = spec;
        job.representation = HubbardRepresentation::Site;
        if (const json* v = find(*hubbard, "representation"))
            job.representation = parse_representation(*v, "system.hubbard.representation");
        job.resolved["system"] = {
            {"hubbard",
             {{"lx", spec.lx},
              {"ly", spec.ly},
              {"t", spec.t_hop},
              {"u", spec.u_rep},
              {"bc_x", spec.bc_x == Boundary::Periodic ? "periodic" : "open"},
              {"bc_y", spec.bc_y == Boundary::Periodic ? "periodic" : "open"},
              {"representation",
               job.representation == HubbardRepresentation::Orbital ? "orbital" : "site"}}}};
    }
}

void resolve_sector(const json& config, ResolvedJob& job) {
    const json* sector = find(config, "sector");
    if (!sector) config_error("sector", "required");
    check_keys(*sector, "sector", {"n_alpha", "n_beta"});
    const json* na = find(*sector, "n_alpha");
    const json* nb = find(*sector, "n_beta");
    if (!na || !nb) config_error("sector", "n_alpha and n_beta are required");
    job.n_alpha = int(as_integer(*na, "sector.n_alpha"));
    job.n_beta = int(as_integer(*nb, "sector.n_beta"));
    if (job.n_alpha < 0 || job.n_beta < 0) config_error("sector", "electron counts must be >= 0");
    job.resolved["sector"] = {{"n_alpha", job.n_alpha}, {"n_beta", job.n_beta}};
}

void resolve_optimizer(const json& config, ResolvedJob& job) {
    OptimizerConfig& c = job.optimizer;
    if (const json* opt = find(config, "optimizer")) {
        check_keys(*opt, "optimizer",
                   {"m_operators", "bh_steps_per_cycle", "bh_perturbation_scale",
                    "bh_temperature", "discrete_temperature", "discrete_decay",
                    "max_macro_cycles", "grad_tolerance", "energy_tolerance", "rng_seed",
                    "restarts", "threads", "stop_energy", "stop_error", "relax_iterations",
                    "coarse_grad_tolerance", "coarse_iterations", "initial_amplitude_scale",
                    "warm_start_file"});
        const std::string w = "optimizer.";
        if (const json* v = find(*opt, "m_operators")) c.m_operators = as_count(*v, w + "m_operators");
        if (const json* v = find(*opt, "bh_steps_per_cycle"))
            c.bh_steps_per_cycle = as_count(*v, w + "bh_steps_per_cycle");
        if (const json* v = find(*opt, "bh_perturbation_scale"))
            c.bh_perturbation_scale = as_number(*v, w + "bh_perturbation_scale");
        if (const json* v = find(*opt, "bh_temperature"))
            c.bh_temperature = as_number(*v, w + "bh_temperature");
        if (const json* v = find(*opt, "discrete_temperature"))
            c.discrete_temperature = as_number(*v, w + "discrete_temperature");
        if (const json* v = find(*opt, "discrete_decay"))
            c.discrete_decay = as_number(*v, w + "discrete_decay");
        if (const json* v = find(*opt, "max_macro_cycles"))
            c.max_macro_cycles = as_count(*v, w + "max_macro_cycles");
        if (const json* v = find(*opt, "grad_tolerance"))
            c.grad_tolerance = as_number(*v, w + "grad_tolerance");
        if (const json* v = find(*opt, "energy_tolerance"))
            c.energy_tolerance = as_number(*v, w + "energy_tolerance");
        if (const json* v = find(*opt, "rng_seed"))
            c.rng_seed = std::uint64_t(as_integer(*v, w + "rng_seed"));
        if (const json* v = find(*opt, "restarts")) c.restarts = as_count(*v, w + "restarts");
        if (const json* v = find(*opt, "threads")) c.threads = as_count(*v, w + "threads");
        if (const json* v = find(*opt, "stop_energy"))
            c.stop_energy = as_number(*v, w + "stop_energy");
        if (const json* v = find(*opt, "stop_error"))
            job.stop_error = as_number(*v, w + "stop_error");
        if (const json* v = find(*opt, "relax_iterations"))
            c.relax_iterations = as_count(*v, w + "relax_iterations");
        if (const json* v = find(*opt, "coarse_grad_tolerance"))
            c.coarse_grad_tolerance = as_number(*v, w + "coarse_grad_tolerance");
        if (const json* v = find(*opt, "coarse_iterations"))
            c.coarse_iterations = as_count(*v, w + "coarse_iterations");
        if (const json* v = find(*opt, "initial_amplitude_scale"))
            c.initial_amplitude_scale = as_number(*v, w + "initial_amplitude_scale");
        if (const json* v = find(*opt, "warm_start_file")) {
            job.warm_start_file = as_string(*v, w + "warm_start_file");
            if (!fs::exists(*job.warm_start_file))
                config_error(w + "warm_start_file", "file not found: " + *job.warm_start_file);
        }
    }
    json echo{{"m_operators", c.m_operators},
              {"bh_steps_per_cycle", c.bh_steps_per_cycle},
              {"bh_perturbation_scale", c.bh_perturbation_scale},
              {"bh_temperature", c.bh_temperature},
              {"discrete_temperature", c.discrete_temperature},
              {"discrete_decay", c.discrete_decay},
              {"max_macro_cycles", c.max_macro_cycles},
              {"grad_tolerance", c.grad_tolerance},
              {"energy_tolerance", c.energy_tolerance},
              {"rng_seed", c.rng_seed},
              {"restarts", c.restarts},
              {"threads", c.threads},
              {"relax_iterations", c.relax_iterations},
              {"coarse_grad_tolerance", c.coarse_grad_tolerance},
              {"coarse_iterations", c.coarse_iterations},
              {"initial_amplitude_scale", c.initial_amplitude_scale}};
    if (c.stop_energy) echo["stop_energy"] = *c.stop_energy;
    if (job.stop_error) echo["stop_error"] = *job.stop_error;
    if (job.warm_start_file) echo["warm_start_file"] = *job.warm_start_file;
    job.resolved["optimizer"] = std::move(echo);
}

void resolve_method_sections(const json& config, ResolvedJob& job) {
    if (const json* adapt = find(config, "adapt")) {
        check_keys(*adapt, "adapt", {"max_operators", "selection_tolerance"});
        if (const json* v = find(*adapt, "max_operators"))
            job.adapt_max_operators = as_count(*v, "adapt.max_operators");
        if (const json* v = find(*adapt, "selection_tolerance"))
            job.adapt_selection_tolerance = as_number(*v, "adapt.selection_tolerance");
    }
    if (job.method == "adapt") {
        if (job.adapt_max_operators == 0)
            config_error("adapt.max_operators", "required and positive for method \"adapt\"");
        job.resolved["adapt"] = {{"max_operators", job.adapt_max_operators},
                                 {"selection_tolerance", job.adapt_selection_tolerance}};
    }

    if (const json* replay = find(config, "replay")) {
        check_keys(*replay, "replay", {"ansatz", "relax"});
        if (const json* v = find(*replay, "ansatz"))
            job.replay_ansatz = as_string(*v, "replay.ansatz");
        if (const json* v = find(*replay, "relax")) job.replay_relax = as_bool(*v, "replay.relax");
    }
    if (job.method == "replay") {
        if (job.replay_ansatz.empty())
            config_error("replay.ansatz", "required for method \"replay\"");
        if (!fs::exists(job.replay_ansatz))
            config_error("replay.ansatz", "file not found: " + job.replay_ansatz);
        job.resolved["replay"] = {{"ansatz", job.replay_ansatz}, {"relax", job.replay_relax}};
    }
}

void resolve_cost_and_oracle(const json& config, ResolvedJob& job) {
    if (const json* cost = find(config, "cost_model")) {
        check_keys(*cost, "cost_model",
                   {"paired_double_cnots", "single_cnot_base", "single_cnot_per_z"});
        if (const json* v = find(*cost, "paired_double_cnots"))
            job.cost.paired_double_cnots = as_count(*v, "cost_model.paired_double_cnots");
        if (const json* v = find(*cost, "single_cnot_base"))
            job.cost.single_cnot_base = as_count(*v, "cost_model.single_cnot_base");
        if (const json* v = find(*cost, "single_cnot_per_z"))
            job.cost.single_cnot_per_z = as_count(*v, "cost_model.single_cnot_per_z");
    }
    job.resolved["cost_model"] = {{"paired_double_cnots", job.cost.paired_double_cnots},
                                  {"single_cnot_base", job.cost.single_cnot_base},
                                  {"single_cnot_per_z", job.cost.single_cnot_per_z}};

    if (const json* fci = find(config, "fci")) {
        check_keys(*fci, "fci",
                   {"enabled", "dense_cap", "iterative_cap", "residual_tolerance",
                    "max_iterations"});
        if (const json* v = find(*fci, "enabled")) job.fci_enabled = as_bool(*v, "fci.enabled");
        if (const json* v = find(*fci, "dense_cap"))
            job.oracle.dense_cap = as_count(*v, "fci.dense_cap");
        if (const json* v = find(*fci, "iterative_cap"))
            job.oracle.iterative_cap = as_count(*v, "fci.iterative_cap");
        if (const json* v = find(*fci, "residual_tolerance"))
            job.oracle.residual_tolerance = as_number(*v, "fci.residual_tolerance");
        if (const json* v = find(*fci, "max_iterations"))
            job.oracle.max_iterations = as_count(*v, "fci.max_iterations");
    }
    job.resolved["fci"] = {{"enabled", job.fci_enabled},
                           {"dense_cap", job.oracle.dense_cap},
                           {"iterative_cap", job.oracle.iterative_cap},
                           {"residual_tolerance", job.oracle.residual_tolerance},
                           {"max_iterations", job.oracle.max_iterations}};
}

ResolvedJob resolve_job(const json& config) {
    require_object(config, "top level");
    check_keys(config, "top level",
               {"system", "sector", "method", "optimizer", "adapt", "replay", "cost_model",
                "fci", "scan", "output"});
    ResolvedJob job;
    const json* method = find(config, "method");
    if (!method) config_error("method", "required");
    job.method = as_string(*method, "method");
    if (job.method != "disco" && job.method != "adapt" && job.method != "fci" &&
        job.method != "replay")
        config_error("method", "expected one of \"disco\", \"adapt\", \"fci\", \"replay\"");
    job.resolved["method"] = job.method;
    resolve_system(config, job);
    resolve_sector(config, job);
    resolve_optimizer(config, job);
    resolve_method_sections(config, job);
    resolve_cost_and_oracle(config, job);
    if (job.method == "fci" && !job.fci_enabled)
        config_error("fci.enabled", "cannot be false for method \"fci\"");
    if (job.stop_error && !job.fci_enabled)
        config_error("optimizer.stop_error", "requires the exact reference (fci.enabled)");
    validate(job.optimizer);
    return job;
}

// ---------------------------------------------------------------------------
// Execution.

struct BuiltSystem {
    FcidumpData integrals;
    std::optional<HubbardSystem> hubbard;  // holds lattice coefficients for observables
    std::string fingerprint_payload;       // content that identifies the exact problem
};

BuiltSystem build_system(const ResolvedJob& job) {
    BuiltSystem sys;
    if (job.from_fcidump) {
        const std::string bytes = read_file(job.fcidump_path);
        std::istringstream in(bytes);
        FcidumpData data = parse_fcidump(in);
        if (job.frozen > 0) data = freeze_core(data, job.frozen);
        sys.integrals = std::move(data);
        char tag[64];
        std::snprintf(tag, sizeof tag, "|frozen=%d", job.frozen);
        sys.fingerprint_payload = bytes + tag;
    } else {
        HubbardSystem hub = make_hubbard_system(job.hubbard, job.n_alpha + job.n_beta,
                                                job.n_alpha - job.n_beta, job.representation);
        sys.integrals = hub.integrals;
        sys.hubbard = std::move(hub);
        sys.fingerprint_payload = job.resolved["system"].dump();
    }
    return sys;
}

json spectrum_to_json(const SpectrumResult& r) {
    return {{"energy", r.ground_energy()},
            {"method", r.method},
            {"residual_norm", r.residual_norm},
            {"degenerate_ground", r.degenerate_ground},
            {"matvec_count", r.matvec_count}};
}

// Exact ground energies are cached beside the FCIDUMP under a content hash,
// so scans and repeated runs skip the eigensolve.
struct Reference {
    std::optional<double> energy;
    json details;  // method/residual or cache provenance, or the failure reason
};

fs::path cache_path(const std::string& fcidump_path) {
    return fs::path(fcidump_path + ".fcicache.json");
}

std::optional<double> cached_reference(const ResolvedJob& job, std::uint64_t hash) {
    if (!job.from_fcidump) return std::nullopt;
    const fs::path path = cache_path(job.fcidump_path);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json cache;
    try {
        in >> cache;
    } catch (const json::exception&) {
        return std::nullopt;
    }
    if (!cache.is_object()) return std::nullopt;
    const json* h = find(cache, "content_hash");
    const json* na = find(cache, "n_alpha");
    const json* nb = find(cache, "n_beta");
    const json* tol = find(cache, "residual_tolerance");
    const json* e = find(cache, "energy");
    if (!h || !na || !nb || !tol || !e || !h->is_number_unsigned() || !e->is_number())
        return std::nullopt;
    if (h->get<std::uint64_t>() != hash || na->get<int>() != job.n_alpha ||
        nb->get<int>() != job.n_beta)
        return std::nullopt;
    if (!tol->is_number() || tol->get<double>() > job.oracle.residual_tolerance)
        return std::nullopt;
    return e->get<double>();
}

void store_reference(const ResolvedJob& job, std::uint64_t hash, const SpectrumResult& r) {
    if (!job.from_fcidump) return;
    json cache{{"content_hash", hash},
               {"n_alpha", job.n_alpha},
               {"n_beta", job.n_beta},
               {"energy", r.ground_energy()},
               {"residual_tolerance", job.oracle.residual_tolerance},
               {"residual_norm", r.residual_norm},
               {"method", r.method}};
    write_text_atomic(cache_path(job.fcidump_path), cache.dump(2) + "\n");
}

Reference exact_reference(const ResolvedJob& job, const BuiltSystem& sys,
                          const SectorHamiltonian& h) {
    Reference ref;
    const std::uint64_t hash = fnv1a(sys.fingerprint_payload);
    if (const std::optional<double> cached = cached_reference(job, hash)) {
        ref.energy = *cached;
        ref.details = {{"source", "cache"}};
        return ref;
    }
    try {
        const SpectrumResult r = fci_ground_state(h, job.oracle);
        ref.energy = r.ground_energy();
        ref.details = spectrum_to_json(r);
        store_reference(job, hash, r);
    } catch (const std::exception& e) {
        ref.details = {{"error", e.what()}};
    }
    return ref;
}

json move_record_to_json(const MoveRecord& r) {
    return {{"cycle", r.cycle},
            {"move", r.move},
            {"candidates", r.candidates},
            {"energy_before", r.energy_before},
            {"energy_candidate", r.energy_candidate},
            {"accepted", r.accepted},
            {"uphill", r.uphill},
            {"energy_after", r.energy_after},
            {"best_energy", r.best_energy}};
}

void write_json_lines(const fs::path& path, const std::vector<json>& lines) {
    std::string text;
    for (const json& line : lines) {
        text += line.dump();
        text += '\n';
    }
    write_text_atomic(path, text);
}

struct MethodOutcome {
    double energy = 0.0;
    std::optional<Ansatz> ansatz;
    std::vector<double> state;
    json extra;                // method-specific summary fields
    std::vector<json> stream;  // moves.jsonl content
};

MethodOutcome run_fci_method(const ResolvedJob& job, const SectorHamiltonian& h) {
    MethodOutcome out;
    const SpectrumResult r = fci_ground_state(h, job.oracle);
    out.energy = r.ground_energy();
    out.state = r.ground_vector;
    out.extra = {{"fci", spectrum_to_json(r)}};
    return out;
}

MethodOutcome run_disco_method(const SectorHamiltonian& h, const PoolTables& tables,
                               const OptimizerConfig& config) {
    MethodOutcome out;
    const Biminimum bi = disco_vqe(h, tables, config);
    out.energy = bi.energy;
    out.ansatz = bi.ansatz;
    out.state = evaluate_state(bi.ansatz, tables);
    out.extra = {{"certified", bi.certified},
                 {"grad_norm", bi.grad_norm},
                 {"macro_cycles", bi.macro_cycles},
                 {"candidate_relaxations", bi.candidate_relaxations},
                 {"restart_index", bi.restart_index},
                 {"restart_energies", bi.restart_energies}};
    out.stream.reserve(bi.move_history.size());
    for (const MoveRecord& r : bi.move_history) out.stream.push_back(move_record_to_json(r));
    return out;
}

MethodOutcome run_adapt_method(const ResolvedJob& job, const SectorHamiltonian& h,
                               const PoolTables& tables) {
    MethodOutcome out;
    const AdaptResult ar = adapt_vqe(h, tables, job.adapt_max_operators,
                                     job.adapt_selection_tolerance, job.optimizer);
    out.energy = ar.energy_trace.back();
    out.ansatz = ar.ansatz;
    out.state = evaluate_state(ar.ansatz, tables);
    out.extra = {{"stagnated", ar.stagnated},
                 {"operators_added", ar.selections.size()},
                 {"energy_trace", ar.energy_trace}};
    for (std::size_t i = 0; i < ar.selections.size(); ++i)
        out.stream.push_back({{"step", i},
                              {"pool_index", ar.selections[i]},
                              {"operator", to_string(tables.pool().op(ar.selections[i]))},
                              {"energy", ar.energy_trace[i + 1]}});
    return out;
}

MethodOutcome run_replay_method(const ResolvedJob& job, const SectorHamiltonian& h,
                                const PoolTables& tables) {
    MethodOutcome out;
    Ansatz a = read_ansatz_file(job.replay_ansatz, tables);
    bool relax_converged = true;
    if (job.replay_relax) {
        const LocalMinimum m = local_minimize(a, h, tables, job.optimizer.grad_tolerance,
                                              job.optimizer.relax_iterations);
        a = m.ansatz;
        out.energy = m.energy;
        relax_converged = m.converged;
    } else {
        out.energy = energy(a, h, tables);
    }
    out.ansatz = a;
    out.state = evaluate_state(a, tables);
    out.extra = {{"replayed_from", job.replay_ansatz},
                 {"relaxed", job.replay_relax},
                 {"relax_converged", relax_converged}};
    return out;
}

json execute_job(const json& config, const fs::path& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    ResolvedJob job = resolve_job(config);
    const BuiltSystem sys = build_system(job);
    const int n = sys.integrals.n_orbitals;
    if (job.n_alpha > n || job.n_beta > n)
        config_error("sector", "electron count exceeds the orbital count");
    const SectorBasis basis = SectorBasis::build(n, job.n_alpha, job.n_beta);
    const SectorHamiltonian h = build_molecular_hamiltonian(sys.integrals, basis);

    Reference ref;
    if (job.fci_enabled && job.method != "fci") ref = exact_reference(job, sys, h);
    if (job.stop_error) {
        if (!ref.energy)
            throw std::runtime_error("config: optimizer.stop_error: exact reference unavailable");
        job.optimizer.stop_energy = *ref.energy + *job.stop_error;
    }

    MethodOutcome out;
    OperatorPool pool = OperatorPool::build(n);
    PoolTables tables(pool, basis);
    if (job.method == "fci") {
        out = run_fci_method(job, h);
    } else if (job.method == "disco") {
        if (job.warm_start_file) {
            job.optimizer.initial_ansatz = read_ansatz_file(*job.warm_start_file, tables);
            job.optimizer.m_operators = job.optimizer.initial_ansatz->size();
            job.resolved["optimizer"]["m_operators"] = job.optimizer.m_operators;
        }
        out = run_disco_method(h, tables, job.optimizer);
    } else if (job.method == "adapt") {
        out = run_adapt_method(job, h, tables);
    } else {
        out = run_replay_method(job, h, tables);
    }

    json summary{{"method", job.method},
                 {"config", job.resolved},
                 {"n_orbitals", n},
                 {"dimension", basis.size()},
                 {"energy", out.energy}};
    if (job.method == "fci") {
        summary["reference_energy"] = out.energy;
        summary["error_vs_reference"] = 0.0;
    } else if (ref.energy) {
        summary["reference_energy"] = *ref.energy;
        summary["error_vs_reference"] = out.energy - *ref.energy;
        summary["reference"] = ref.details;
    } else if (job.fci_enabled) {
        summary["reference"] = ref.details;
    }
    if (!out.state.empty()) {
        summary["s_squared"] = s_squared_expectation(out.state, basis);
        if (sys.hubbard)
            summary["double_occupancy"] =
                double_occupancy(out.state, basis, sys.hubbard->orbital_to_site);
    }
    if (out.ansatz) {
        summary["m_operators"] = out.ansatz->size();
        summary["cnot_count"] = cnot_count(*out.ansatz, pool, job.cost);
    }
    summary.update(out.extra);

    fs::create_directories(out_dir);
    if (out.ansatz) {
        std::ostringstream text;
        write_ansatz(text, *out.ansatz, tables);
        write_text_atomic(out_dir / "ansatz.txt", text.str());
    }
    if (!out.stream.empty()) write_json_lines(out_dir / "moves.jsonl", out.stream);
    const auto t1 = std::chrono::steady_clock::now();
    summary["wall_seconds"] = std::chrono::duration<double>(t1 - t0).count();
    write_text_atomic(out_dir / "summary.json", summary.dump(2) + "\n");
    return summary;
}

// ---------------------------------------------------------------------------
// Scans.

struct ScanPoint {
    std::string label;
    json overrides;  // fcidump path or u value
};

std::vector<ScanPoint> resolve_points(const json& scan, bool from_fcidump) {
    const json* points = find(scan, "points");
    if (!points || !points->is_array() || points->empty())
        config_error("scan.points", "a non-empty array is required");
    std::vector<ScanPoint> out;
    for (std::size_t i = 0; i < points->size(); ++i) {
        const json& p = (*points)[i];
        const std::string where = "scan.points[" + std::to_string(i) + "]";
        check_keys(p, where, {"label", "fcidump", "u"});
        const json* label = find(p, "label");
        if (!label) config_error(where, "label is required");
        ScanPoint point;
        point.label = as_string(*label, where + ".label");
        const json* fcidump = find(p, "fcidump");
        const json* u = find(p, "u");
        if (!!fcidump == !!u)
            config_error(where, "exactly one of 'fcidump' and 'u' must be given");
        if (fcidump) {
            if (!from_fcidump) config_error(where, "'fcidump' override needs an fcidump system");
            point.overrides["fcidump"] = as_string(*fcidump, where + ".fcidump");
        } else {
            if (from_fcidump) config_error(where, "'u' override needs a hubbard system");
            point.overrides["u"] = as_number(*u, where + ".u");
        }
        for (const ScanPoint& seen : out)
            if (seen.label == point.label) config_error(where, "duplicate label " + point.label);
        out.push_back(std::move(point));
    }
    return out;
}

std::string csv_field(const json& summary, const char* key) {
    const json* v = find(summary, key);
    if (!v) return "";
    if (v->is_boolean()) return v->get<bool>() ? "1" : "0";
    if (v->is_number_integer()) return std::to_string(v->get<std::int64_t>());
    if (v->is_number()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12e", v->get<double>());
        return buf;
    }
    if (v->is_string()) return v->get<std::string>();
    return v->dump();
}

}  // namespace

nlohmann::json load_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path.string());
    try {
        json config;
        in >> config;
        return config;
    } catch (const json::exception& e) {
        throw std::runtime_error("config file " + path.string() + ": " + e.what());
    }
}

nlohmann::json run_job(const nlohmann::json& config, const fs::path& out_dir) {
    if (config.contains("scan"))
        throw std::invalid_argument("config: scan: present, but this is a single-run invocation");
    return execute_job(config, out_dir);
}

nlohmann::json run_scan(const nlohmann::json& config, const fs::path& out_dir) {
    require_object(config, "top level");
    const json* scan = find(config, "scan");
    if (!scan) config_error("scan", "required for a scan invocation");
    check_keys(*scan, "scan", {"points", "warm_start"});
    bool warm_start = false;
    if (const json* v = find(*scan, "warm_start")) warm_start = as_bool(*v, "scan.warm_start");

    json job_template = config;
    job_template.erase("scan");
    const json* system = find(job_template, "system");
    if (!system) config_error("system", "required");
    require_object(*system, "system");
    const bool from_fcidump = system->contains("fcidump");
    const std::vector<ScanPoint> points = resolve_points(*scan, from_fcidump);
    {
        // Validate the template with the first point applied before any point
        // runs, so configuration errors surface immediately.
        json probe = job_template;
        if (const json* v = find(points.front().overrides, "fcidump"))
            probe["system"]["fcidump"] = *v;
        if (const json* v = find(points.front().overrides, "u"))
            probe["system"]["hubbard"]["u"] = *v;
        resolve_job(probe);
    }

    std::vector<json> rows;
    std::vector<double> errors;
    std::string previous_ansatz;
    std::size_t failures = 0;
    for (const ScanPoint& point : points) {
        json point_config = job_template;
        if (const json* v = find(point.overrides, "fcidump"))
            point_config["system"]["fcidump"] = *v;
        if (const json* v = find(point.overrides, "u")) point_config["system"]["hubbard"]["u"] = *v;
        if (warm_start && !previous_ansatz.empty()) {
            const std::string method = point_config["method"].get<std::string>();
            if (method == "disco")
                point_config["optimizer"]["warm_start_file"] = previous_ansatz;
            else if (method == "replay")
                point_config["replay"]["ansatz"] = previous_ansatz;
        }
        const fs::path point_dir = out_dir / point.label;
        json row{{"label", point.label}};
        try {
            const json summary = execute_job(point_config, point_dir);
            row["status"] = "ok";
            for (const char* key : {"energy", "reference_energy", "error_vs_reference",
                                    "s_squared", "double_occupancy", "cnot_count", "certified",
                                    "wall_seconds"})
                if (const json* v = find(summary, key)) row[key] = *v;
            if (const json* err = find(summary, "error_vs_reference"))
                errors.push_back(err->get<double>());
            if (fs::exists(point_dir / "ansatz.txt"))
                previous_ansatz = (point_dir / "ansatz.txt").string();
        } catch (const std::exception& e) {
            row["status"] = "failed";
            row["error_message"] = e.what();
            ++failures;
        }
        rows.push_back(std::move(row));
    }

    json result{{"config", config}, {"points", rows}, {"failed_points", failures}};
    if (!errors.empty()) {
        double lo = errors.front(), hi = errors.front();
        for (double e : errors) {
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        result["max_error"] = hi;
        result["min_error"] = lo;
        result["non_parallelity_error"] = hi - lo;
    }

    std::string csv =
        "label,status,energy,reference_energy,error_vs_reference,s_squared,"
        "double_occupancy,cnot_count,certified,wall_seconds\n";
    for (const json& row : rows) {
        csv += csv_field(row, "label");
        for (const char* key : {"status", "energy", "reference_energy", "error_vs_reference",
                                "s_squared", "double_occupancy", "cnot_count", "certified",
                                "wall_seconds"}) {
            csv += ',';
            csv += csv_field(row, key);
        }
        csv += '\n';
    }
    fs::create_directories(out_dir);
    write_text_atomic(out_dir / "scan.csv", csv);
    write_text_atomic(out_dir / "scan_summary.json", result.dump(2) + "\n");
    return result;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace disco
