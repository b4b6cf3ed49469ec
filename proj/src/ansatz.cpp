// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/ansatz.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "disco/kernels.hpp"

namespace disco {

void validate_ansatz(const Ansatz& ansatz, const PoolTables& tables) {
    if (ansatz.sequence.size() != ansatz.amplitudes.size())
        throw std::invalid_argument("ansatz: sequence/amplitude length mismatch");
    if (ansatz.reference >= tables.dim())
        throw std::invalid_argument("ansatz: reference index out of range");
    for (std::size_t k : ansatz.sequence)
        if (k >= tables.pool().size())
            throw std::invalid_argument("ansatz: operator index out of range");
    for (double t : ansatz.amplitudes)
        if (!std::isfinite(t)) throw std::invalid_argument("ansatz: non-finite amplitude");
}

void evaluate_state(const Ansatz& ansatz, const PoolTables& tables, std::span<double> out) {
    validate_ansatz(ansatz, tables);
    if (out.size() != tables.dim())
        throw std::invalid_argument("evaluate_state: output dimension mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    out[ansatz.reference] = 1.0;
    for (std::size_t i = 0; i < ansatz.size(); ++i)
        tables.apply_exponential(ansatz.sequence[i], ansatz.amplitudes[i], out);
}

std::vector<double> evaluate_state(const Ansatz& ansatz, const PoolTables& tables) {
    std::vector<double> out(tables.dim());
    evaluate_state(ansatz, tables, out);
    return out;
}

double energy(const Ansatz& ansatz, const SectorHamiltonian& h, const PoolTables& tables) {
    if (h.dim() != tables.dim())
        throw std::invalid_argument("energy: Hamiltonian/basis dimension mismatch");
    const std::vector<double> psi = evaluate_state(ansatz, tables);
    return h.expectation(psi);
}

double energy_and_gradient(const Ansatz& ansatz, const SectorHamiltonian& h,
                           const PoolTables& tables, std::span<double> gradient,
                           AnsatzWorkspace& ws) {
    if (h.dim() != tables.dim())
        throw std::invalid_argument("energy_and_gradient: dimension mismatch");
    if (gradient.size() != ansatz.size())
        throw std::invalid_argument("energy_and_gradient: gradient length mismatch");
    const std::size_t dim = tables.dim();
    ws.psi.resize(dim);
    ws.sigma.resize(dim);
    ws.kpsi.resize(dim);
    evaluate_state(ansatz, tables, ws.psi);
    h.apply(ws.psi, ws.sigma);
    const double e =
        kernels::active().dot(ws.psi.data(), ws.sigma.data(), dim) + h.core_energy();
    for (std::size_t i = ansatz.size(); i-- > 0;) {
        const std::size_t op = ansatz.sequence[i];
        tables.apply_generator(op, ws.psi, ws.kpsi);
        gradient[i] = 2.0 * kernels::active().dot(ws.sigma.data(), ws.kpsi.data(), dim);
        tables.apply_exponential(op, -ansatz.amplitudes[i], ws.psi);
        tables.apply_exponential(op, -ansatz.amplitudes[i], ws.sigma);
    }
    return e;
}

EnergyGradient energy_and_gradient(const Ansatz& ansatz, const SectorHamiltonian& h,
                                   const PoolTables& tables) {
    EnergyGradient out;
    out.gradient.resize(ansatz.size());
    AnsatzWorkspace ws;
    out.energy = energy_and_gradient(ansatz, h, tables, out.gradient, ws);
    return out;
}

std::vector<double> candidate_gradients(std::span<const double> psi,
                                        std::span<const double> sigma,
                                        const PoolTables& tables) {
    if (psi.size() != tables.dim() || sigma.size() != tables.dim())
        throw std::invalid_argument("candidate_gradients: dimension mismatch");
    std::vector<double> out(tables.pool().size());
    std::vector<double> kpsi(tables.dim());
    for (std::size_t k = 0; k < out.size(); ++k) {
        tables.apply_generator(k, psi, kpsi);
        out[k] = 2.0 * kernels::active().dot(sigma.data(), kpsi.data(), kpsi.size());
    }
    return out;
}

namespace {

constexpr const char* kFormatTag = "ups-ansatz v1";

const char* kind_name(OperatorKind k) {
    return k == OperatorKind::SpinAdaptedSingle ? "single" : "pair";
}

std::string format_amplitude(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", t);
    return buf;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << "ansatz file line " << line << ": " << what;
    throw std::runtime_error(msg.str());
}

std::string next_line(std::istream& in, std::size_t& line_no) {
    std::string line;
    if (!std::getline(in, line)) fail(line_no + 1, "unexpected end of file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

long long parse_integer(const std::string& tok, std::size_t line_no) {
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0') fail(line_no, "expected integer, got '" + tok + "'");
    return v;
}

unsigned long long header_field(std::istream& in, std::size_t& line_no, const std::string& key,
                                int base = 10) {
    const std::string line = next_line(in, line_no);
    std::istringstream ss(line);
    std::string k, v, extra;
    if (!(ss >> k >> v) || (ss >> extra) || k != key)
        fail(line_no, "expected '" + key + " <value>'");
    if (v.empty() || v[0] == '-') fail(line_no, "bad value for " + key);
    char* end = nullptr;
    const unsigned long long out = std::strtoull(v.c_str(), &end, base);
    if (end == v.c_str() || *end != '\0') fail(line_no, "bad value for " + key);
    return out;
}

}  // namespace

void write_ansatz(std::ostream& out, const Ansatz& ansatz, const PoolTables& tables) {
    validate_ansatz(ansatz, tables);
    const SectorBasis& basis = tables.basis();
    char fp[32];
    std::snprintf(fp, sizeof(fp), "%016llx",
                  static_cast<unsigned long long>(tables.pool().fingerprint()));
    out << kFormatTag << '\n'
        << "n_orbitals " << basis.n_orbitals() << '\n'
        << "n_alpha " << basis.n_alpha() << '\n'
        << "n_beta " << basis.n_beta() << '\n'
        << "pool_fingerprint " << fp << '\n'
        << "reference " << ansatz.reference << '\n'
        << "operators " << ansatz.size() << '\n';
    for (std::size_t i = 0; i < ansatz.size(); ++i) {
        const OperatorId& op = tables.pool().op(ansatz.sequence[i]);
        out << kind_name(op.kind) << ' ' << int(op.p) << ' ' << int(op.q) << ' '
            << format_amplitude(ansatz.amplitudes[i]) << '\n';
    }
    if (!out) throw std::runtime_error("write_ansatz: stream write failed");
}

Ansatz read_ansatz(std::istream& in, const PoolTables& tables) {
    std::size_t line_no = 0;
    if (next_line(in, line_no) != kFormatTag) fail(line_no, "bad format tag");
    const SectorBasis& basis = tables.basis();
    const auto expect = [&](const char* key, unsigned long long want, int base = 10) {
        const unsigned long long got = header_field(in, line_no, key, base);
        if (got != want) {
            std::ostringstream msg;
            msg << key << " mismatch: file has " << got << ", expected " << want;
            fail(line_no, msg.str());
        }
    };
    expect("n_orbitals", basis.n_orbitals());
    expect("n_alpha", basis.n_alpha());
    expect("n_beta", basis.n_beta());
    expect("pool_fingerprint", tables.pool().fingerprint(), 16);

    Ansatz ansatz;
    const unsigned long long ref = header_field(in, line_no, "reference");
    if (ref >= basis.size()) fail(line_no, "reference index out of range");
    ansatz.reference = static_cast<std::size_t>(ref);
    const unsigned long long count = header_field(in, line_no, "operators");
    if (count > 1000000) fail(line_no, "implausible operator count");

    for (unsigned long long i = 0; i < count; ++i) {
        const std::string line = next_line(in, line_no);
        std::istringstream ss(line);
        std::string kind, ps, qs, ts, extra;
        if (!(ss >> kind >> ps >> qs >> ts) || (ss >> extra))
            fail(line_no, "expected 'kind p q amplitude'");
        OperatorId op{};
        if (kind == "single")
            op.kind = OperatorKind::SpinAdaptedSingle;
        else if (kind == "pair")
            op.kind = OperatorKind::PairedDouble;
        else
            fail(line_no, "unknown operator kind '" + kind + "'");
        const long long p = parse_integer(ps, line_no);
        const long long q = parse_integer(qs, line_no);
        if (p < 0 || q <= p || q >= basis.n_orbitals())
            fail(line_no, "orbital pair out of range");
        op.p = static_cast<std::uint8_t>(p);
        op.q = static_cast<std::uint8_t>(q);
        std::size_t index = 0;
        try {
            index = tables.pool().index_of(op);
        } catch (const std::exception&) {
            fail(line_no, "operator not in pool: " + to_string(op));
        }
        char* end = nullptr;
        const double t = std::strtod(ts.c_str(), &end);
        if (end == ts.c_str() || *end != '\0' || !std::isfinite(t))
            fail(line_no, "bad amplitude '" + ts + "'");
        ansatz.sequence.push_back(index);
        ansatz.amplitudes.push_back(t);
    }
    std::string tail;
    while (std::getline(in, tail)) {
        if (!tail.empty() && tail.back() == '\r') tail.pop_back();
        if (!tail.empty()) fail(line_no + 1, "trailing content after operator records");
        ++line_no;
    }
    return ansatz;
}

void write_ansatz_file(const std::string& path, const Ansatz& ansatz,
                       const PoolTables& tables) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_ansatz_file: cannot open " + path);
    write_ansatz(out, ansatz, tables);
}

Ansatz read_ansatz_file(const std::string& path, const PoolTables& tables) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_ansatz_file: cannot open " + path);
    return read_ansatz(in, tables);
}

}  // namespace disco
