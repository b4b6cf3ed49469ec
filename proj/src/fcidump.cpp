// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace disco {

void FcidumpData::allocate(int n) {
    n_orbitals = n;
    one_body.assign(static_cast<std::size_t>(n) * n, 0.0);
    two_body.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
}

void FcidumpData::set_h(int p, int q, double v) {
    one_body[static_cast<std::size_t>(p) * n_orbitals + q] = v;
    one_body[static_cast<std::size_t>(q) * n_orbitals + p] = v;
}

void FcidumpData::set_eri(int p, int q, int r, int s, double v) {
    const std::size_t n = static_cast<std::size_t>(n_orbitals);
    auto put = [&](int a, int b, int c, int d) {
        two_body[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d] = v;
    };
    put(p, q, r, s);
    put(q, p, r, s);
    put(p, q, s, r);
    put(q, p, s, r);
    put(r, s, p, q);
    put(s, r, p, q);
    put(r, s, q, p);
    put(s, r, q, p);
}

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("FCIDUMP line " + std::to_string(line_no) + ": " + what);
}

// Fortran-style reals may use D exponents.
bool parse_real(std::string tok, double& out) {
    for (char& c : tok)
        if (c == 'D' || c == 'd') c = 'E';
    const char* begin = tok.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0';
}

bool parse_int(const std::string& tok, long& out) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    out = std::strtol(begin, &end, 10);
    return end != begin && *end == '\0';
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

}  // namespace

FcidumpData parse_fcidump(std::istream& in) {
    FcidumpData data;
    std::string line;
    std::size_t line_no = 0;

    // Header namelist: read until &END (or / or $END), may span lines.
    std::string header;
    bool header_done = false;
    while (std::getline(in, line)) {
        ++line_no;
        header += " " + line;
        const std::string u = upper(line);
        if (u.find("&END") != std::string::npos || u.find("$END") != std::string::npos ||
            line.find('/') != std::string::npos) {
            header_done = true;
            break;
        }
    }
    if (!header_done) fail(line_no, "unterminated namelist header (missing &END or /)");

    {
        std::string u = upper(header);
        for (char& c : u)
            if (c == ',' || c == '=') c = ' ';
        std::istringstream hs(u);
        std::string tok;
        long norb = -1, nelec = -1, ms2 = 0;
        while (hs >> tok) {
            long* slot = nullptr;
            if (tok == "NORB")
                slot = &norb;
            else if (tok == "NELEC")
                slot = &nelec;
            else if (tok == "MS2")
                slot = &ms2;
            if (slot != nullptr) {
                std::string val;
                if (!(hs >> val)) fail(line_no, "missing value for " + tok);
                if (!parse_int(val, *slot)) fail(line_no, "non-numeric value for " + tok);
            }
        }
        if (norb < 1 || norb > 64) fail(line_no, "NORB missing or out of range [1, 64]");
        if (nelec < 0) fail(line_no, "NELEC missing");
        data.allocate(static_cast<int>(norb));
        data.n_electrons = static_cast<int>(nelec);
        data.ms2 = static_cast<int>(ms2);
        if ((data.n_electrons + data.ms2) % 2 != 0)
            fail(line_no, "NELEC and MS2 have incompatible parity");
    }

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string vtok;
        if (!(ls >> vtok)) continue;  // blank line
        double value = 0.0;
        if (!parse_real(vtok, value)) fail(line_no, "non-numeric integral value '" + vtok + "'");
        long idx[4];
        for (int k = 0; k < 4; ++k) {
            std::string t;
            if (!(ls >> t)) fail(line_no, "expected four orbital indices");
            if (!parse_int(t, idx[k])) fail(line_no, "non-numeric index '" + t + "'");
            if (idx[k] < 0 || idx[k] > data.n_orbitals)
                fail(line_no, "orbital index " + std::to_string(idx[k]) + " out of range");
        }
        const long i = idx[0], j = idx[1], k = idx[2], l = idx[3];
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            data.core_energy = value;
        } else if (k == 0 && l == 0) {
            if (i == 0 || j == 0) fail(line_no, "one-body integral with a zero index");
            data.set_h(static_cast<int>(i - 1), static_cast<int>(j - 1), value);
        } else if (i == 0 || j == 0 || k == 0 || l == 0) {
            fail(line_no, "two-body integral with a zero index");
        } else {
            data.set_eri(static_cast<int>(i - 1), static_cast<int>(j - 1),
                         static_cast<int>(k - 1), static_cast<int>(l - 1), value);
        }
    }
    return data;
}

FcidumpData parse_fcidump_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open FCIDUMP file: " + path);
    return parse_fcidump(in);
}

FcidumpData freeze_core(const FcidumpData& data, int n_frozen) {
    if (n_frozen == 0) return data;
    if (n_frozen < 0 || 2 * n_frozen > data.n_electrons)
        throw std::invalid_argument("freeze_core: n_frozen exceeds doubly occupied orbitals");
    if (n_frozen >= data.n_orbitals)
        throw std::invalid_argument("freeze_core: no active orbitals would remain");

    const int n_act = data.n_orbitals - n_frozen;
    FcidumpData out;
    out.allocate(n_act);
    out.n_electrons = data.n_electrons - 2 * n_frozen;
    out.ms2 = data.ms2;

    // Frozen-core energy: sum over frozen i of 2 h_ii plus the frozen-frozen
    // Coulomb-exchange interaction.
    double e_core = data.core_energy;
    for (int i = 0; i < n_frozen; ++i) {
        e_core += 2.0 * data.h(i, i);
        for (int j = 0; j < n_frozen; ++j)
            e_core += 2.0 * data.eri(i, i, j, j) - data.eri(i, j, j, i);
    }
    out.core_energy = e_core;

    // Active one-body integrals gain the frozen mean field.
    for (int p = 0; p < n_act; ++p)
        for (int q = p; q < n_act; ++q) {
            double v = data.h(p + n_frozen, q + n_frozen);
            for (int i = 0; i < n_frozen; ++i)
                v += 2.0 * data.eri(p + n_frozen, q + n_frozen, i, i) -
                     data.eri(p + n_frozen, i, i, q + n_frozen);
            out.set_h(p, q, v);
        }

    for (int p = 0; p < n_act; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r <= p; ++r)
                for (int s = 0; s <= (r == p ? q : r); ++s)
                    out.set_eri(p, q, r, s,
                                data.eri(p + n_frozen, q + n_frozen, r + n_frozen,
                                         s + n_frozen));
    return out;
}

}  // namespace disco
