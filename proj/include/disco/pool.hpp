// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace disco {

enum class OperatorKind : std::uint8_t { SpinAdaptedSingle = 0, PairedDouble = 1 };

/// One generator from the quadratic pool, canonicalised to p < q (the
/// amplitude sign covers the reverse direction).
///   SpinAdaptedSingle: same orbital rotation p->q applied to both channels.
///   PairedDouble:      moves the opposite-spin pair on p to q.
struct OperatorId {
    OperatorKind kind;
    std::uint8_t p;
    std::uint8_t q;

    friend constexpr bool operator==(const OperatorId&, const OperatorId&) = default;
};

std::string to_string(const OperatorId& op);

/// The discrete alphabet: all p < q pairs of both kinds, singles first, each
/// kind in lexicographic (p, q) order; size n(n-1).
class OperatorPool {
public:
    static OperatorPool build(int n_orbitals);

    /// Arbitrary operator list (test construction, reduced pools).
    static OperatorPool from_operators(int n_orbitals, std::vector<OperatorId> ops);

    std::size_t size() const noexcept { return ops_.size(); }
    const OperatorId& op(std::size_t i) const { return ops_[i]; }
    const std::vector<OperatorId>& operators() const noexcept { return ops_; }
    int n_orbitals() const noexcept { return n_orbitals_; }

    /// Position of op in the enumeration (closed form for built pools).
    std::size_t index_of(const OperatorId& op) const;

    /// FNV-1a over the operator encoding; stamped into serialised ansatz
    /// files so replays can detect pool mismatches.
    std::uint64_t fingerprint() const noexcept;

private:
    int n_orbitals_ = 0;
    std::vector<OperatorId> ops_;
};

}  // namespace disco
