// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/second_quant.hpp"

namespace disco {

namespace {

inline int crossings(const Determinant& d, int p, Spin spin) {
    int c = popcount(channel(d, spin) & mask_below(p));
    if (spin == Spin::Beta) c += popcount(d.alpha);
    return c;
}

}  // namespace

std::optional<SignedDet> annihilate(const SignedDet& in, int p, Spin spin) {
    const u64 occ = channel(in.det, spin);
    if (!test_bit(occ, p)) return std::nullopt;
    SignedDet out = in;
    if (crossings(in.det, p, spin) % 2 != 0) out.sign = -out.sign;
    channel(out.det, spin) = clear_bit(occ, p);
    return out;
}

std::optional<SignedDet> create(const SignedDet& in, int p, Spin spin) {
    const u64 occ = channel(in.det, spin);
    if (test_bit(occ, p)) return std::nullopt;
    SignedDet out = in;
    if (crossings(in.det, p, spin) % 2 != 0) out.sign = -out.sign;
    channel(out.det, spin) = set_bit(occ, p);
    return out;
}

}  // namespace disco
