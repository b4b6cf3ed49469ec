// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "disco/determinant.hpp"

namespace disco {

/// Determinant with an accumulated fermionic sign, threaded through
/// elementary operator strings.
struct SignedDet {
    Determinant det;
    int sign = +1;
};

/// Elementary annihilation a_{p sigma}. Sign convention: spin orbitals are
/// ordered all alpha (ascending spatial index) then all beta, so a beta
/// operator crosses every occupied alpha orbital.
std::optional<SignedDet> annihilate(const SignedDet& in, int p, Spin spin);

/// Elementary creation a^dag_{p sigma}, same convention.
std::optional<SignedDet> create(const SignedDet& in, int p, Spin spin);

}  // namespace disco
