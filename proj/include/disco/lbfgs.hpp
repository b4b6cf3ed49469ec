// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace disco {

// Objective callback: writes the gradient into `grad` (same length as `x`)
// and returns the function value.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsOptions {
    std::size_t memory = 8;
    std::size_t max_iterations = 400;
    double grad_tolerance = 1e-9;        // stop when the max-norm of the gradient drops below
    double sufficient_decrease = 1e-4;   // Armijo constant of the Wolfe line search
    double curvature = 0.9;              // strong curvature constant of the Wolfe line search
    std::size_t max_line_search = 60;    // objective evaluations per line search
};

void validate(const LbfgsOptions& options);

struct LbfgsResult {
    std::vector<double> x;
    double value = 0.0;
    std::vector<double> gradient;
    double grad_norm = 0.0;  // max-norm at the returned point
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

// Limited-memory BFGS with a strong-Wolfe line search. The value never
// increases across accepted steps; `converged` reports whether the gradient
// tolerance was met before the iteration cap.
LbfgsResult lbfgs_minimize(const Objective& objective, std::vector<double> start,
                           const LbfgsOptions& options = {});

}  // namespace disco
