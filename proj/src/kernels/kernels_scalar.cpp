// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

// Reference kernels. This translation unit is compiled with fp-contract off
// so rotate_pairs / pair_accumulate are plain IEEE mul/add sequences that the
// SIMD backends reproduce exactly.

#include "disco/kernels.hpp"

namespace disco::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void rotate_pairs_scalar(const std::int32_t* a, const std::int32_t* b, std::size_t m,
                         double c, double s, double* x) {
    for (std::size_t k = 0; k < m; ++k) {
        const double xa = x[a[k]];
        const double xb = x[b[k]];
        x[a[k]] = c * xa - s * xb;
        x[b[k]] = s * xa + c * xb;
    }
}

void pair_accumulate_scalar(const std::int32_t* a, const std::int32_t* b, std::size_t m,
                            double w, const double* x, double* y) {
    for (std::size_t k = 0; k < m; ++k) {
        y[b[k]] += w * x[a[k]];
        y[a[k]] -= w * x[b[k]];
    }
}

void csr_spmv_scalar(const std::uint32_t* row_ptr, const std::uint32_t* col,
                     const double* val, std::size_t n_rows, const double* x, double* y) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        double acc = 0.0;
        for (std::uint32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += val[k] * x[col[k]];
        y[r] = acc;
    }
}

}  // namespace

const Backend& scalar_backend() noexcept {
    static const Backend backend{
        "scalar",            dot_scalar,             axpy_scalar, scale_scalar,
        rotate_pairs_scalar, pair_accumulate_scalar, csr_spmv_scalar,
    };
    return backend;
}

}  // namespace disco::kernels
