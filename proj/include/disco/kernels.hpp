// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

namespace disco::kernels {

// Data-parallel inner loops on state vectors. Scalar reference kernels and
// SIMD variants share one signature table; the active backend is chosen once
// at runtime (cpuid, overridable via DISCO_KERNELS=scalar|avx2|auto).
//
// rotate_pairs / pair_accumulate are specified as plain mul/add sequences
// (no fused contraction) so every backend produces bit-identical output;
// dot and csr_spmv may reorder/fuse their reductions and agree only to
// rounding.
//
// rotate_pairs:    for each k: (x[a], x[b]) <- (c*x[a] - s*x[b], s*x[a] + c*x[b])
// pair_accumulate: for each k: y[b] += w*x[a]; y[a] -= w*x[b]
// Index pairs within one call must be pairwise disjoint.
struct Backend {
    const char* name;
    double (*dot)(const double* x, const double* y, std::size_t n);
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    void (*scale)(double a, double* x, std::size_t n);
    void (*rotate_pairs)(const std::int32_t* a, const std::int32_t* b, std::size_t m,
                         double c, double s, double* x);
    void (*pair_accumulate)(const std::int32_t* a, const std::int32_t* b, std::size_t m,
                            double w, const double* x, double* y);
    void (*csr_spmv)(const std::uint32_t* row_ptr, const std::uint32_t* col,
                     const double* val, std::size_t n_rows, const double* x, double* y);
};

const Backend& scalar_backend() noexcept;

/// AVX2+FMA backend, or nullptr when the build or the CPU lacks support.
const Backend* avx2_backend() noexcept;

/// Active backend. First call resolves DISCO_KERNELS and cpuid; later calls
/// are a plain load.
const Backend& active() noexcept;

/// Override the active backend (tests). Pass nullptr to re-resolve lazily.
void set_active(const Backend* backend) noexcept;

}  // namespace disco::kernels
