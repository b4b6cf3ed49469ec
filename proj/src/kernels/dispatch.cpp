// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "disco/kernels.hpp"

namespace disco::kernels {

const Backend* avx2_backend_impl() noexcept;  // defined in kernels_avx2.cpp

namespace {

bool cpu_has_avx2() noexcept {
#if defined(DISCO_HAVE_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend* resolve() noexcept {
    const char* pref = std::getenv("DISCO_KERNELS");
    if (pref != nullptr && std::strcmp(pref, "scalar") == 0) return &scalar_backend();
    if (pref != nullptr && std::strcmp(pref, "avx2") == 0) {
        const Backend* b = avx2_backend();
        if (b != nullptr) return b;
        // Requested SIMD unavailable: fall back rather than abort; the
        // active backend name is recorded in every result file.
        return &scalar_backend();
    }
    if (const Backend* b = avx2_backend(); b != nullptr) return b;
    return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend* avx2_backend() noexcept {
    return cpu_has_avx2() ? avx2_backend_impl() : nullptr;
}

const Backend& active() noexcept {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (b == nullptr) {
        b = resolve();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

void set_active(const Backend* backend) noexcept {
    g_active.store(backend, std::memory_order_release);
}

}  // namespace disco::kernels
