// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

// AVX2 kernels. This TU is compiled with -mavx2 -mfma and is only entered
// after a runtime cpuid check. rotate_pairs / pair_accumulate use mul/add
// (never FMA) to stay bit-identical with the scalar reference; the reduction
// kernels use FMA and are equivalence-tested to rounding.

#include "disco/kernels.hpp"

#if defined(DISCO_HAVE_AVX2)

#include <immintrin.h>

namespace disco::kernels {

namespace {

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    alignas(32) double buf[4];
    _mm256_store_pd(buf, acc);
    double r = buf[0] + buf[1] + buf[2] + buf[3];
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

void rotate_pairs_avx2(const std::int32_t* a, const std::int32_t* b, std::size_t m,
                       double c, double s, double* x) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t k = 0;
    alignas(32) double na[4];
    alignas(32) double nb[4];
    for (; k + 4 <= m; k += 4) {
        const __m128i ia = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a + k));
        const __m128i ib = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + k));
        const __m256d xa = _mm256_i32gather_pd(x, ia, 8);
        const __m256d xb = _mm256_i32gather_pd(x, ib, 8);
        // mul/add only: keeps every backend bit-identical
        const __m256d ra = _mm256_sub_pd(_mm256_mul_pd(vc, xa), _mm256_mul_pd(vs, xb));
        const __m256d rb = _mm256_add_pd(_mm256_mul_pd(vs, xa), _mm256_mul_pd(vc, xb));
        _mm256_store_pd(na, ra);
        _mm256_store_pd(nb, rb);
        x[a[k + 0]] = na[0];
        x[a[k + 1]] = na[1];
        x[a[k + 2]] = na[2];
        x[a[k + 3]] = na[3];
        x[b[k + 0]] = nb[0];
        x[b[k + 1]] = nb[1];
        x[b[k + 2]] = nb[2];
        x[b[k + 3]] = nb[3];
    }
    for (; k < m; ++k) {
        const double xa = x[a[k]];
        const double xb = x[b[k]];
        x[a[k]] = c * xa - s * xb;
        x[b[k]] = s * xa + c * xb;
    }
}

void pair_accumulate_avx2(const std::int32_t* a, const std::int32_t* b, std::size_t m,
                          double w, const double* x, double* y) {
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t k = 0;
    alignas(32) double nb[4];
    alignas(32) double na[4];
    for (; k + 4 <= m; k += 4) {
        const __m128i ia = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a + k));
        const __m128i ib = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + k));
        const __m256d xa = _mm256_i32gather_pd(x, ia, 8);
        const __m256d xb = _mm256_i32gather_pd(x, ib, 8);
        const __m256d ya = _mm256_i32gather_pd(y, ia, 8);
        const __m256d yb = _mm256_i32gather_pd(y, ib, 8);
        _mm256_store_pd(nb, _mm256_add_pd(yb, _mm256_mul_pd(vw, xa)));
        _mm256_store_pd(na, _mm256_sub_pd(ya, _mm256_mul_pd(vw, xb)));
        y[b[k + 0]] = nb[0];
        y[b[k + 1]] = nb[1];
        y[b[k + 2]] = nb[2];
        y[b[k + 3]] = nb[3];
        y[a[k + 0]] = na[0];
        y[a[k + 1]] = na[1];
        y[a[k + 2]] = na[2];
        y[a[k + 3]] = na[3];
    }
    for (; k < m; ++k) {
        y[b[k]] += w * x[a[k]];
        y[a[k]] -= w * x[b[k]];
    }
}

void csr_spmv_avx2(const std::uint32_t* row_ptr, const std::uint32_t* col,
                   const double* val, std::size_t n_rows, const double* x, double* y) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::uint32_t lo = row_ptr[r];
        const std::uint32_t hi = row_ptr[r + 1];
        __m256d acc = _mm256_setzero_pd();
        std::uint32_t k = lo;
        for (; k + 4 <= hi; k += 4) {
            const __m128i ic = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + k));
            const __m256d xv = _mm256_i32gather_pd(x, ic, 8);
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(val + k), xv, acc);
        }
        alignas(32) double buf[4];
        _mm256_store_pd(buf, acc);
        double s = buf[0] + buf[1] + buf[2] + buf[3];
        for (; k < hi; ++k) s += val[k] * x[col[k]];
        y[r] = s;
    }
}

}  // namespace

const Backend* avx2_backend_impl() noexcept {
    static const Backend backend{
        "avx2",            dot_avx2,             axpy_avx2, scale_avx2,
        rotate_pairs_avx2, pair_accumulate_avx2, csr_spmv_avx2,
    };
    return &backend;
}

}  // namespace disco::kernels

#else

namespace disco::kernels {
const Backend* avx2_backend_impl() noexcept { return nullptr; }
}  // namespace disco::kernels

#endif  // DISCO_HAVE_AVX2
