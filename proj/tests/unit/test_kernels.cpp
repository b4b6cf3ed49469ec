// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <vector>

#include "disco/kernels.hpp"
#include "test_util.hpp"

using namespace disco;

namespace {

// Disjoint random index pairs covering part of [0, n).
void random_pairs(std::mt19937_64& rng, std::size_t n, std::size_t m,
                  std::vector<std::int32_t>& a, std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    a.assign(idx.begin(), idx.begin() + m);
    b.assign(idx.begin() + m, idx.begin() + 2 * m);
}

bool bit_identical(const std::vector<double>& x, const std::vector<double>& y) {
    return std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar backend basics") {
    const kernels::Backend& k = kernels::scalar_backend();
    const std::vector<double> x{1.0, 2.0, 3.0};
    std::vector<double> y{4.0, 5.0, 6.0};
    CHECK(k.dot(x.data(), y.data(), 3) == doctest::Approx(32.0));
    k.axpy(2.0, x.data(), y.data(), 3);
    CHECK(y == std::vector<double>{6.0, 9.0, 12.0});
    k.scale(0.5, y.data(), 3);
    CHECK(y == std::vector<double>{3.0, 4.5, 6.0});
}

TEST_CASE("rotation kernels preserve norm and invert") {
    std::mt19937_64 rng(7);
    const kernels::Backend& k = kernels::scalar_backend();
    const std::size_t n = 257;
    std::vector<std::int32_t> a, b;
    random_pairs(rng, n, 100, a, b);
    std::vector<double> x = testutil::random_vector(rng, n);
    const std::vector<double> orig = x;
    const double t = 0.37;
    k.rotate_pairs(a.data(), b.data(), a.size(), std::cos(t), std::sin(t), x.data());
    CHECK(testutil::norm(x) == doctest::Approx(testutil::norm(orig)).epsilon(1e-13));
    k.rotate_pairs(a.data(), b.data(), a.size(), std::cos(-t), std::sin(-t), x.data());
    CHECK(testutil::max_abs_diff(x, orig) < 1e-15);
}

TEST_CASE("pair_accumulate is the rotation generator") {
    std::mt19937_64 rng(11);
    const kernels::Backend& k = kernels::scalar_backend();
    const std::size_t n = 64;
    std::vector<std::int32_t> a, b;
    random_pairs(rng, n, 20, a, b);
    const std::vector<double> x = testutil::random_vector(rng, n);
    std::vector<double> y(n, 0.0);
    k.pair_accumulate(a.data(), b.data(), a.size(), 1.0, x.data(), y.data());
    // d/dt at t=0 of the rotation equals the generator action
    const double eps = 1e-7;
    std::vector<double> xp = x;
    k.rotate_pairs(a.data(), b.data(), a.size(), std::cos(eps), std::sin(eps), xp.data());
    for (std::size_t i = 0; i < n; ++i)
        CHECK((xp[i] - x[i]) / eps == doctest::Approx(y[i]).epsilon(1e-6));
}

TEST_CASE("csr_spmv matches a naive triple loop") {
    std::mt19937_64 rng(13);
    const std::size_t n = 93;
    std::vector<std::uint32_t> row_ptr{0};
    std::vector<std::uint32_t> col;
    std::vector<double> val;
    std::uniform_int_distribution<int> nnz_dist(0, 6);
    std::uniform_int_distribution<std::uint32_t> col_dist(0, n - 1);
    std::uniform_real_distribution<double> v_dist(-1.0, 1.0);
    for (std::size_t r = 0; r < n; ++r) {
        const int nnz = nnz_dist(rng);
        for (int i = 0; i < nnz; ++i) {
            col.push_back(col_dist(rng));
            val.push_back(v_dist(rng));
        }
        row_ptr.push_back(static_cast<std::uint32_t>(col.size()));
    }
    const std::vector<double> x = testutil::random_vector(rng, n);
    std::vector<double> want(n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::uint32_t kk = row_ptr[r]; kk < row_ptr[r + 1]; ++kk)
            want[r] += val[kk] * x[col[kk]];
    std::vector<double> got(n, -99.0);
    kernels::scalar_backend().csr_spmv(row_ptr.data(), col.data(), val.data(), n, x.data(),
                                       got.data());
    CHECK(testutil::max_abs_diff(want, got) < 1e-14);
}

TEST_CASE("avx2 backend agrees with scalar") {
    const kernels::Backend* avx2 = kernels::avx2_backend();
    if (!avx2) return;  // hardware without AVX2: dispatch covers the fallback
    const kernels::Backend& ref = kernels::scalar_backend();
    std::mt19937_64 rng(17);

    for (std::size_t n : {1ul, 4ul, 7ul, 64ul, 1001ul}) {
        const std::vector<double> x = testutil::random_vector(rng, n);
        const std::vector<double> y = testutil::random_vector(rng, n);

        // dot and axpy may fuse: rounding-level agreement
        CHECK(avx2->dot(x.data(), y.data(), n) ==
              doctest::Approx(ref.dot(x.data(), y.data(), n)).epsilon(1e-13));
        {
            std::vector<double> y1 = y, y2 = y;
            ref.axpy(0.77, x.data(), y1.data(), n);
            avx2->axpy(0.77, x.data(), y2.data(), n);
            CHECK(testutil::max_abs_diff(y1, y2) < 1e-14);
        }
        // scale is a pure product: bit-identical
        {
            std::vector<double> y1 = y, y2 = y;
            ref.scale(1.0 / 3.0, y1.data(), n);
            avx2->scale(1.0 / 3.0, y2.data(), n);
            CHECK(bit_identical(y1, y2));
        }
    }

    // rotate_pairs / pair_accumulate: bit-identical by contract
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 300;
        std::uniform_int_distribution<std::size_t> m_dist(0, n / 2);
        const std::size_t m = m_dist(rng);
        std::vector<std::int32_t> a, b;
        random_pairs(rng, n, m, a, b);
        const std::vector<double> x = testutil::random_vector(rng, n);
        const double c = std::cos(0.3 + trial), s = std::sin(0.3 + trial);
        {
            std::vector<double> x1 = x, x2 = x;
            ref.rotate_pairs(a.data(), b.data(), m, c, s, x1.data());
            avx2->rotate_pairs(a.data(), b.data(), m, c, s, x2.data());
            CHECK(bit_identical(x1, x2));
        }
        {
            std::vector<double> y1 = testutil::random_vector(rng, n);
            std::vector<double> y2 = y1;
            ref.pair_accumulate(a.data(), b.data(), m, 0.9, x.data(), y1.data());
            avx2->pair_accumulate(a.data(), b.data(), m, 0.9, x.data(), y2.data());
            CHECK(bit_identical(y1, y2));
        }
    }

    // csr_spmv rounding-level
    {
        const std::size_t n = 150;
        std::vector<std::uint32_t> row_ptr{0};
        std::vector<std::uint32_t> col;
        std::vector<double> val;
        std::uniform_int_distribution<int> nnz_dist(0, 9);
        std::uniform_int_distribution<std::uint32_t> col_dist(0, n - 1);
        for (std::size_t r = 0; r < n; ++r) {
            for (int i = 0; i < nnz_dist(rng); ++i) {
                col.push_back(col_dist(rng));
                val.push_back(0.1 * i - 0.2);
            }
            row_ptr.push_back(static_cast<std::uint32_t>(col.size()));
        }
        const std::vector<double> x = testutil::random_vector(rng, n);
        std::vector<double> y1(n), y2(n);
        ref.csr_spmv(row_ptr.data(), col.data(), val.data(), n, x.data(), y1.data());
        avx2->csr_spmv(row_ptr.data(), col.data(), val.data(), n, x.data(), y2.data());
        CHECK(testutil::max_abs_diff(y1, y2) < 1e-13);
    }
}

TEST_CASE("backend override hook") {
    const kernels::Backend& before = kernels::active();
    kernels::set_active(&kernels::scalar_backend());
    CHECK(std::string(kernels::active().name) == "scalar");
    kernels::set_active(nullptr);  // back to auto resolution
    CHECK(std::string(kernels::active().name) == std::string(before.name));
}
