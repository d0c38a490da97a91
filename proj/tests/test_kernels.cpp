/*
 * Copyright 2026 The fgs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <random>
#include <vector>

#include "fgs/kernels.hpp"

using namespace fgs;

TEST_SUITE_BEGIN("kernels");

namespace {
std::vector<double> random_reals(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(n);
    for (auto &x : v) x = g(rng);
    return v;
}

std::vector<cplx> random_cplx(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto &x : v) x = cplx(g(rng), g(rng));
    return v;
}
}  // namespace

TEST_CASE("serial and parallel matmul are bit-identical") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {5u, 17u, 64u}) {
        auto a = random_reals(n * n, rng), b = random_reals(n * n, rng);
        std::vector<double> c1(n * n), c2(n * n);
        matmul_rr_serial(a.data(), b.data(), c1.data(), n, n, n);
        matmul_rr_parallel(a.data(), b.data(), c2.data(), n, n, n);
        CHECK(c1 == c2);  // row-split keeps per-element order identical

        auto ca = random_cplx(n * n, rng), cb = random_cplx(n * n, rng);
        std::vector<cplx> cc1(n * n), cc2(n * n);
        matmul_cc_serial(ca.data(), cb.data(), cc1.data(), n, n, n);
        matmul_cc_parallel(ca.data(), cb.data(), cc2.data(), n, n, n);
        CHECK(cc1 == cc2);
    }
}

TEST_CASE("serial and parallel kron accumulate identically") {
    std::mt19937_64 rng(5);
    std::size_t d = 8;
    auto a = random_cplx(d * d, rng), b = random_cplx(d * d, rng);
    std::vector<cplx> c1(d * d * d * d, cplx(0.5, -0.5));
    std::vector<cplx> c2 = c1;
    kron_acc_cc_serial(a.data(), d, d, b.data(), d, d, c1.data());
    kron_acc_cc_parallel(a.data(), d, d, b.data(), d, d, c2.data());
    CHECK(c1 == c2);
}

TEST_CASE("reduction kernels agree within round-off") {
    std::mt19937_64 rng(7);
    auto v = random_reals(100003, rng);
    double s1 = frobenius_sq_serial(v.data(), v.size());
    double s2 = frobenius_sq_parallel(v.data(), v.size());
    CHECK(s1 == doctest::Approx(s2).epsilon(1e-13));

    auto cv = random_cplx(50001, rng);
    double cs1 = frobenius_sq_serial(cv.data(), cv.size());
    double cs2 = frobenius_sq_parallel(cv.data(), cv.size());
    CHECK(cs1 == doctest::Approx(cs2).epsilon(1e-13));
}

TEST_CASE("kron difference norm matches the materialized computation") {
    std::mt19937_64 rng(11);
    std::size_t d = 6, terms = 5;
    std::vector<std::vector<cplx>> as, bs, cs, ds;
    std::vector<const cplx *> ap, bp, cp, dp;
    for (std::size_t t = 0; t < terms; ++t) {
        as.push_back(random_cplx(d * d, rng));
        bs.push_back(random_cplx(d * d, rng));
        cs.push_back(random_cplx(d * d, rng));
        ds.push_back(random_cplx(d * d, rng));
    }
    for (std::size_t t = 0; t < terms; ++t) {
        ap.push_back(as[t].data());
        bp.push_back(bs[t].data());
        cp.push_back(cs[t].data());
        dp.push_back(ds[t].data());
    }

    // Reference: build sum kron(A,B) - kron(C,D) densely.
    std::vector<cplx> big(d * d * d * d, cplx(0));
    for (std::size_t t = 0; t < terms; ++t) {
        kron_acc_cc_serial(as[t].data(), d, d, bs[t].data(), d, d, big.data());
        std::vector<cplx> neg(d * d);
        for (std::size_t i = 0; i < d * d; ++i) neg[i] = -cs[t][i];
        kron_acc_cc_serial(neg.data(), d, d, ds[t].data(), d, d, big.data());
    }
    double want = frobenius_sq_serial(big.data(), big.size());

    double got_s = kron_diff_norm_sq_serial(ap.data(), bp.data(), cp.data(),
                                            dp.data(), terms, d);
    double got_p = kron_diff_norm_sq_parallel(ap.data(), bp.data(), cp.data(),
                                              dp.data(), terms, d);
    CHECK(got_s == doctest::Approx(want).epsilon(1e-12));
    CHECK(got_p == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("exec mode override reaches both paths") {
    std::mt19937_64 rng(13);
    std::size_t n = 12;
    auto a = random_reals(n * n, rng), b = random_reals(n * n, rng);
    std::vector<double> c1(n * n), c2(n * n);
    set_exec_mode(ExecMode::Serial);
    matmul_rr(a.data(), b.data(), c1.data(), n, n, n);
    set_exec_mode(ExecMode::Parallel);
    matmul_rr(a.data(), b.data(), c2.data(), n, n, n);
    set_exec_mode(ExecMode::Auto);
    CHECK(c1 == c2);
}

TEST_SUITE_END();
