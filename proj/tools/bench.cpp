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

// Serial vs OpenMP benchmark for the dense kernels and a few library
// level batch workloads. Usage: fgs-bench [repeats]

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include <omp.h>

#include "fgs/channels.hpp"
#include "fgs/glu_standard.hpp"
#include "fgs/jw_fock.hpp"
#include "fgs/kernels.hpp"
#include "fgs/matalg.hpp"

using namespace fgs;

namespace {

double time_ms(const std::function<void()> &fn, int repeats) {
    fn();  // warm up
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

void report(const char *name, double serial_ms, double parallel_ms) {
    std::printf("%-36s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char **argv) {
    int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
    std::printf("threads available: %d\n", omp_get_max_threads());
    std::printf("%-36s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    std::mt19937_64 rng(42);
    std::normal_distribution<double> g(0.0, 1.0);

    for (std::size_t n : {64u, 128u, 256u}) {
        std::vector<cplx> a(n * n), b(n * n), c(n * n);
        for (auto &x : a) x = cplx(g(rng), g(rng));
        for (auto &x : b) x = cplx(g(rng), g(rng));
        char name[64];
        std::snprintf(name, sizeof name, "complex matmul %zux%zu", n, n);
        double ts = time_ms(
            [&] { matmul_cc_serial(a.data(), b.data(), c.data(), n, n, n); }, repeats);
        double tp = time_ms(
            [&] { matmul_cc_parallel(a.data(), b.data(), c.data(), n, n, n); },
            repeats);
        report(name, ts, tp);
    }

    {
        // Gaussianity commutator norm at n = 4 (dim 16, doubled 256).
        std::size_t n = 4, d = 16;
        CMat x = CMat::identity(d);
        std::mt19937_64 r2(7);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if ((std::popcount(i) + std::popcount(j)) % 2 == 0)
                    x(i, j) += 0.1 * cplx(g(r2), g(r2));
        std::vector<CMat> cx, xc;
        std::vector<const cplx *> as, cs;
        for (std::size_t i = 1; i <= 2 * n; ++i) {
            cx.push_back(majorana_left(i, n, x));
            xc.push_back(majorana_right(x, i, n));
        }
        for (std::size_t i = 0; i < 2 * n; ++i) {
            as.push_back(cx[i].data());
            cs.push_back(xc[i].data());
        }
        double ts = time_ms(
            [&] {
                kron_diff_norm_sq_serial(as.data(), as.data(), cs.data(), cs.data(),
                                         2 * n, d);
            },
            repeats);
        double tp = time_ms(
            [&] {
                kron_diff_norm_sq_parallel(as.data(), as.data(), cs.data(), cs.data(),
                                           2 * n, d);
            },
            repeats);
        report("commutator norm (n = 4)", ts, tp);
    }

    {
        // Batch of Pfaffians, parallelized at the batch level.
        std::vector<RMat> mats;
        std::mt19937_64 r3(11);
        std::normal_distribution<double> gg(0.0, 1.0);
        for (int k = 0; k < 2000; ++k) {
            RMat m(12, 12);
            for (std::size_t i = 0; i < 12; ++i)
                for (std::size_t j = i + 1; j < 12; ++j) {
                    m(i, j) = gg(r3);
                    m(j, i) = -m(i, j);
                }
            mats.push_back(std::move(m));
        }
        std::vector<double> out(mats.size());
        double ts = time_ms(
            [&] {
                for (std::size_t k = 0; k < mats.size(); ++k)
                    out[k] = pfaffian(mats[k]);
            },
            repeats);
        double tp = time_ms(
            [&] {
#pragma omp parallel for schedule(static)
                for (long k = 0; k < (long)mats.size(); ++k)
                    out[k] = pfaffian(mats[k]);
            },
            repeats);
        report("2000 pfaffians dim 12 (batch)", ts, tp);
    }

    {
        // Batch of standard forms.
        std::mt19937_64 r4(13);
        std::vector<CovarianceMatrix> cms;
        for (int k = 0; k < 400; ++k) cms.push_back(random_cm(4, r4, false));
        std::vector<double> out(cms.size());
        double ts = time_ms(
            [&] {
                for (std::size_t k = 0; k < cms.size(); ++k)
                    out[k] = frobenius_norm(standard_form(cms[k]).s_gamma.gamma());
            },
            repeats);
        double tp = time_ms(
            [&] {
#pragma omp parallel for schedule(dynamic)
                for (long k = 0; k < (long)cms.size(); ++k)
                    out[k] = frobenius_norm(standard_form(cms[k]).s_gamma.gamma());
            },
            repeats);
        report("400 standard forms (batch)", ts, tp);
    }

    return 0;
}
