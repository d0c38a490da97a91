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

#include "fgs/kernels.hpp"

#include <atomic>
#include <vector>

namespace fgs {

namespace {
std::atomic<ExecMode> g_mode{ExecMode::Auto};

inline bool go_parallel(std::size_t work) {
    ExecMode m = g_mode.load(std::memory_order_relaxed);
    if (m == ExecMode::Serial) return false;
    if (m == ExecMode::Parallel) return true;
    return work >= kParallelThreshold;
}

template <typename T>
inline void matmul_rows(const T *a, const T *b, T *c, std::size_t k,
                        std::size_t n, std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
        T *ci = c + i * n;
        for (std::size_t j = 0; j < n; ++j) ci[j] = T(0);
        const T *ai = a + i * k;
        for (std::size_t l = 0; l < k; ++l) {
            T av = ai[l];
            const T *bl = b + l * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += av * bl[j];
        }
    }
}
}  // namespace

void set_exec_mode(ExecMode mode) { g_mode.store(mode, std::memory_order_relaxed); }
ExecMode exec_mode() { return g_mode.load(std::memory_order_relaxed); }

void matmul_rr_serial(const double *a, const double *b, double *c,
                      std::size_t m, std::size_t k, std::size_t n) {
    matmul_rows(a, b, c, k, n, 0, m);
}

void matmul_rr_parallel(const double *a, const double *b, double *c,
                        std::size_t m, std::size_t k, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < (long)m; ++i)
        matmul_rows(a, b, c, k, n, (std::size_t)i, (std::size_t)i + 1);
}

void matmul_rr(const double *a, const double *b, double *c, std::size_t m,
               std::size_t k, std::size_t n) {
    if (go_parallel(m * k * n))
        matmul_rr_parallel(a, b, c, m, k, n);
    else
        matmul_rr_serial(a, b, c, m, k, n);
}

void matmul_cc_serial(const cplx *a, const cplx *b, cplx *c, std::size_t m,
                      std::size_t k, std::size_t n) {
    matmul_rows(a, b, c, k, n, 0, m);
}

void matmul_cc_parallel(const cplx *a, const cplx *b, cplx *c, std::size_t m,
                        std::size_t k, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < (long)m; ++i)
        matmul_rows(a, b, c, k, n, (std::size_t)i, (std::size_t)i + 1);
}

void matmul_cc(const cplx *a, const cplx *b, cplx *c, std::size_t m,
               std::size_t k, std::size_t n) {
    if (go_parallel(4 * m * k * n))
        matmul_cc_parallel(a, b, c, m, k, n);
    else
        matmul_cc_serial(a, b, c, m, k, n);
}

namespace {
inline void kron_block(const cplx *a, std::size_t na, const cplx *b,
                       std::size_t mb, std::size_t nb, cplx *c,
                       std::size_t ldc, std::size_t ia) {
    for (std::size_t ja = 0; ja < na; ++ja) {
        cplx av = a[ia * na + ja];
        if (av == cplx(0)) continue;
        for (std::size_t ib = 0; ib < mb; ++ib) {
            cplx *crow = c + (ia * mb + ib) * ldc + ja * nb;
            const cplx *brow = b + ib * nb;
            for (std::size_t jb = 0; jb < nb; ++jb) crow[jb] += av * brow[jb];
        }
    }
}
}  // namespace

void kron_acc_cc_serial(const cplx *a, std::size_t ma, std::size_t na,
                        const cplx *b, std::size_t mb, std::size_t nb,
                        cplx *c) {
    for (std::size_t ia = 0; ia < ma; ++ia)
        kron_block(a, na, b, mb, nb, c, na * nb, ia);
}

void kron_acc_cc_parallel(const cplx *a, std::size_t ma, std::size_t na,
                          const cplx *b, std::size_t mb, std::size_t nb,
                          cplx *c) {
#pragma omp parallel for schedule(static)
    for (long ia = 0; ia < (long)ma; ++ia)
        kron_block(a, na, b, mb, nb, c, na * nb, (std::size_t)ia);
}

void kron_acc_cc(const cplx *a, std::size_t ma, std::size_t na, const cplx *b,
                 std::size_t mb, std::size_t nb, cplx *c) {
    if (go_parallel(4 * ma * na * mb * nb))
        kron_acc_cc_parallel(a, ma, na, b, mb, nb, c);
    else
        kron_acc_cc_serial(a, ma, na, b, mb, nb, c);
}

double frobenius_sq_serial(const double *a, std::size_t len) {
    double s = 0;
    for (std::size_t i = 0; i < len; ++i) s += a[i] * a[i];
    return s;
}

double frobenius_sq_parallel(const double *a, std::size_t len) {
    double s = 0;
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (long i = 0; i < (long)len; ++i) s += a[i] * a[i];
    return s;
}

double frobenius_sq(const double *a, std::size_t len) {
    return go_parallel(len) ? frobenius_sq_parallel(a, len)
                            : frobenius_sq_serial(a, len);
}

double frobenius_sq_serial(const cplx *a, std::size_t len) {
    double s = 0;
    for (std::size_t i = 0; i < len; ++i) s += std::norm(a[i]);
    return s;
}

double frobenius_sq_parallel(const cplx *a, std::size_t len) {
    double s = 0;
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (long i = 0; i < (long)len; ++i) s += std::norm(a[i]);
    return s;
}

double frobenius_sq(const cplx *a, std::size_t len) {
    return go_parallel(2 * len) ? frobenius_sq_parallel(a, len)
                                : frobenius_sq_serial(a, len);
}

namespace {
// Accumulates one (r1, c1) tile of sum_i A_i[r1,c1] B_i - C_i[r1,c1] D_i
// and returns its squared norm. Scratch is caller-provided d*d storage.
inline double kron_diff_tile(const cplx *const *as, const cplx *const *bs,
                             const cplx *const *cs, const cplx *const *ds,
                             std::size_t terms, std::size_t d, std::size_t r1,
                             std::size_t c1, cplx *scratch) {
    for (std::size_t i = 0; i < d * d; ++i) scratch[i] = cplx(0);
    for (std::size_t t = 0; t < terms; ++t) {
        cplx av = as[t][r1 * d + c1];
        cplx cv = cs[t][r1 * d + c1];
        if (av != cplx(0)) {
            const cplx *bt = bs[t];
            for (std::size_t i = 0; i < d * d; ++i) scratch[i] += av * bt[i];
        }
        if (cv != cplx(0)) {
            const cplx *dt = ds[t];
            for (std::size_t i = 0; i < d * d; ++i) scratch[i] -= cv * dt[i];
        }
    }
    double s = 0;
    for (std::size_t i = 0; i < d * d; ++i) s += std::norm(scratch[i]);
    return s;
}
}  // namespace

double kron_diff_norm_sq_serial(const cplx *const *as, const cplx *const *bs,
                                const cplx *const *cs, const cplx *const *ds,
                                std::size_t terms, std::size_t d) {
    std::vector<cplx> scratch(d * d);
    double total = 0;
    for (std::size_t r1 = 0; r1 < d; ++r1)
        for (std::size_t c1 = 0; c1 < d; ++c1)
            total += kron_diff_tile(as, bs, cs, ds, terms, d, r1, c1,
                                    scratch.data());
    return total;
}

double kron_diff_norm_sq_parallel(const cplx *const *as, const cplx *const *bs,
                                  const cplx *const *cs, const cplx *const *ds,
                                  std::size_t terms, std::size_t d) {
    double total = 0;
#pragma omp parallel reduction(+ : total)
    {
        std::vector<cplx> scratch(d * d);
#pragma omp for schedule(static)
        for (long rc = 0; rc < (long)(d * d); ++rc) {
            std::size_t r1 = (std::size_t)rc / d;
            std::size_t c1 = (std::size_t)rc % d;
            total += kron_diff_tile(as, bs, cs, ds, terms, d, r1, c1,
                                    scratch.data());
        }
    }
    return total;
}

double kron_diff_norm_sq(const cplx *const *as, const cplx *const *bs,
                         const cplx *const *cs, const cplx *const *ds,
                         std::size_t terms, std::size_t d) {
    return go_parallel(terms * d * d * d * d)
               ? kron_diff_norm_sq_parallel(as, bs, cs, ds, terms, d)
               : kron_diff_norm_sq_serial(as, bs, cs, ds, terms, d);
}

}  // namespace fgs
