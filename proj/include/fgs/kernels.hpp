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

#ifndef FGS_KERNELS_HPP
#define FGS_KERNELS_HPP

#include <complex>
#include <cstddef>

namespace fgs {

using cplx = std::complex<double>;

/// Execution policy for the data-parallel kernels. Auto switches to the
/// OpenMP path once the operation is large enough to amortize thread
/// startup; Serial and Parallel force one path (used by tests and the
/// benchmark).
enum class ExecMode { Auto, Serial, Parallel };

void set_exec_mode(ExecMode mode);
ExecMode exec_mode();

/// Work threshold (multiply-add count) above which Auto picks the
/// parallel path.
inline constexpr std::size_t kParallelThreshold = 1u << 15;

// C = A(m x k) * B(k x n), row-major. The parallel variant splits rows,
// so each output element is accumulated in the same order as the serial
// variant and results are bit-identical.
void matmul_rr_serial(const double *a, const double *b, double *c,
                      std::size_t m, std::size_t k, std::size_t n);
void matmul_rr_parallel(const double *a, const double *b, double *c,
                        std::size_t m, std::size_t k, std::size_t n);
void matmul_rr(const double *a, const double *b, double *c,
               std::size_t m, std::size_t k, std::size_t n);

void matmul_cc_serial(const cplx *a, const cplx *b, cplx *c,
                      std::size_t m, std::size_t k, std::size_t n);
void matmul_cc_parallel(const cplx *a, const cplx *b, cplx *c,
                        std::size_t m, std::size_t k, std::size_t n);
void matmul_cc(const cplx *a, const cplx *b, cplx *c,
               std::size_t m, std::size_t k, std::size_t n);

// C += A(ma x na) (x) B(mb x nb), Kronecker product, row-major.
void kron_acc_cc_serial(const cplx *a, std::size_t ma, std::size_t na,
                        const cplx *b, std::size_t mb, std::size_t nb,
                        cplx *c);
void kron_acc_cc_parallel(const cplx *a, std::size_t ma, std::size_t na,
                          const cplx *b, std::size_t mb, std::size_t nb,
                          cplx *c);
void kron_acc_cc(const cplx *a, std::size_t ma, std::size_t na,
                 const cplx *b, std::size_t mb, std::size_t nb, cplx *c);

double frobenius_sq_serial(const double *a, std::size_t len);
double frobenius_sq_parallel(const double *a, std::size_t len);
double frobenius_sq(const double *a, std::size_t len);

double frobenius_sq_serial(const cplx *a, std::size_t len);
double frobenius_sq_parallel(const cplx *a, std::size_t len);
double frobenius_sq(const cplx *a, std::size_t len);

/// || sum_i kron(A_i, B_i) - kron(C_i, D_i) ||_F^2 without materializing
/// the doubled-space matrix; all inputs are dense d x d, row-major, and
/// there are `terms` of each. Row blocks are processed independently,
/// which is where the parallel variant splits.
double kron_diff_norm_sq_serial(const cplx *const *as, const cplx *const *bs,
                                const cplx *const *cs, const cplx *const *ds,
                                std::size_t terms, std::size_t d);
double kron_diff_norm_sq_parallel(const cplx *const *as, const cplx *const *bs,
                                  const cplx *const *cs, const cplx *const *ds,
                                  std::size_t terms, std::size_t d);
double kron_diff_norm_sq(const cplx *const *as, const cplx *const *bs,
                         const cplx *const *cs, const cplx *const *ds,
                         std::size_t terms, std::size_t d);

}  // namespace fgs

#endif
