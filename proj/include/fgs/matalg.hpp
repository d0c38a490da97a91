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

#ifndef FGS_MATALG_HPP
#define FGS_MATALG_HPP

#include <vector>

#include "fgs/matrix.hpp"

namespace fgs {

/// Absolute tolerance on the antisymmetry residual max|A + A^T|.
inline constexpr double kEpsSym = 1e-12;

/// Relative degeneracy threshold. Every downstream branch decision
/// (equal singular values, zero blocks, rank cutoffs) uses this single
/// constant, scaled by the norm of the matrix at hand.
inline constexpr double kEpsDeg = 1e-10;

bool is_antisymmetric(const RMat &a, double eps = kEpsSym);

/// Throws invalid_input("NotAntisymmetric"/"OddDimension") unless `a` is
/// a real antisymmetric matrix of even dimension.
void require_antisymmetric(const RMat &a, double eps = kEpsSym);

/// 2x2 rotation [[cos, -sin], [sin, cos]].
RMat rot2(double angle);

/// J_2 = [[0, 1], [-1, 0]].
RMat j2();

/// Result of the orthogonal block diagonalization of a real
/// antisymmetric matrix: rotation * A * rotation^T = direct sum of
/// couplings[k] * J_2, with rotation in SO(2n).
struct BlockDiagonalForm {
    RMat rotation;
    std::vector<double> couplings;
};

/// Pfaffian of a real antisymmetric matrix. Closed-form expansion for
/// dim <= 4, Parlett-Reid tridiagonalization with pivoting above.
double pfaffian(RMat a);

/// Block diagonalizes an antisymmetric matrix with a special orthogonal
/// rotation. Couplings are sorted by decreasing magnitude and are
/// non-negative except possibly the last one: a single sign cannot be
/// rotated away inside SO(2n) when the Pfaffian is negative and no
/// coupling vanishes.
BlockDiagonalForm antisymmetric_normal_form(const RMat &a);

/// Constrained 2x2 SVD: left * m * right^T = diag(d, dp) with both
/// factors special orthogonal, d >= |dp| and d >= 0. The sign of dp
/// equals the sign of det(m). Factor signs are canonicalized so the
/// decomposition is a deterministic function of m.
struct Svd2So {
    RMat left;
    RMat right;
    double d;
    double dp;
};

Svd2So svd2_so(const RMat &m);

RMat direct_sum(const std::vector<RMat> &blocks);

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi.
/// Eigenvalues ascending, columns of `vectors` are the eigenvectors.
struct SymEigen {
    std::vector<double> values;
    RMat vectors;
};

SymEigen jacobi_eigen_sym(RMat a);

/// Eigenvalues of a complex Hermitian matrix (ascending), cyclic Jacobi.
std::vector<double> eigen_herm_values(CMat a);

/// Singular values (descending) of a general real matrix, one-sided
/// Jacobi orthogonalization.
std::vector<double> singular_values(const RMat &m);

/// Solves a x = b by LU with partial pivoting; b may have many columns.
RMat lu_solve(RMat a, RMat b);

double determinant(RMat a);

}  // namespace fgs

#endif
