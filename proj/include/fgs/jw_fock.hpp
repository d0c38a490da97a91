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

#ifndef FGS_JW_FOCK_HPP
#define FGS_JW_FOCK_HPP

#include <vector>

#include "fgs/gfs_cm.hpp"
#include "fgs/matrix.hpp"

namespace fgs {

/// Dense state vector over the 2^n Fock basis, ordered |k_1 ... k_n>
/// with mode 1 as the most significant bit. Physical fermionic states
/// are normalized and have definite parity.
class FockVector {
  public:
    FockVector(std::size_t modes, std::vector<cplx> amplitudes,
               bool validate = true);

    static FockVector basis_state(std::size_t modes, std::size_t index);

    std::size_t modes() const { return modes_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx> &amps() const { return amps_; }
    std::vector<cplx> &amps() { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;
    /// +1 even, -1 odd, 0 mixed (within tolerance).
    int parity(double tol = 1e-10) const;
    bool is_fermionic(double tol = 1e-10) const;

    /// Mode k_j of a basis index (1-based mode).
    int bit(std::size_t index, std::size_t mode) const {
        return (int)((index >> (modes_ - mode)) & 1u);
    }

  private:
    std::size_t modes_;
    std::vector<cplx> amps_;
};

/// Dense density matrix over the Fock basis, Hermitian with unit trace.
class FockDensity {
  public:
    FockDensity(std::size_t modes, CMat matrix, bool validate = true);

    static FockDensity from_vector(const FockVector &psi);

    std::size_t modes() const { return modes_; }
    std::size_t dim() const { return rho_.rows(); }
    const CMat &matrix() const { return rho_; }
    CMat &matrix() { return rho_; }

    bool is_fermionic(double tol = 1e-10) const;

  private:
    std::size_t modes_;
    CMat rho_;
};

/// Dense matrix of Majorana operator c_i (1-based, i in 1..2n):
/// c_{2j-1} = Z...Z X_j, c_{2j} = Z...Z Y_j. Matrices are memoized per
/// (i, n); the cache is safe for concurrent readers.
const CMat &majorana_matrix(std::size_t i, std::size_t n);

/// In-place action of c_i on a state vector (O(2^n), no matrix).
void apply_majorana(std::size_t i, std::size_t n, const cplx *in, cplx *out);

/// M <- c_i M and M <- M c_i (row/column permutation with phases).
CMat majorana_left(std::size_t i, std::size_t n, const CMat &m);
CMat majorana_right(const CMat &m, std::size_t i, std::size_t n);

/// Lambda = sum_i c_i (x) c_i on the doubled space (dimension 4^n).
CMat lambda_operator(std::size_t n);

bool is_fermionic(const FockVector &psi, double tol = 1e-10);
bool is_fermionic(const FockDensity &rho, double tol = 1e-10);

/// Pure-state Gaussianity: || Lambda (psi (x) psi) || < tol.
bool is_gaussian_pure(const FockVector &psi, double tol = 1e-9);
double gaussian_pure_residual(const FockVector &psi);

/// Even-operator Gaussianity: || [Lambda, x (x) x] ||_F < tol |x|_F^2.
bool is_gaussian_operator(const CMat &x, std::size_t n, double tol = 1e-8);

/// Two-mode criterion det(rho_e) = det(rho_o) in the bases
/// {|00>, |11>} and {|01>, |10>}.
bool is_gaussian_two_mode(const FockDensity &rho, double tol = 1e-10);

/// Four-mode pure criterion <psi*| X Y X Y |psi> = 0, with psi*
/// conjugated entrywise in the computational basis.
bool is_gaussian_four_mode_pure(const FockVector &psi, double tol = 1e-9);
cplx xyxy_invariant(const FockVector &psi);

CovarianceMatrix cm_from_state(const FockVector &psi);
CovarianceMatrix cm_from_state(const FockDensity &rho);

/// Exchanges adjacent modes site, site+1 with the fermionic phase
/// |ij> -> (-1)^{ij} |ji>. 1-based site, 1 <= site < n.
FockVector fermionic_swap(const FockVector &psi, std::size_t site);
FockDensity fermionic_swap(const FockDensity &rho, std::size_t site);

/// Traces out one mode: the mode is moved to the last position with
/// fermionic swaps, then the last tensor factor is traced.
FockDensity fermionic_partial_trace(const FockDensity &rho, std::size_t mode);

/// Reduced state on `keep` (ascending 1-based modes), tracing the rest.
FockDensity reduced_density(const FockDensity &rho, std::vector<std::size_t> keep);
FockDensity reduced_density(const FockVector &psi, std::vector<std::size_t> keep);

/// Uniform superposition over even-weight bitstrings (H^n applied to the
/// n-qubit GHZ state); critical and Gaussian.
FockVector ghz_hadamard_state(std::size_t n);

/// rho_W = (4F-1)/3 |psi^-><psi^-| + (1-F)/3 * 1, F in [0, 1].
FockDensity werner_state(double f);

/// Dense density matrix of the Gaussian state with Williamson couplings
/// mus in the rotated Majorana basis c'_j = sum_l basis_{jl} c_l:
/// rho = prod_k (1 - i mu_k c'_{2k-1} c'_{2k}) / 2.
FockDensity gaussian_density(const std::vector<double> &mus, const RMat &basis);

/// Pure Gaussian state vector for the mu = 1 limit of gaussian_density.
FockVector gaussian_pure_vector(const RMat &basis);

/// i^p tr(rho c_{j1} ... c_{j2p}) evaluated with dense operators; the
/// independent cross-check of wick_moment. Indices 1-based ascending.
double jw_moment(const FockDensity &rho, const std::vector<std::size_t> &indices);
double jw_moment(const FockVector &psi, const std::vector<std::size_t> &indices);

/// Applies a single-qubit operator on `site` (1-based) in JW form.
FockVector apply_site_op(const FockVector &psi, std::size_t site, const CMat &op,
                         bool renormalize = false);
FockDensity apply_site_ops_density(const FockDensity &rho,
                                   const std::vector<std::pair<std::size_t, CMat>> &ops);

}  // namespace fgs

#endif
