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

#ifndef FGS_GFS_CM_HPP
#define FGS_GFS_CM_HPP

#include <cstdint>
#include <vector>

#include "fgs/matalg.hpp"

namespace fgs {

/// Covariance matrix of a Gaussian fermionic state: a real antisymmetric
/// 2n x 2n matrix gamma with gamma_{kl} built from the second Majorana
/// moments. Physical iff all singular values are <= 1, pure iff
/// gamma^2 = -1.
class CovarianceMatrix {
  public:
    CovarianceMatrix(std::size_t modes, RMat gamma);

    std::size_t modes() const { return modes_; }
    const RMat &gamma() const { return gamma_; }
    RMat &gamma() { return gamma_; }

    /// 2x2 block of covariances between modes i and j (0-based).
    RMat block(std::size_t i, std::size_t j) const {
        return gamma_.block(2 * i, 2 * j, 2, 2);
    }
    void set_block(std::size_t i, std::size_t j, const RMat &b) {
        gamma_.set_block(2 * i, 2 * j, b);
    }

    double max_singular_value() const;
    bool is_physical(double tol = 1e-9) const;
    bool is_pure(double tol = 1e-8) const;

  private:
    std::size_t modes_;
    RMat gamma_;
};

/// One real orthogonal operation per mode, realized as Z^m R(angle).
/// det = -1 entries (m = 1) are the parity flips implementable with a
/// Gaussian ancilla.
struct LocalOrthogonal {
    double angle = 0.0;
    std::uint8_t flip = 0;

    RMat matrix() const;
    static LocalOrthogonal from_matrix(const RMat &m, double tol = 1e-9);
};

using LocalOrthogonalSet = std::vector<LocalOrthogonal>;

/// Assignment of each mode to a party (0-based labels, contiguous).
class Bipartition {
  public:
    Bipartition() = default;
    explicit Bipartition(std::vector<std::size_t> party_of_mode);

    /// Two-party split from the set of A-modes (0-based indices).
    static Bipartition ab(std::size_t modes, const std::vector<std::size_t> &a_modes);

    std::size_t modes() const { return party_of_mode_.size(); }
    std::size_t parties() const { return parties_; }
    std::size_t party(std::size_t mode) const { return party_of_mode_[mode]; }
    std::vector<std::size_t> modes_of(std::size_t party) const;

  private:
    std::vector<std::size_t> party_of_mode_;
    std::size_t parties_ = 0;
};

struct CmValidationReport {
    bool antisymmetric = false;
    bool physical = false;
    bool pure = false;
    std::vector<double> williamson_spectrum;
};

CmValidationReport validate_cm(const CovarianceMatrix &g);

/// CM of the Gaussian state with Williamson couplings mu_k =
/// tanh(beta_k / 2) in the rotated mode basis:
/// gamma = basis^T (direct sum of -mu_k J_2) basis.
CovarianceMatrix thermal_cm(const std::vector<double> &betas, const RMat &basis);

/// Same with the mu_k given directly (mu = 1 is the pure limit).
CovarianceMatrix cm_from_couplings(const std::vector<double> &mus, const RMat &basis);

/// i^p tr(rho c_{j1} ... c_{j2p}) = Pf(gamma restricted to the indices).
/// Indices are 1-based, strictly increasing, of even count.
double wick_moment(const CovarianceMatrix &g, const std::vector<std::size_t> &indices);

CovarianceMatrix apply_local_orthogonal(const CovarianceMatrix &g,
                                        const LocalOrthogonalSet &ops);

/// True iff every block of gamma between modes of different parties
/// vanishes (relative to kEpsDeg * |gamma|): the direct-sum criterion
/// for separability of Gaussian fermionic states.
bool is_s2pi_separable_cm(const CovarianceMatrix &g, const Bipartition &partition);

/// Numerical rank of the inter-party correlation block C of
/// gamma = [[G_A, C], [-C^T, G_B]]. Product states have rank 0; states
/// whose moments factorize on all physical observables have rank <= 1.
std::size_t correlation_rank(const CovarianceMatrix &g, const Bipartition &partition);

/// CM (and regrouped partition) of two copies of the state, modes
/// reordered party-major: A modes of copy 1, A modes of copy 2, then the
/// B modes of both copies.
std::pair<CovarianceMatrix, Bipartition> two_copies(const CovarianceMatrix &g,
                                                    const Bipartition &partition);

/// The paired-mode 2-mode example gamma_p = (1 - 2p) gamma_0, where
/// gamma_0 has entries (1,3) = 1, (3,1) = -1 (1-based) and zeros
/// elsewhere. Physical for p in [0, 1/2].
CovarianceMatrix fixture_gamma_p(double p);

/// Williamson couplings |beta_k| sorted descending (GLU invariant form).
std::vector<double> williamson_abs(const CovarianceMatrix &g);

}  // namespace fgs

#endif
