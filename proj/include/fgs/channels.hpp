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

#ifndef FGS_CHANNELS_HPP
#define FGS_CHANNELS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "fgs/gfs_cm.hpp"

namespace fgs {

/// Gaussian channel in Choi-Jamiolkowski block form: the channel from n
/// to m modes with CJ covariance matrix [[A, B], [-B^T, D]], A (2m x 2m)
/// and D (2n x 2n) antisymmetric. The channel is valid iff that CM is
/// physical.
struct GaussianChannel {
    std::size_t in_modes = 0;
    std::size_t out_modes = 0;
    RMat a, b, d;
};

void validate_channel(const GaussianChannel &ch, double tol = 1e-9);

/// Assembles the CJ covariance matrix (out modes first, then in modes).
CovarianceMatrix cj_cm(const GaussianChannel &ch);

/// Re-slices a CJ covariance matrix back into channel blocks.
GaussianChannel channel_from_cj(const CovarianceMatrix &cm, std::size_t out_modes);

/// Gamma_out = A + B Gamma (D Gamma + 1)^{-1} B^T. The inversion-free
/// form of A + B (D + Gamma^{-1})^{-1} B^T, valid for singular Gamma
/// (in particular Gamma = 0 maps to A).
CovarianceMatrix apply_channel_cm(const GaussianChannel &ch,
                                  const CovarianceMatrix &gamma);

/// Orthogonal conjugation packaged as a channel: (A, B, D) = (0, O, 0).
GaussianChannel glu_channel(const RMat &o);

/// Composition second after first, computed through the CJ contraction:
/// the extended second channel is applied to the CJ CM of the first.
GaussianChannel compose(const GaussianChannel &second, const GaussianChannel &first);

/// True iff the CJ CM is block-diagonal with respect to the party
/// grouping (each party holding its paired in/out modes); requires
/// m = n so the pairing is well defined.
bool is_product_channel(const GaussianChannel &ch, const Bipartition &partition);

struct GsepProbeReport {
    std::size_t samples = 0;
    std::size_t pure_entangled_hits = 0;
    bool all_outputs_pure = true;
    /// Per-mode nearest-orthogonal fit of the local blocks; residual
    /// small means the factor acts as an orthogonal conjugation.
    std::vector<RMat> fitted_orthogonals;
    std::vector<double> fit_residuals;
};

/// Samples random pure fully entangled CMs through a fully local (GSEP)
/// channel and reports whether any output stays pure and fully
/// entangled. A statistical probe, not a proof.
GsepProbeReport gsep_triviality_probe(const GaussianChannel &ch,
                                      std::size_t samples, std::uint64_t seed);

/// Haar-ish random special orthogonal matrix (Gram-Schmidt of a Gaussian
/// sample with the determinant fixed).
RMat random_special_orthogonal(std::size_t dim, std::mt19937_64 &rng);

/// Random physical CM with couplings |mu| <= 1 (pure = all 1).
CovarianceMatrix random_cm(std::size_t modes, std::mt19937_64 &rng, bool pure);

/// True iff no subset of modes decouples (every bipartition has a
/// nonvanishing correlation block).
bool is_fully_entangled_cm(const CovarianceMatrix &g, double tol = 1e-6);

}  // namespace fgs

#endif
