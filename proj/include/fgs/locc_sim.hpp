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

#ifndef FGS_LOCC_SIM_HPP
#define FGS_LOCC_SIM_HPP

#include <map>
#include <string>
#include <vector>

#include "fgs/jw_fock.hpp"

namespace fgs {

/// One measurement (or correction) operator X^flip D on a single site.
/// Operators of this form have definite parity, which is the general
/// form of local fermionic Kraus operators.
struct LocalKraus {
    std::size_t site = 1;
    int flip = 0;
    cplx d0{1.0, 0.0};
    cplx d1{1.0, 0.0};

    CMat matrix() const;
};

/// A POVM measurement on one site: branches K_b with sum K_b^+ K_b = 1.
struct Instrument {
    std::size_t site = 1;
    std::vector<LocalKraus> branches;
};

/// One communication round: a local measurement plus the corrections the
/// other parties apply per outcome transcript (keyed by the transcript
/// including this round's outcome digit).
struct Round {
    Instrument instrument;
    std::map<std::string, std::vector<LocalKraus>> corrections;
};

struct Protocol {
    std::size_t modes = 0;
    std::vector<Round> rounds;
};

struct BranchOutcome {
    double probability = 0;
    FockVector state;
    std::string transcript;
    /// Accumulated operator per site; each stays of the X^k D form.
    std::vector<CMat> site_ops;
};

/// Threshold below which zero-probability branches are dropped.
inline constexpr double kBranchDropTol = 1e-12;

void require_complete(const Instrument &ins, double tol = 1e-9);

std::vector<BranchOutcome> apply_instrument(const FockVector &psi,
                                            const Instrument &ins);

/// Channel action sum_b K_b rho K_b^+ of an instrument on a density
/// matrix (the instrument need not be complete here; used for the
/// definite-parity Kraus closure checks).
FockDensity apply_instrument_density(const FockDensity &rho,
                                     const std::vector<LocalKraus> &kraus);

/// Depth-first expansion of every branch with corrections applied;
/// branch order is transcript-lexicographic and deterministic.
std::vector<BranchOutcome> run_protocol(const FockVector &psi, const Protocol &p);

/// Two-round protocol reaching D1 (x) D2 (x) 1 |GHZ3> deterministically:
/// parties 1 and 2 measure {D_i, D_i X}, party 3 corrects with
/// X^{k1 + k2}. The diagonals are rescaled so each instrument is
/// complete.
Protocol ghz3_protocol(double d1_0, double d1_1, double d2_0, double d2_1);

/// One-round protocol reaching D1 (x) 1 (x) 1 (x) 1 on any G_abcd seed;
/// on the flipped outcome parties 2..4 apply X (the seed is X^{(x)4}
/// invariant).
Protocol seed4_protocol(double d1_0, double d1_1);

/// Two-round protocol reaching 1 (x) D2 (x) D3 (x) 1 on the extra
/// symmetry seed (a = b, c = d = i a), using the Y 1 X Z and Z X 1 Y
/// invariances for the corrections.
Protocol seed4_symmetric_protocol(double d2_0, double d2_1, double d3_0,
                                  double d3_1);

enum class EqualityMode { Overlap, StandardForm, Both };

/// True iff every branch reaches the target: by overlap modulus
/// (exact state), by equality of CM standard forms (up to GLU), or both.
bool verify_deterministic(const FockVector &psi_in, const FockVector &psi_target,
                          const Protocol &p, double tol = 1e-9,
                          EqualityMode mode = EqualityMode::Both);

struct SepFeasibility {
    bool feasible = false;
    std::vector<double> weights;
    double residual = 0;
};

/// Solves the separable-transformation condition
///   sum_i p_i S_i^+ H S_i = r G
/// over the probability simplex by least squares (active-set QP);
/// feasible iff the Frobenius residual is below tol.
SepFeasibility sep_feasibility(const CMat &g, const CMat &h,
                               const std::vector<CMat> &symmetries, double r,
                               double tol = 1e-8);

/// r = <seed| H |seed> / <seed| G |seed>.
double sep_ratio(const CMat &g, const CMat &h, const FockVector &seed);

}  // namespace fgs

#endif
