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

#ifndef FGS_SLOCC_HPP
#define FGS_SLOCC_HPP

#include <optional>
#include <string>
#include <vector>

#include "fgs/jw_fock.hpp"

namespace fgs {

/// Squared-norm threshold below which the iterated normal form is
/// declared to vanish (null cone).
inline constexpr double kEpsNull = 1e-10;

struct NormalFormTrace {
    enum class Verdict { CriticalReached, NullCone, MaxIterPlateau };

    std::size_t iterations = 0;            // completed sweeps over the sites
    std::vector<double> norm_history;      // cumulative squared norm per step
    std::optional<FockVector> final_state; // absent when the norm vanished
    std::vector<CMat> local_ops_product;   // accumulated diagonal operator per site
    Verdict verdict = Verdict::MaxIterPlateau;
};

/// Iterates the local filtering map X_i = det(rho_i)^{1/4} rho_i^{-1/2}
/// over the sites. Single-mode reductions of fermionic states are
/// diagonal, so every X_i is diagonal. The state is renormalized each
/// step and the cumulative squared norm is tracked separately, so decay
/// into the null cone is read off the scale rather than the state.
NormalFormTrace normal_form_iterate(const FockVector &psi,
                                    std::size_t max_iter = 200,
                                    double tol = 1e-8);

/// True iff every single-mode reduction is within tol of 1/2 in trace
/// norm.
bool is_critical(const FockVector &psi, double tol = 1e-8);

struct SloccLabel {
    enum class Kind {
        Separable,
        Biseparable,
        GHZ3,
        W3,
        Gabcd,
        Labc2,
        La2b2,
        NullCone4,
        NonGaussian,
        Unclassified
    };
    Kind kind = Kind::Unclassified;
    std::vector<cplx> params;
    std::string partition;  // factoring mode for biseparable labels
    bool gaussian = false;

    std::string name() const;
};

/// Zero-pattern classification of pure 3-mode states: all four even
/// amplitudes nonzero is the GHZ class, exactly one zero the W class,
/// exactly two zeros biseparable, otherwise separable.
SloccLabel classify_3mode(const FockVector &psi, double eps = kEpsDeg);

enum class SeedFamily { Gabcd, Labc2, La2b2, NullCone4 };

/// a |Phi+>^2 + b |Phi->^2 + c |Psi+>^2 + d |Psi->^2 with Bell pairs on
/// qubits (1,2) and (3,4); critical for every parameter choice and
/// Gaussian iff ab + cd = 0.
FockVector seed_4mode_gabcd(cplx a, cplx b, cplx c, cplx d);

/// Semi-stable family representatives; Gaussian iff ab = -c^2 and
/// a^2 + b^2 = 0 respectively.
FockVector seed_4mode_labc2(cplx a, cplx b, cplx c);
FockVector seed_4mode_la2b2(cplx a, cplx b);

/// |1100> + |1111> + |1010> + |0110> normalized; the null-cone class.
FockVector nullcone_4mode_state();

/// Label (with the algebraic Gaussianity flag) for a seed family member.
SloccLabel classify_4mode_seed(SeedFamily family, const std::vector<cplx> &params);

}  // namespace fgs

#endif
