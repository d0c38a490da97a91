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

#ifndef FGS_GLU_STANDARD_HPP
#define FGS_GLU_STANDARD_HPP

#include <string>
#include <vector>

#include "fgs/gfs_cm.hpp"

namespace fgs {

/// One branch decision taken while computing the standard form; the log
/// makes the path auditable but never participates in equality checks.
struct BranchRecord {
    std::string rule;
    std::size_t i = 0;
    std::size_t j = 0;
    std::string detail;
};

struct StandardFormResult {
    CovarianceMatrix s_gamma;
    LocalOrthogonalSet ops;
    std::vector<BranchRecord> decision_log;
};

struct StandardFormOptions {
    /// Mirrors the selection-rule mode: when false every flip bit is
    /// forced to zero and only SO(2) rotations are used.
    bool allow_z_flips = true;
    double eps = kEpsDeg;
};

/// Canonical GLU representative of a one-mode-per-party CM. The applied
/// operations satisfy (sum Zbar_i) gamma (...)^T = s_gamma, the result is
/// idempotent, and two CMs are GLU-equivalent iff their standard forms
/// coincide.
StandardFormResult standard_form(const CovarianceMatrix &g,
                                 const StandardFormOptions &opt = {});

bool glu_equivalent(const CovarianceMatrix &g1, const CovarianceMatrix &g2,
                    double tol = 1e-7, const StandardFormOptions &opt = {});

struct ThreeModeValidation {
    bool valid = false;
    std::string matched_case;
};

/// Checks a 3-mode matrix against the enumerated standard-form parameter
/// conditions (the lambda_i > 0, no-factorizing regime is validated in
/// full; lambda_i = 0 inputs are flagged as unvalidated rather than
/// guessed at).
ThreeModeValidation validate_3mode_standard_form(const CovarianceMatrix &s,
                                                 double eps = 1e-8);

struct Pure2ModeParams {
    double lambda = 0;
    double d = 0;
    bool maximally_entangled = false;
};

/// Coordinates of the one-parameter pure 2-mode family
/// (lambda^2 + d^2 = 1); requires a pure CM already in standard form.
Pure2ModeParams pure_2mode_params(const CovarianceMatrix &s);

}  // namespace fgs

#endif
