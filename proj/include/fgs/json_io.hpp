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

#ifndef FGS_JSON_IO_HPP
#define FGS_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "fgs/channels.hpp"
#include "fgs/gfs_cm.hpp"
#include "fgs/glu_standard.hpp"
#include "fgs/jw_fock.hpp"
#include "fgs/locc_sim.hpp"
#include "fgs/slocc.hpp"

namespace fgs {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"modes": n, "gamma": [[row], ...]}; antisymmetry is checked strictly
/// on load.
json cm_to_json(const CovarianceMatrix &g);
CovarianceMatrix cm_from_json(const json &j);

/// {"modes": n, "amplitudes": [[re, im], ...]} ordered by basis index.
json state_to_json(const FockVector &psi);
FockVector state_from_json(const json &j);

/// {"in_modes", "out_modes", "A", "B", "D"}.
json channel_to_json(const GaussianChannel &ch);
GaussianChannel channel_from_json(const json &j);

/// {"modes", "rounds": [{"site", "branches": [{"flip", "diag": [d0, d1]}],
///  "corrections": {"<transcript>": [{"site", "flip", "diag"}]}}]}.
/// Diagonal entries are numbers or [re, im] pairs.
json protocol_to_json(const Protocol &p);
Protocol protocol_from_json(const json &j);

json ops_to_json(const LocalOrthogonalSet &ops);
LocalOrthogonalSet ops_from_json(const json &j);

json label_to_json(const SloccLabel &label);

/// Mode groups like "1,2|3" (1-based) or [[1,2],[3]].
Bipartition partition_from_json(const json &j, std::size_t modes);
Bipartition partition_from_string(const std::string &s, std::size_t modes);

json load_json_file(const std::string &path);

}  // namespace fgs

#endif
