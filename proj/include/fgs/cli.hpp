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

#ifndef FGS_CLI_HPP
#define FGS_CLI_HPP

#include <iosfwd>

namespace fgs {

/// Command-line entry point. Exit codes: 0 = success / predicate true,
/// 1 = predicate false, 2 = input error. A JSON result (with a
/// "schema_version" field) is always written to `out`.
int cli_run(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

}  // namespace fgs

#endif
