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

#ifndef FGS_ERRORS_HPP
#define FGS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fgs {

/// Error thrown when an input violates an operation's preconditions.
/// The message starts with a stable tag (e.g. "NotAntisymmetric: ...")
/// so callers and tests can match on the failure kind.
class invalid_input : public std::invalid_argument {
  public:
    explicit invalid_input(const std::string &msg) : std::invalid_argument(msg) {}
};

/// Error thrown when a computation cannot proceed (singular pencil,
/// exhausted iteration, ...).
class numeric_error : public std::runtime_error {
  public:
    explicit numeric_error(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace fgs

#endif
