/*
 * Copyright 2026 The costgames Authors
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

#ifndef COSTGAMES_CLI_HPP
#define COSTGAMES_CLI_HPP

#include <ostream>

namespace costgames {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,
    kExitDeviation = 2,
    kExitInternal = 3,
};

/// Command-line entry point. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace costgames

#endif
