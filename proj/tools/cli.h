// Copyright 2026 The Many-Hypercube Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MHC_TOOLS_CLI_H
#define MHC_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace mhc::cli {

enum ExitCode {
    kOk = 0,
    kValidation = 1,
    kRuntime = 2,
    kNoCrossing = 3,
};

/// Runs the `mhc` command line. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

}  // namespace mhc::cli

#endif
