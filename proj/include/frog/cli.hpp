/*
   Copyright 2026 The frog authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frog::cli {

// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kMalformedConfig = 1,  // unreadable or schema-violating input, bad flags
    kInvalidSpec = 2,      // values outside their domain; refused oracle runs
    kNotDecisive = 3,      // classify: no DiesAS/SurvivesWPP verdict
    kVerifyFailed = 4,     // verify: a bound or oracle comparison failed
    kResourceLimit = 5,    // simulation above the work budget
    kIoError = 6,          // output or run-store write failure
};

/// Runs the command line `args` (args[0] is the program name). Results go
/// to `out`, diagnostics to `err`; successful runs never write to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frog::cli
