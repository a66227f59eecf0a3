// Copyright 2026 The eprkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace eprkit::cli {

// Exit codes: 0 success / positive decision, 1 negative decision,
// 2 indeterminate, 64 usage or input error.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitIndeterminate = 2;
inline constexpr int kExitUsage = 64;

// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace eprkit::cli
