// Copyright 2026 The ho2trs Authors
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

#ifndef HO2TRS_TOOLS_CLI_H_
#define HO2TRS_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ho2trs {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitInapplicable = 2;
inline constexpr int kExitInvariant = 3;

// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace ho2trs

#endif  // HO2TRS_TOOLS_CLI_H_
