// Copyright 2026 The pcsi Authors
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

#ifndef PCSI_TOOLS_CLI_DEMO_HPP_
#define PCSI_TOOLS_CLI_DEMO_HPP_

#include <ostream>
#include <string>

namespace pcsi::cli {

std::string default_fixture_dir();

// Replays a worked example from its fixture. Returns an exit code.
int run_demo(int example, const std::string& fixture_dir, std::ostream& out);

}  // namespace pcsi::cli

#endif  // PCSI_TOOLS_CLI_DEMO_HPP_
