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

#ifndef PCSI_VERIFY_REPORT_JSON_HPP_
#define PCSI_VERIFY_REPORT_JSON_HPP_

#include <string>

#include "pcsi/pcia/support.hpp"
#include "pcsi/verify/lemmas.hpp"
#include "pcsi/verify/monte_carlo.hpp"
#include "pcsi/verify/posterior.hpp"

namespace pcsi {

// {"queries": N, "mass": "1/1", "target": "1/6", "violations": [...], ...}
std::string posterior_report_to_json(const PosteriorReport& report, int indent = 2);
std::string query_posterior_to_json(const QueryPosterior& qp, int indent = 2);
std::string mc_report_to_json(const McReport& report, int indent = 2);
std::string lemma_report_to_json(const LemmaReport& report, int indent = 2);
std::string support_report_to_json(const SupportReport& report, int indent = 2);

}  // namespace pcsi

#endif  // PCSI_VERIFY_REPORT_JSON_HPP_
