// Copyright 2026 The qakg Authors
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

#ifndef QAKG_IO_H
#define QAKG_IO_H

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qakg/adversary.h"
#include "qakg/approx_psqa.h"
#include "qakg/classical_wc.h"
#include "qakg/codes.h"
#include "qakg/ucharness.h"

namespace qakg {

inline const std::string kReportSchema = "qakg-report/1";
inline const std::string kFamilySchema = "qakg-family/1";

/// Malformed or inconsistent input file.
class SchemaError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Generators in "xz:<x>|<z>" form, one list per code.
nlohmann::json family_to_json(const PtcFamily &family);
/// Rebuilds the codes and recomputes epsilon_verified by brute force. The
/// stored value is returned in `stored_epsilon` when non-null.
PtcFamily family_from_json(const nlohmann::json &j, double *stored_epsilon = nullptr);

void save_json(const std::string &path, const nlohmann::json &j);
nlohmann::json load_json(const std::string &path);

nlohmann::json attack_to_json(const AttackDescriptor &d);
AttackDescriptor attack_from_json(const nlohmann::json &j);

nlohmann::json report_to_json(const AdvantageReport &r);
nlohmann::json wc_report_to_json(const WcReport &r);
nlohmann::json leak_report_to_json(const LeakReport &r);
nlohmann::json cipher_to_json(const ApproxCipher &c);

/// {"nodes": {"id": eps, ...}, "edges": [["parent", "child"], ...]}
CompositionTree composition_from_json(const nlohmann::json &j);
nlohmann::json composition_to_json(const CompositionTree &t);

}  // namespace qakg

#endif
