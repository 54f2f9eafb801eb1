/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <string>

#include <json.hpp>

#include "threshrep/bounds.hpp"
#include "threshrep/protocol.hpp"

namespace threshrep {

using ordered_json = nlohmann::ordered_json;

// Matrix encoding: {"rows": R, "cols": C, "data": [[[re, im], ...], ...]},
// row-major.
ordered_json matrix_to_json(const CMat& m);
CMat matrix_from_json(const ordered_json& j);

// Protocol file schema, version 1: fields version, r, x_dims, y_dims,
// z_dims, rho, psi (array), p0, p1. Unknown fields are rejected.
ordered_json protocol_to_json(const ProtocolSpec& p);
ProtocolSpec protocol_from_json(const ordered_json& j);

ProtocolSpec load_protocol(const std::string& path);
void save_protocol(const ProtocolSpec& p, const std::string& path);

// Schedule file: CSV with header "n,a,b".
std::vector<ScheduleRow> load_schedule_csv(const std::string& path);

// Round to 9 significant digits (the precision printed in machine output),
// by re-parsing the shortest such decimal form.
double round_sig9(double v);

}  // namespace threshrep
