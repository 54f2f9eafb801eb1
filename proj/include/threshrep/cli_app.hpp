/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace threshrep {

// Runs the command-line tool on argv-style arguments (program name
// excluded). Exit codes: 0 success, 1 validation or bound failure,
// 2 parse error, 3 dimension cap exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace threshrep
