// The named example states A..H.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qws/composite.hpp"

namespace qws {

std::vector<std::string> fixture_names();

// Built from the exact component lists. Throws std::out_of_range for an
// unknown name.
CompositeState builtin_fixture(std::string_view name);

// Same, but reads <dir>/<name>.json when QWS_FIXTURE_DIR is set.
CompositeState load_fixture(std::string_view name);

}  // namespace qws
