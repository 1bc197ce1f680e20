#pragma once

#include <string_view>
#include <vector>

namespace unets {

// Text of a bundled fixture (file name without directory, e.g.
// "adneqtbr_N.unets"). Empty when there is no such fixture.
std::string_view fixture_text(std::string_view name);
std::vector<std::string_view> fixture_names();

}  // namespace unets
