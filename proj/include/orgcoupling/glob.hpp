#pragma once

#include <string_view>

namespace orgcoupling {

// Path-aware glob: '*' and '?' match within one '/'-separated segment,
// a bare '**' segment matches any number of segments (including none).
bool glob_match(std::string_view pattern, std::string_view text);

}  // namespace orgcoupling
