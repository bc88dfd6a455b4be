#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace scenedesc {

// Word-level tokenization shared by grammar learning and ROUGE scoring:
// lowercase ASCII, split on whitespace, strip leading/trailing punctuation
// from each token. Tokens that become empty are dropped, so sentence-final
// periods and commas disappear. Internal hyphens survive ("dining-room").
std::vector<std::string> tokenize(std::string_view text);

// Lowercase a copy (ASCII only).
std::string to_lower(std::string_view text);

}  // namespace scenedesc
