#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace neurocap::text {

/// Lowercases ASCII letters, splits on Unicode whitespace, strips leading and
/// trailing ASCII punctuation from each token and drops empty tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Tokens of `text` joined by single spaces.
std::string normalize(std::string_view text);

}  // namespace neurocap::text
