#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace stylekit::utf8 {

// Strict decoder; throws validation_error on malformed byte sequences.
std::vector<char32_t> decode(std::string_view text);

// Number of Unicode scalar values (not bytes).
std::size_t length(std::string_view text);

bool is_punctuation(char32_t cp);

// True when the token is non-empty and every scalar is punctuation.
bool all_punctuation(std::string_view token);

}  // namespace stylekit::utf8
