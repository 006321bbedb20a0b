#pragma once

#include <string>
#include <string_view>

namespace toca {

/// ASCII lowercase; bytes outside ASCII pass through untouched.
std::string lowercased(std::string_view s);

/// Collapses runs of whitespace to single spaces and trims both ends.
std::string collapse_whitespace(std::string_view s);

/// Case-insensitive whole-word search. A word boundary is any character
/// that is not an ASCII letter or digit (or the ends of the text).
/// Returns the match position, or npos.
size_t find_whole_word(std::string_view text, std::string_view word,
                       size_t from = 0);

/// Removes every whole-word occurrence of `word` and re-collapses spaces.
std::string remove_whole_word(std::string_view text, std::string_view word);

/// Number of whitespace-separated words.
size_t count_words(std::string_view s);

}  // namespace toca
