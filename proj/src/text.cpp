#include "toca/text.hpp"

#include <cctype>

namespace toca {

namespace {

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::string lowercased(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = lower(c);
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool in_space = true;  // swallow leading whitespace
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
    } else {
      if (in_space && !out.empty()) out += ' ';
      in_space = false;
      out += c;
    }
  }
  return out;
}

size_t find_whole_word(std::string_view text, std::string_view word,
                       size_t from) {
  if (word.empty() || from > text.size()) return std::string_view::npos;
  for (size_t i = from; i + word.size() <= text.size(); ++i) {
    bool match = true;
    for (size_t k = 0; k < word.size(); ++k) {
      if (lower(text[i + k]) != lower(word[k])) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    bool left_ok = i == 0 || !word_char(text[i - 1]);
    size_t end = i + word.size();
    bool right_ok = end == text.size() || !word_char(text[end]);
    if (left_ok && right_ok) return i;
  }
  return std::string_view::npos;
}

std::string remove_whole_word(std::string_view text, std::string_view word) {
  std::string out(text);
  size_t pos = 0;
  while ((pos = find_whole_word(out, word, pos)) != std::string::npos)
    out.erase(pos, word.size());
  return collapse_whitespace(out);
}

size_t count_words(std::string_view s) {
  size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

}  // namespace toca
