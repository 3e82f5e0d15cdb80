#pragma once

// Text primitives shared by the corpus generator and the ingestion pipeline:
// tokenization (alphanumeric words, hyphen joins inside a word) and ASCII
// case folding.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace pivotbench {

struct Token {
  std::string text;
  std::size_t begin = 0;  // char offset, inclusive
  std::size_t end = 0;    // char offset, exclusive
};

inline bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Splits on non-alphanumeric characters; a hyphen with alphanumerics on both
// sides stays inside the token ("auth-service", "CVE-2025-41923").
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n) {
      if (is_word_char(text[j])) {
        ++j;
      } else if (text[j] == '-' && j + 1 < n && is_word_char(text[j + 1])) {
        j += 2;
      } else {
        break;
      }
    }
    out.push_back(Token{std::string(text.substr(i, j - i)), i, j});
    i = j;
  }
  return out;
}

inline std::size_t count_tokens(std::string_view text) {
  std::size_t count = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n) {
      if (is_word_char(text[j])) {
        ++j;
      } else if (text[j] == '-' && j + 1 < n && is_word_char(text[j + 1])) {
        j += 2;
      } else {
        break;
      }
    }
    ++count;
    i = j;
  }
  return count;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace pivotbench
