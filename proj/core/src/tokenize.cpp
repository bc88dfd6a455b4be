#include "scenedesc/tokenize.hpp"

#include <cctype>

namespace scenedesc {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i == start) break;
    std::size_t lo = start;
    std::size_t hi = i;
    while (lo < hi && is_punct(text[lo])) ++lo;
    while (hi > lo && is_punct(text[hi - 1])) --hi;
    if (lo < hi) {
      tokens.push_back(to_lower(text.substr(lo, hi - lo)));
    }
  }
  return tokens;
}

}  // namespace scenedesc
