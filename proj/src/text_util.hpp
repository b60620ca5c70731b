#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dynpr/graph.hpp"

namespace dynpr::detail {

// Splits on whitespace after stripping a trailing `#` comment.
inline std::vector<std::string> tokenize(const std::string& line) {
  std::string_view body = line;
  if (auto hash = body.find('#'); hash != std::string_view::npos) {
    body = body.substr(0, hash);
  }
  std::vector<std::string> tokens;
  std::istringstream words{std::string(body)};
  for (std::string word; words >> word;) tokens.push_back(std::move(word));
  return tokens;
}

template <typename Int>
Int parse_int(const std::string& token, std::size_t line, const char* what) {
  Int value{};
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" +
                               token + "'");
  }
  return value;
}

inline double parse_double(const std::string& token, std::size_t line,
                           const char* what) {
  try {
    std::size_t used = 0;
    double value = std::stod(token, &used);
    if (used == token.size()) return value;
  } catch (const std::exception&) {
  }
  throw ParseError(line, std::string("expected number ") + what + ", got '" +
                             token + "'");
}

}  // namespace dynpr::detail
