// Small text helpers: round-trip double formatting and literal parsing.
#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mnc/errors.hpp"

namespace mnc {

/// 17 significant digits; strtod() of the result reproduces the value exactly.
inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // fold -0 so traces do not depend on zero signs
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Shortest decimal that round-trips; for human-readable output.
inline std::string format_short(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_array(std::span<const double> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  out += ']';
  return out;
}

inline double parse_double(std::string_view token) {
  std::string s(token);
  const auto first = s.find_first_not_of(" \t\r\n");
  const auto last = s.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty number");
  s = s.substr(first, last - first + 1);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v))
    throw ParseError("not a finite number: '" + s + "'");
  return v;
}

/// Parses "5,2,8" (whitespace tolerated) into doubles.
inline std::vector<double> parse_array_literal(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto stop = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_double(text.substr(start, stop - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace mnc
