#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crnacr {

/// Exact rational scalar used for all structural linear algebra.
using Rational = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rational>;

inline double to_double(const Rational& q) { return static_cast<double>(q); }

/// Exact conversion: every finite binary64 value is a rational.
inline Rational rational_from_double(double d) { return Rational(d); }

inline int sign(const Rational& q) { return q.sign(); }

/// Renders "7", "-3/4"; denominator omitted when 1.
inline std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Parses "3", "-3/4", "2.5" into an exact rational. Returns nullopt on any
/// trailing garbage or malformed input.
inline std::optional<Rational> rational_from_string(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::size_t& i) {
    std::string out;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') out += text[i++];
    return out;
  };
  std::string whole = digits(pos);
  boost::multiprecision::cpp_int num;
  boost::multiprecision::cpp_int den = 1;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::string frac = digits(pos);
    if (whole.empty() && frac.empty()) return std::nullopt;
    num = boost::multiprecision::cpp_int(whole.empty() ? "0" : whole);
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
  } else if (pos < text.size() && text[pos] == '/') {
    ++pos;
    std::string denom = digits(pos);
    if (whole.empty() || denom.empty()) return std::nullopt;
    num = boost::multiprecision::cpp_int(whole);
    den = boost::multiprecision::cpp_int(denom);
    if (den == 0) return std::nullopt;
  } else {
    if (whole.empty()) return std::nullopt;
    num = boost::multiprecision::cpp_int(whole);
  }
  if (pos != text.size()) return std::nullopt;
  Rational q(num, den);
  return negative ? -q : q;
}

/// Shortest decimal string that parses back to exactly the same binary64.
inline std::string format_double(double d) {
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, d);
    if (std::strtod(buf, nullptr) == d) break;
  }
  return buf;
}

}  // namespace crnacr
