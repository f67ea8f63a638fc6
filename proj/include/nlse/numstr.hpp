#pragma once

#include <charconv>
#include <complex>
#include <string>
#include <string_view>

#include "nlse/errors.hpp"

namespace nlse {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw IoError("failed to format double");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ValidationError("not a number: '" + std::string(s) + "'");
  return v;
}

inline std::string format_complex(std::complex<double> z) {
  return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") +
         format_double(z.imag() < 0 ? -z.imag() : z.imag()) + "i";
}

}  // namespace nlse
