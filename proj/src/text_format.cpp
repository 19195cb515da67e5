#include "matfun/text_format.hpp"

#include <charconv>
#include <cstdio>

namespace matfun {

namespace {

std::optional<double> parse_double_full(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Complex> parse_scalar_token(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (token.front() == '(') {
    if (token.back() != ')') return std::nullopt;
    std::string_view body = token.substr(1, token.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    auto re = parse_double_full(body.substr(0, comma));
    auto im = parse_double_full(body.substr(comma + 1));
    if (!re || !im) return std::nullopt;
    return Complex(*re, *im);
  }
  auto re = parse_double_full(token);
  if (!re) return std::nullopt;
  return Complex(*re, 0.0);
}

std::string format_scalar_exact(Complex z) {
  char buf[96];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", z.real(), z.imag());
  }
  return buf;
}

std::string format_real_report(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.16g", x);
  return buf;
}

std::string format_scalar_report(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.16g,%.16g)", z.real(), z.imag());
  return buf;
}

}  // namespace matfun
