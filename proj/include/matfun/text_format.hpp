#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "matfun/types.hpp"

namespace matfun {

// Scalar token syntax shared by problem files and function specs:
// a bare decimal (`1.5`, `-2e-3`) or a complex pair `(re,im)` with no
// interior whitespace. Returns nullopt on malformed tokens.
std::optional<Complex> parse_scalar_token(std::string_view token);

// Formats with enough digits that parse_scalar_token returns the identical
// value: bare %.17g for real scalars, (re,im) otherwise.
std::string format_scalar_exact(Complex z);

// Fixed 16-significant-digit forms used in reports.
std::string format_real_report(double x);
std::string format_scalar_report(Complex z);

}  // namespace matfun
