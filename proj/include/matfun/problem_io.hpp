#pragma once

#include <string>
#include <string_view>

#include "matfun/types.hpp"

namespace matfun {

// Problem files: dimension N, then N spectrum scalars, then N*N perturbation
// scalars row-major. Tokens are whitespace separated; `#` comments to end of
// line; scalars are bare decimals or (re,im). Parsing is strict: exactly
// N + N*N scalars after the header, no trailing garbage.
struct Problem {
  DiagonalSpectrum lambda;
  PerturbationMatrix tau;
};

Problem parse_problem(std::string_view text);

// Prints a problem so that parse_problem recovers the identical values.
std::string format_problem(const DiagonalSpectrum& lambda, const PerturbationMatrix& tau);

}  // namespace matfun
