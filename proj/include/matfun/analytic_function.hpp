#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matfun/types.hpp"

namespace matfun {

enum class FunctionKind {
  Exponential,
  Sine,
  Cosine,
  Logarithm,        // principal branch; excluded set is the closed ray (-inf, 0]
  Monomial,         // x^p, p >= 0
  Polynomial,       // sum c_j x^j, coefficient list non-empty
  ReciprocalShift,  // 1/(x - a); excluded set is the point a
};

// A scalar function with exact evaluation of all derivative orders and of
// Taylor coefficients at any point of its analyticity domain. Immutable after
// construction; safe to share across threads.
class AnalyticFunction {
 public:
  static AnalyticFunction exponential();
  static AnalyticFunction sine();
  static AnalyticFunction cosine();
  static AnalyticFunction logarithm();
  static AnalyticFunction monomial(int degree);
  static AnalyticFunction polynomial(std::vector<Complex> coefficients);
  static AnalyticFunction reciprocal_shift(Complex pole);

  FunctionKind kind() const { return kind_; }
  bool entire() const {
    return kind_ != FunctionKind::Logarithm && kind_ != FunctionKind::ReciprocalShift;
  }

  // Degree when the function is a (possibly trimmed) polynomial or monomial.
  std::optional<int> polynomial_degree() const;

  // Distance from z to the excluded set; +inf for entire functions.
  double excluded_distance(Complex z) const;
  bool in_domain(Complex z) const;
  // Nearest point of the excluded set to z; only valid when not entire.
  Complex nearest_excluded(Complex z) const;

  Complex eval(Complex z) const;
  // f^(k)(z), closed form per kind. Order 0 is identical to eval.
  Complex derivative(int order, Complex z) const;
  // f^(n)(center)/n!, computed without explicit large factorials.
  Complex taylor_coefficient(int order, Complex center) const;
  // Radius of the largest disk at center clear of the excluded set; +inf
  // when entire. The Taylor series converges to the function on that disk.
  double taylor_radius(Complex center) const;

  // Round-trips through parse_function_spec.
  std::string spec_string() const;

 private:
  AnalyticFunction(FunctionKind kind, int degree, std::vector<Complex> coeffs, Complex pole)
      : kind_(kind), degree_(degree), coeffs_(std::move(coeffs)), pole_(pole) {}

  void require_in_domain(Complex z) const;

  FunctionKind kind_;
  int degree_ = 0;               // Monomial
  std::vector<Complex> coeffs_;  // Polynomial
  Complex pole_;                 // ReciprocalShift
};

// Function specification strings used by the CLI:
//   exp | sin | cos | log | pow:<p> | poly:<c0>,<c1>,... | recip:<a>
// Scalars are bare decimals or (re,im).
AnalyticFunction parse_function_spec(std::string_view spec);

}  // namespace matfun
