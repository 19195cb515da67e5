#include "matfun/analytic_function.hpp"

#include <cmath>
#include <cstdio>

#include "matfun/text_format.hpp"

namespace matfun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1/n! without forming large factorials; underflows to 0 for n > ~178.
double inverse_factorial(int n) {
  if (n <= 170) {
    double fact = 1.0;
    for (int j = 2; j <= n; ++j) fact *= j;
    return 1.0 / fact;
  }
  return std::exp(-std::lgamma(static_cast<double>(n) + 1.0));
}

// p(p-1)...(p-k+1)
double falling_factorial(int p, int k) {
  double acc = 1.0;
  for (int j = 0; j < k; ++j) acc *= static_cast<double>(p - j);
  return acc;
}

// Binomial coefficient as a double, exact for the small degrees in use.
double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (int j = 1; j <= k; ++j) acc = acc * static_cast<double>(n - k + j) / j;
  return acc;
}

// m!/w^(m+1) evaluated as an alternating product of moderate ratios.
Complex factorial_over_power(int m, Complex w) {
  Complex acc = Complex(1.0, 0.0) / w;
  for (int j = 1; j <= m; ++j) acc *= static_cast<double>(j) / w;
  return acc;
}

}  // namespace

AnalyticFunction AnalyticFunction::exponential() {
  return AnalyticFunction(FunctionKind::Exponential, 0, {}, Complex(0.0, 0.0));
}

AnalyticFunction AnalyticFunction::sine() {
  return AnalyticFunction(FunctionKind::Sine, 0, {}, Complex(0.0, 0.0));
}

AnalyticFunction AnalyticFunction::cosine() {
  return AnalyticFunction(FunctionKind::Cosine, 0, {}, Complex(0.0, 0.0));
}

AnalyticFunction AnalyticFunction::logarithm() {
  return AnalyticFunction(FunctionKind::Logarithm, 0, {}, Complex(0.0, 0.0));
}

AnalyticFunction AnalyticFunction::monomial(int degree) {
  if (degree < 0) throw Error("monomial degree must be nonnegative");
  return AnalyticFunction(FunctionKind::Monomial, degree, {}, Complex(0.0, 0.0));
}

AnalyticFunction AnalyticFunction::polynomial(std::vector<Complex> coefficients) {
  if (coefficients.empty()) throw Error("polynomial coefficient list must be non-empty");
  return AnalyticFunction(FunctionKind::Polynomial, 0, std::move(coefficients),
                          Complex(0.0, 0.0));
}

AnalyticFunction AnalyticFunction::reciprocal_shift(Complex pole) {
  return AnalyticFunction(FunctionKind::ReciprocalShift, 0, {}, pole);
}

std::optional<int> AnalyticFunction::polynomial_degree() const {
  if (kind_ == FunctionKind::Monomial) return degree_;
  if (kind_ == FunctionKind::Polynomial) {
    int deg = 0;
    for (int j = 0; j < static_cast<int>(coeffs_.size()); ++j) {
      if (coeffs_[j] != Complex(0.0, 0.0)) deg = j;
    }
    return deg;
  }
  return std::nullopt;
}

double AnalyticFunction::excluded_distance(Complex z) const {
  switch (kind_) {
    case FunctionKind::Logarithm:
      return z.real() > 0.0 ? std::abs(z) : std::abs(z.imag());
    case FunctionKind::ReciprocalShift:
      return std::abs(z - pole_);
    default:
      return kInf;
  }
}

bool AnalyticFunction::in_domain(Complex z) const {
  switch (kind_) {
    case FunctionKind::Logarithm:
      return !(z.imag() == 0.0 && z.real() <= 0.0);
    case FunctionKind::ReciprocalShift:
      return z != pole_;
    default:
      return true;
  }
}

Complex AnalyticFunction::nearest_excluded(Complex z) const {
  switch (kind_) {
    case FunctionKind::Logarithm:
      return z.real() <= 0.0 ? Complex(z.real(), 0.0) : Complex(0.0, 0.0);
    case FunctionKind::ReciprocalShift:
      return pole_;
    default:
      return Complex(kInf, kInf);
  }
}

void AnalyticFunction::require_in_domain(Complex z) const {
  if (in_domain(z)) return;
  if (kind_ == FunctionKind::Logarithm) {
    throw DomainError("logarithm evaluated on its branch cut at " + format_scalar_exact(z));
  }
  throw DomainError("reciprocal shift evaluated at its pole " + format_scalar_exact(z));
}

Complex AnalyticFunction::eval(Complex z) const {
  require_in_domain(z);
  switch (kind_) {
    case FunctionKind::Exponential:
      return std::exp(z);
    case FunctionKind::Sine:
      return std::sin(z);
    case FunctionKind::Cosine:
      return std::cos(z);
    case FunctionKind::Logarithm:
      return std::log(z);
    case FunctionKind::Monomial:
      return ipow(z, degree_);
    case FunctionKind::Polynomial: {
      Complex acc(0.0, 0.0);
      for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j) {
        acc = acc * z + coeffs_[j];
      }
      return acc;
    }
    case FunctionKind::ReciprocalShift:
      return Complex(1.0, 0.0) / (z - pole_);
  }
  throw Error("unreachable function kind");
}

Complex AnalyticFunction::derivative(int order, Complex z) const {
  if (order < 0) throw Error("derivative order must be nonnegative");
  if (order == 0) return eval(z);
  require_in_domain(z);
  switch (kind_) {
    case FunctionKind::Exponential:
      return std::exp(z);
    case FunctionKind::Sine:
      switch (order % 4) {
        case 0: return std::sin(z);
        case 1: return std::cos(z);
        case 2: return -std::sin(z);
        default: return -std::cos(z);
      }
    case FunctionKind::Cosine:
      switch (order % 4) {
        case 0: return std::cos(z);
        case 1: return -std::sin(z);
        case 2: return -std::cos(z);
        default: return std::sin(z);
      }
    case FunctionKind::Logarithm: {
      // (-1)^(k-1) (k-1)! / z^k
      const double sign = (order % 2 == 1) ? 1.0 : -1.0;
      return sign * factorial_over_power(order - 1, z);
    }
    case FunctionKind::Monomial:
      if (order > degree_) return Complex(0.0, 0.0);
      return falling_factorial(degree_, order) * ipow(z, degree_ - order);
    case FunctionKind::Polynomial: {
      Complex acc(0.0, 0.0);
      for (int j = static_cast<int>(coeffs_.size()) - 1; j >= order; --j) {
        acc = acc * z + coeffs_[j] * falling_factorial(j, order);
      }
      return acc;
    }
    case FunctionKind::ReciprocalShift: {
      const double sign = (order % 2 == 0) ? 1.0 : -1.0;
      return sign * factorial_over_power(order, z - pole_);
    }
  }
  throw Error("unreachable function kind");
}

Complex AnalyticFunction::taylor_coefficient(int order, Complex center) const {
  if (order < 0) throw Error("taylor coefficient order must be nonnegative");
  require_in_domain(center);
  switch (kind_) {
    case FunctionKind::Exponential:
      return std::exp(center) * inverse_factorial(order);
    case FunctionKind::Sine:
    case FunctionKind::Cosine:
      return derivative(order, center) * inverse_factorial(order);
    case FunctionKind::Logarithm: {
      if (order == 0) return std::log(center);
      const double sign = (order % 2 == 1) ? 1.0 : -1.0;
      return sign / (static_cast<double>(order) * ipow(center, order));
    }
    case FunctionKind::Monomial:
      if (order > degree_) return Complex(0.0, 0.0);
      return binomial(degree_, order) * ipow(center, degree_ - order);
    case FunctionKind::Polynomial: {
      Complex acc(0.0, 0.0);
      for (int j = static_cast<int>(coeffs_.size()) - 1; j >= order; --j) {
        acc = acc * center + coeffs_[j] * binomial(j, order);
      }
      return acc;
    }
    case FunctionKind::ReciprocalShift: {
      const double sign = (order % 2 == 0) ? 1.0 : -1.0;
      return sign / ipow(center - pole_, order + 1);
    }
  }
  throw Error("unreachable function kind");
}

double AnalyticFunction::taylor_radius(Complex center) const {
  return excluded_distance(center);
}

std::string AnalyticFunction::spec_string() const {
  switch (kind_) {
    case FunctionKind::Exponential: return "exp";
    case FunctionKind::Sine: return "sin";
    case FunctionKind::Cosine: return "cos";
    case FunctionKind::Logarithm: return "log";
    case FunctionKind::Monomial: return "pow:" + std::to_string(degree_);
    case FunctionKind::Polynomial: {
      std::string out = "poly:";
      for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (j > 0) out += ',';
        out += format_scalar_exact(coeffs_[j]);
      }
      return out;
    }
    case FunctionKind::ReciprocalShift:
      return "recip:" + format_scalar_exact(pole_);
  }
  throw Error("unreachable function kind");
}

namespace {

// Splits on commas that are not inside a (re,im) pair.
std::vector<std::string_view> split_scalar_list(std::string_view body) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(body.substr(start));
  return parts;
}

}  // namespace

AnalyticFunction parse_function_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  if (name == "exp" && colon == std::string_view::npos) return AnalyticFunction::exponential();
  if (name == "sin" && colon == std::string_view::npos) return AnalyticFunction::sine();
  if (name == "cos" && colon == std::string_view::npos) return AnalyticFunction::cosine();
  if (name == "log" && colon == std::string_view::npos) return AnalyticFunction::logarithm();
  if (colon == std::string_view::npos) {
    throw ParseError("unknown function spec '" + std::string(spec) + "'");
  }
  const std::string_view body = spec.substr(colon + 1);
  if (name == "pow") {
    auto value = parse_scalar_token(body);
    if (!value || value->imag() != 0.0 || value->real() < 0.0 ||
        value->real() != std::floor(value->real())) {
      throw ParseError("pow spec needs a nonnegative integer, got '" + std::string(body) + "'");
    }
    return AnalyticFunction::monomial(static_cast<int>(value->real()));
  }
  if (name == "poly") {
    std::vector<Complex> coeffs;
    for (std::string_view part : split_scalar_list(body)) {
      auto value = parse_scalar_token(part);
      if (!value) {
        throw ParseError("bad polynomial coefficient '" + std::string(part) + "'");
      }
      coeffs.push_back(*value);
    }
    return AnalyticFunction::polynomial(std::move(coeffs));
  }
  if (name == "recip") {
    auto value = parse_scalar_token(body);
    if (!value) throw ParseError("bad recip pole '" + std::string(body) + "'");
    return AnalyticFunction::reciprocal_shift(*value);
  }
  throw ParseError("unknown function spec '" + std::string(spec) + "'");
}

}  // namespace matfun
