#include "matfun/contour.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <optional>

#include "matfun/parallel.hpp"
#include "matfun/text_format.hpp"

namespace matfun {

namespace {

constexpr double kMarginRatio = 0.8;
constexpr double kExcludedSafety = 0.95;   // radius <= 0.95 * distance to excluded set
constexpr double kPoleProximity = 1e-6;    // node-to-pole guard, relative to radius
constexpr double kRcondLimit = 1e-14;      // condition estimate cap 1e14
constexpr std::ptrdiff_t kReduceBlock = 256;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate_options(const QuadratureOptions& options) {
  if (!power_of_two(options.initial_nodes) || options.initial_nodes < 8) {
    throw Error("initial quadrature node count must be a power of two >= 8");
  }
  if (!power_of_two(options.max_nodes) || options.max_nodes < 2 * options.initial_nodes) {
    throw Error("max quadrature node count must be a power of two >= twice the initial count");
  }
  if (!(options.tolerance > 0.0)) throw Error("quadrature tolerance must be positive");
  if (!(options.radius_factor >= 1.25)) {
    throw Error("contour radius factor must be at least 1.25");
  }
}

double max_distance(const DiagonalSpectrum& lambda, Complex center) {
  double maxdist = 0.0;
  for (int i = 0; i < lambda.size(); ++i) {
    maxdist = std::max(maxdist, std::abs(lambda[i] - center));
  }
  return maxdist;
}

// Smallest and preferred radii at a candidate center; nullopt when no radius
// satisfies both the margin and the excluded-set constraint.
std::optional<double> feasible_radius(const DiagonalSpectrum& lambda,
                                      const AnalyticFunction& f, double tau_norm,
                                      Complex center, double radius_factor) {
  const double maxdist = max_distance(lambda, center);
  const double enclosing = maxdist + tau_norm;
  const double floor_radius = 1e-3 * std::max(1.0, std::abs(center));
  const double preferred = std::max(radius_factor * enclosing, floor_radius);
  if (f.entire()) return preferred;

  const double required = std::max(maxdist / kMarginRatio, enclosing / 0.98);
  const double allowed = kExcludedSafety * f.excluded_distance(center);
  const double radius = std::min(preferred, allowed);
  if (radius >= required && radius > 0.0) return radius;
  return std::nullopt;
}

double node_pole_min_distance(Complex center, double radius, int node_count,
                              std::span<const Complex> poles) {
  double min_dist = std::numeric_limits<double>::infinity();
  for (int k = 0; k < node_count; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / node_count;
    const Complex z = center + radius * std::polar(1.0, theta);
    for (Complex pole : poles) min_dist = std::min(min_dist, std::abs(z - pole));
  }
  return min_dist;
}

// Half-step phase rotation when a node falls too close to a pole.
double phase_offset(const Contour& contour, int node_count, std::span<const Complex> poles) {
  if (poles.empty()) return 0.0;
  const double guard = contour.radius * kPoleProximity;
  if (node_pole_min_distance(contour.center, contour.radius, node_count, poles) < guard) {
    return 0.5;
  }
  return 0.0;
}

// Doubles the node count until two successive estimates agree to tolerance.
template <class Value, class Eval, class DiffNorm, class Mag, class Record>
Value converge_doubling(const Contour& contour, const QuadratureOptions& options,
                        Eval&& eval, DiffNorm&& diff_norm, Mag&& mag, Record&& record) {
  int nodes = contour.node_count;
  if (!power_of_two(nodes) || nodes < 8) {
    throw Error("contour node count must be a power of two >= 8");
  }
  Value previous = eval(nodes);
  record(nodes, previous);
  while (2 * nodes <= options.max_nodes) {
    nodes *= 2;
    Value current = eval(nodes);
    record(nodes, current);
    if (diff_norm(current, previous) <= options.tolerance * (1.0 + mag(current))) {
      return current;
    }
    previous = std::move(current);
  }
  throw ConvergenceError("quadrature did not converge within " +
                         std::to_string(options.max_nodes) + " nodes");
}

}  // namespace

Contour choose_contour(const DiagonalSpectrum& lambda, const AnalyticFunction& f,
                       double tau_norm, const QuadratureOptions& options) {
  validate_options(options);
  if (!(tau_norm >= 0.0)) throw Error("tau norm must be nonnegative");

  const Complex mean = lambda.values().mean();
  if (auto radius = feasible_radius(lambda, f, tau_norm, mean, options.radius_factor)) {
    return Contour{mean, *radius, options.initial_nodes};
  }

  // Shift the center away from the excluded set, trying progressively larger
  // steps in deterministic direction order.
  const Complex nearest = f.nearest_excluded(mean);
  Complex away = mean - nearest;
  const double away_norm = std::abs(away);
  away = away_norm > 0.0 ? away / away_norm : Complex(1.0, 0.0);
  const double base =
      std::max(max_distance(lambda, mean) + tau_norm, std::max(1.0, std::abs(mean)));
  const Complex directions[] = {away, Complex(1.0, 0.0), Complex(0.0, 1.0),
                                Complex(0.0, -1.0), Complex(-1.0, 0.0)};
  for (Complex direction : directions) {
    for (double step : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      const Complex center = mean + step * base * direction;
      if (auto radius =
              feasible_radius(lambda, f, tau_norm, center, options.radius_factor)) {
        return Contour{center, *radius, options.initial_nodes};
      }
    }
  }
  throw ContourError("no circle encloses the spectrum with margin while avoiding "
                     "the excluded set of " + f.spec_string());
}

namespace {

Complex cauchy_sum(const AnalyticFunction& f, std::span<const Complex> poles,
                   const Contour& contour, int node_count) {
  const double offset = phase_offset(contour, node_count, poles);
  Complex acc(0.0, 0.0);
  for (int k = 0; k < node_count; ++k) {
    const double theta = 2.0 * std::numbers::pi * (k + offset) / node_count;
    const Complex unit = std::polar(1.0, theta);
    const Complex z = contour.center + contour.radius * unit;
    Complex denominator(1.0, 0.0);
    for (Complex pole : poles) denominator *= (z - pole);
    acc += unit * f.eval(z) / denominator;
  }
  return acc * (contour.radius / node_count);
}

}  // namespace

Complex cauchy_coefficient_nodes(const AnalyticFunction& f, std::span<const Complex> poles,
                                 const Contour& contour, int node_count) {
  if (poles.empty()) throw Error("cauchy coefficient needs at least one pole");
  return cauchy_sum(f, poles, contour, node_count);
}

Complex cauchy_coefficient(const AnalyticFunction& f, std::span<const Complex> poles,
                           const Contour& contour, const QuadratureOptions& options,
                           QuadratureTrace* trace) {
  validate_options(options);
  if (poles.empty()) throw Error("cauchy coefficient needs at least one pole");
  for (Complex pole : poles) {
    if (std::abs(pole - contour.center) >= contour.radius) {
      throw Error("pole " + format_scalar_exact(pole) + " lies outside the contour");
    }
  }
  return converge_doubling<Complex>(
      contour, options, [&](int nodes) { return cauchy_sum(f, poles, contour, nodes); },
      [](Complex a, Complex b) { return std::abs(a - b); },
      [](Complex a) { return std::abs(a); },
      [&](int nodes, Complex estimate) {
        if (trace) {
          trace->node_counts.push_back(nodes);
          trace->estimates.push_back(estimate);
        }
      });
}

namespace {

Matrix resolvent_term_sum(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                          const PerturbationMatrix& tau, int order,
                          const Contour& contour, int node_count) {
  const int n = lambda.size();
  std::vector<Complex> poles(lambda.values().begin(), lambda.values().end());
  const double offset = phase_offset(contour, node_count, poles);

  Matrix acc = Matrix::Zero(n, n);
  par::blocked_reduce<Matrix>(
      node_count, kReduceBlock, acc,
      [&](std::ptrdiff_t k) {
        const double theta = 2.0 * std::numbers::pi * (k + offset) / node_count;
        const Complex unit = std::polar(1.0, theta);
        const Complex z = contour.center + contour.radius * unit;
        const Complex weight = unit * (contour.radius / node_count) * f.eval(z);

        Vector d(n);
        for (int i = 0; i < n; ++i) d[i] = Complex(1.0, 0.0) / (z - lambda[i]);
        const Matrix scaled = d.asDiagonal() * tau.entries();  // R tau
        Matrix product = scaled;
        for (int j = 1; j < order; ++j) product = scaled * product;
        return Matrix(weight * (product * d.asDiagonal()));
      },
      [](Matrix& sum, const Matrix& value) { sum += value; });
  return acc;
}

}  // namespace

Matrix resolvent_term_nodes(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                            const PerturbationMatrix& tau, int order,
                            const Contour& contour, int node_count) {
  if (order < 1) throw Error("resolvent term order must be positive");
  if (lambda.size() != tau.size()) {
    throw DimensionError("spectrum and perturbation dimensions differ");
  }
  return resolvent_term_sum(f, lambda, tau, order, contour, node_count);
}

Matrix resolvent_term(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                      const PerturbationMatrix& tau, int order, const Contour& contour,
                      const QuadratureOptions& options) {
  validate_options(options);
  if (order < 1) throw Error("resolvent term order must be positive");
  if (lambda.size() != tau.size()) {
    throw DimensionError("spectrum and perturbation dimensions differ");
  }
  return converge_doubling<Matrix>(
      contour, options,
      [&](int nodes) { return resolvent_term_sum(f, lambda, tau, order, contour, nodes); },
      [](const Matrix& a, const Matrix& b) { return max_abs(a - b); },
      [](const Matrix& a) { return max_abs(a); }, [](int, const Matrix&) {});
}

namespace {

Matrix resolvent_solve_sum(const AnalyticFunction& f, const Matrix& m,
                           const Contour& contour, int node_count) {
  const int n = static_cast<int>(m.rows());
  const Matrix identity = Matrix::Identity(n, n);
  Matrix acc = Matrix::Zero(n, n);
  par::blocked_reduce<Matrix>(
      node_count, kReduceBlock, acc,
      [&](std::ptrdiff_t k) {
        const double theta = 2.0 * std::numbers::pi * k / node_count;
        const Complex unit = std::polar(1.0, theta);
        const Complex z = contour.center + contour.radius * unit;
        const Complex weight = unit * (contour.radius / node_count) * f.eval(z);

        const Matrix shifted = z * identity - m;
        Eigen::PartialPivLU<Matrix> lu(shifted);
        if (!(lu.rcond() >= kRcondLimit)) {
          throw SolveError("shifted matrix numerically singular at node " +
                           format_scalar_exact(z));
        }
        return Matrix(weight * lu.solve(identity));
      },
      [](Matrix& sum, const Matrix& value) { sum += value; });
  return acc;
}

}  // namespace

Matrix matrix_function_resolvent_nodes(const AnalyticFunction& f, const Matrix& m,
                                       const Contour& contour, int node_count) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionError("matrix function needs a nonempty square matrix");
  }
  return resolvent_solve_sum(f, m, contour, node_count);
}

Matrix matrix_function_resolvent(const AnalyticFunction& f, const Matrix& m,
                                 const Contour& contour, const QuadratureOptions& options) {
  validate_options(options);
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionError("matrix function needs a nonempty square matrix");
  }
  return converge_doubling<Matrix>(
      contour, options,
      [&](int nodes) { return resolvent_solve_sum(f, m, contour, nodes); },
      [](const Matrix& a, const Matrix& b) { return max_abs(a - b); },
      [](const Matrix& a) { return max_abs(a); }, [](int, const Matrix&) {});
}

}  // namespace matfun
