#pragma once

#include <span>
#include <vector>

#include "matfun/analytic_function.hpp"
#include "matfun/contour.hpp"
#include "matfun/types.hpp"

namespace matfun {

enum class Strategy {
  PathSum,     // divided-difference coefficients summed over index paths
  Quadrature,  // contour integrals of resolvent products
};

struct ExpandOptions {
  Strategy strategy = Strategy::Quadrature;
  // Early stop when a term's Frobenius norm drops below
  // stop_tol_factor * ||terms[0]||_F (floor 1e-300).
  double stop_tol_factor = 1e-14;
  // Path-sum budget: sum over orders of N^(n+1) enumerated paths.
  double path_work_cap = 1e8;
  QuadratureOptions quadrature{};
};

struct ExpansionResult {
  std::vector<Matrix> terms;   // terms[0] = diag f(lambda_i), then order 1..
  Matrix truncated_sum;
  std::vector<double> term_norms;  // Frobenius norm per term
  Strategy strategy = Strategy::Quadrature;
  bool converged = false;  // last term norm fell below the stopping threshold
};

// Order-by-order expansion of f(lambda + tau) around the diagonal matrix.
ExpansionResult expand(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                       const PerturbationMatrix& tau, int max_order,
                       const ExpandOptions& options = {});

// Independent ground truth: Taylor series of f at the spectral-mean shift,
// summed until three consecutive terms fall below tol (term cap 10^4).
// Requires ||M - cI||_F < 0.9 * (Taylor radius of f at c); entire functions
// accept any finite norm.
Matrix matrix_taylor_oracle(const AnalyticFunction& f, const Matrix& m, double tol);

// Truncation-order scaling diagnostic: errors of order-n truncations against
// the Taylor oracle for tau scaled by each factor, and the fitted slope of
// log(error) vs log(scale) per order.
struct ConvergenceProfile {
  std::vector<double> scales;
  std::vector<std::vector<double>> errors;  // errors[scale_index][order-1]
  std::vector<double> slopes;               // per order 1..max_order; NaN when exact
  std::vector<bool> exact;                  // true when errors sit at machine floor
};

ConvergenceProfile convergence_profile(const AnalyticFunction& f,
                                       const DiagonalSpectrum& lambda,
                                       const PerturbationMatrix& tau, int max_order,
                                       std::span<const double> scales,
                                       const ExpandOptions& options = {});

}  // namespace matfun
