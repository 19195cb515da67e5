#pragma once

#include <span>
#include <vector>

#include "matfun/analytic_function.hpp"
#include "matfun/types.hpp"

namespace matfun {

// Circular integration contour. Invariants: every spectrum point strictly
// inside with margin ratio <= 0.8, node_count a power of two, and no point of
// the closed disk in the function's excluded set.
struct Contour {
  Complex center;
  double radius = 0.0;
  int node_count = 64;
};

struct QuadratureOptions {
  int initial_nodes = 64;
  int max_nodes = 4096;
  double tolerance = 1e-12;
  double radius_factor = 1.25;  // >= 1.25 keeps the 0.8 enclosure margin
};

// Node-doubling history of a converged scalar quadrature.
struct QuadratureTrace {
  std::vector<int> node_counts;
  std::vector<Complex> estimates;
};

// Circle centered at the spectral mean with radius
// radius_factor * (max_i |lambda_i - center| + tau_norm), shrunk or shifted
// to clear the excluded set while keeping the margin. Throws ContourError
// when no circle satisfies both constraints.
Contour choose_contour(const DiagonalSpectrum& lambda, const AnalyticFunction& f,
                       double tau_norm, const QuadratureOptions& options = {});

// (1/2pi i) of f(z) dz / prod_j (z - pole_j) by the trapezoidal rule, node
// count doubled until successive estimates agree to tolerance. The result is
// the divided difference of f over the pole list.
Complex cauchy_coefficient(const AnalyticFunction& f, std::span<const Complex> poles,
                           const Contour& contour, const QuadratureOptions& options = {},
                           QuadratureTrace* trace = nullptr);

// Single fixed-node-count estimate, no convergence control.
Complex cauchy_coefficient_nodes(const AnalyticFunction& f, std::span<const Complex> poles,
                                 const Contour& contour, int node_count);

// Order-n term of the resolvent expansion:
// (1/2pi i) of f(z) R(z) (tau R(z))^n dz with R(z) = diag(1/(z - lambda_i)).
Matrix resolvent_term(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                      const PerturbationMatrix& tau, int order, const Contour& contour,
                      const QuadratureOptions& options = {});

Matrix resolvent_term_nodes(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                            const PerturbationMatrix& tau, int order,
                            const Contour& contour, int node_count);

// Full functional calculus (1/2pi i) of f(z) (zI - M)^{-1} dz via dense
// factor-and-solve per node. The caller must supply a contour enclosing the
// spectrum of M (build it with tau_norm >= a matrix norm of the off-diagonal
// part); the operation itself only verifies that each shifted solve is
// well-conditioned.
Matrix matrix_function_resolvent(const AnalyticFunction& f, const Matrix& m,
                                 const Contour& contour,
                                 const QuadratureOptions& options = {});

Matrix matrix_function_resolvent_nodes(const AnalyticFunction& f, const Matrix& m,
                                       const Contour& contour, int node_count);

}  // namespace matfun
