#include "matfun/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "matfun/divided_difference.hpp"
#include "matfun/parallel.hpp"

namespace matfun {

namespace {

// Divided-difference coefficients keyed by the sorted index multiset; the
// value is permutation-invariant, so one entry serves every path visiting the
// same indices.
class CoefficientTable {
 public:
  CoefficientTable(const AnalyticFunction& f, const DiagonalSpectrum& lambda, int order)
      : node_count_(order + 1) {
    std::vector<std::vector<int>> multisets;
    std::vector<int> current(node_count_);
    collect(lambda.size(), 0, 0, current, multisets);
    values_.resize(multisets.size());

    par::map_index(std::span<Complex>(values_),
                   [&](std::ptrdiff_t j) {
                     return coefficient_a(f, lambda, multisets[j]);
                   });
    for (std::size_t j = 0; j < multisets.size(); ++j) {
      index_.emplace(std::move(multisets[j]), values_[j]);
    }
  }

  Complex lookup(std::vector<int>& sorted_key) const {
    return index_.at(sorted_key);
  }

  int node_count() const { return node_count_; }

 private:
  void collect(int n, int position, int minimum, std::vector<int>& current,
               std::vector<std::vector<int>>& out) const {
    if (position == node_count_) {
      out.push_back(current);
      return;
    }
    for (int i = minimum; i < n; ++i) {
      current[position] = i;
      collect(n, position + 1, i, current, out);
    }
  }

  int node_count_;
  std::vector<Complex> values_;
  std::map<std::vector<int>, Complex> index_;
};

// Order-n term by summing coefficient * tau-products over all interior index
// paths, entries computed independently and each entry's paths accumulated in
// lexicographic order.
Matrix path_sum_term(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                     const PerturbationMatrix& tau, int order) {
  const int n = lambda.size();
  const CoefficientTable table(f, lambda, order);
  const Matrix& t = tau.entries();

  Matrix term(n, n);
  par::map_index(std::span<Complex>(term.data(), static_cast<std::size_t>(n) * n),
                 [&](std::ptrdiff_t flat) {
                   // Eigen stores column-major: flat = i + p*n
                   const int i = static_cast<int>(flat % n);
                   const int p = static_cast<int>(flat / n);

                   std::vector<int> interior(order - 1, 0);
                   std::vector<int> key(order + 1);
                   Complex acc(0.0, 0.0);
                   while (true) {
                     Complex product = Complex(1.0, 0.0);
                     int previous = i;
                     for (int m : interior) {
                       product *= t(previous, m);
                       previous = m;
                     }
                     product *= t(previous, p);

                     key[0] = i;
                     std::copy(interior.begin(), interior.end(), key.begin() + 1);
                     key[order] = p;
                     std::sort(key.begin(), key.end());
                     acc += table.lookup(key) * product;

                     int j = order - 2;
                     while (j >= 0 && interior[j] == n - 1) {
                       interior[j] = 0;
                       --j;
                     }
                     if (j < 0) break;
                     ++interior[j];
                   }
                   return acc;
                 });
  return term;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const int n = static_cast<int>(x.size());
  double mx = 0.0, my = 0.0;
  for (int j = 0; j < n; ++j) {
    mx += x[j];
    my += y[j];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (int j = 0; j < n; ++j) {
    sxy += (x[j] - mx) * (y[j] - my);
    sxx += (x[j] - mx) * (x[j] - mx);
  }
  return sxy / sxx;
}

}  // namespace

ExpansionResult expand(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                       const PerturbationMatrix& tau, int max_order,
                       const ExpandOptions& options) {
  if (max_order < 1) throw Error("expansion order must be positive");
  if (lambda.size() != tau.size()) {
    throw DimensionError("spectrum and perturbation dimensions differ");
  }
  const int n = lambda.size();

  Contour contour;
  if (options.strategy == Strategy::Quadrature) {
    contour = choose_contour(lambda, f, tau.frobenius_norm(), options.quadrature);
  } else {
    double work = 0.0;
    for (int order = 1; order <= max_order; ++order) {
      work += std::pow(static_cast<double>(n), order + 1);
    }
    if (work > options.path_work_cap) {
      throw BudgetError("path-sum work estimate " + std::to_string(work) +
                        " exceeds cap " + std::to_string(options.path_work_cap));
    }
  }

  ExpansionResult result;
  result.strategy = options.strategy;

  Matrix order0 = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) order0(i, i) = f.eval(lambda[i]);
  result.terms.push_back(std::move(order0));
  result.term_norms.push_back(result.terms[0].norm());

  const double threshold =
      std::max(options.stop_tol_factor * result.term_norms[0], 1e-300);

  for (int order = 1; order <= max_order; ++order) {
    Matrix term = options.strategy == Strategy::Quadrature
                      ? resolvent_term(f, lambda, tau, order, contour, options.quadrature)
                      : path_sum_term(f, lambda, tau, order);
    result.term_norms.push_back(term.norm());
    result.terms.push_back(std::move(term));
    if (result.term_norms.back() < threshold) {
      result.converged = true;
      break;
    }
  }

  result.truncated_sum = Matrix::Zero(n, n);
  for (const Matrix& term : result.terms) result.truncated_sum += term;
  return result;
}

Matrix matrix_taylor_oracle(const AnalyticFunction& f, const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionError("taylor oracle needs a nonempty square matrix");
  }
  if (!(tol > 0.0)) throw Error("taylor oracle tolerance must be positive");
  const int n = static_cast<int>(m.rows());
  const Complex center = m.trace() / static_cast<double>(n);
  const Matrix shifted = m - center * Matrix::Identity(n, n);

  const double radius = f.taylor_radius(center);
  const double norm = shifted.norm();
  if (!(norm < 0.9 * radius)) {
    throw RadiusError("shifted norm " + std::to_string(norm) +
                      " is not inside 0.9 of the Taylor radius");
  }

  constexpr int kTermCap = 10000;
  Matrix acc = f.taylor_coefficient(0, center) * Matrix::Identity(n, n);
  Matrix power = Matrix::Identity(n, n);
  int below = 0;
  for (int k = 1; k <= kTermCap; ++k) {
    power = power * shifted;
    const Matrix term = f.taylor_coefficient(k, center) * power;
    acc += term;
    if (max_abs(term) < tol) {
      if (++below >= 3) return acc;
    } else {
      below = 0;
    }
  }
  throw ConvergenceError("matrix Taylor series did not settle within 10000 terms");
}

ConvergenceProfile convergence_profile(const AnalyticFunction& f,
                                       const DiagonalSpectrum& lambda,
                                       const PerturbationMatrix& tau, int max_order,
                                       std::span<const double> scales,
                                       const ExpandOptions& options) {
  if (max_order < 1) throw Error("profile order must be positive");
  if (scales.size() < 2) throw Error("profile needs at least two scales");
  for (double s : scales) {
    if (!(s > 0.0)) throw Error("profile scales must be positive");
  }

  ExpandOptions full = options;
  full.stop_tol_factor = 0.0;  // keep every order

  ConvergenceProfile profile;
  profile.scales.assign(scales.begin(), scales.end());
  profile.errors.resize(scales.size());
  std::vector<double> floors(scales.size());

  for (std::size_t si = 0; si < scales.size(); ++si) {
    const PerturbationMatrix scaled(Matrix(scales[si] * tau.entries()));
    const Matrix perturbed = lambda.as_matrix() + scaled.entries();
    const Matrix reference = matrix_taylor_oracle(f, perturbed, 1e-13);
    floors[si] = 1e-13 * (1.0 + max_abs(reference));

    const ExpansionResult expansion = expand(f, lambda, scaled, max_order, full);
    Matrix cumulative = expansion.terms[0];
    profile.errors[si].resize(max_order);
    for (int order = 1; order <= max_order; ++order) {
      if (order < static_cast<int>(expansion.terms.size())) {
        cumulative += expansion.terms[order];
      }
      profile.errors[si][order - 1] = max_abs(cumulative - reference);
    }
  }

  profile.slopes.assign(max_order, std::numeric_limits<double>::quiet_NaN());
  profile.exact.assign(max_order, false);
  for (int order = 1; order <= max_order; ++order) {
    std::vector<double> log_scale;
    std::vector<double> log_error;
    for (std::size_t si = 0; si < scales.size(); ++si) {
      const double err = profile.errors[si][order - 1];
      if (err > floors[si]) {
        log_scale.push_back(std::log(scales[si]));
        log_error.push_back(std::log(err));
      }
    }
    if (log_scale.size() < 2) {
      profile.exact[order - 1] = true;
    } else {
      profile.slopes[order - 1] = least_squares_slope(log_scale, log_error);
    }
  }
  return profile;
}

}  // namespace matfun
