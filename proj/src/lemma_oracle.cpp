#include "matfun/lemma_oracle.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "matfun/divided_difference.hpp"

namespace matfun {

namespace {

void require_nonzero(const DiagonalSpectrum& lambda) {
  if (lambda.has_zero_entry()) {
    throw ZeroEigenvalueError("lemma route requires a spectrum with no zero entries");
  }
}

double binomial_count(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double acc = 1.0;
  for (int j = 1; j <= k; ++j) acc = acc * (n - k + j) / j;
  return acc;
}

void check_budget(double work, const LemmaOptions& options, const char* what) {
  if (work > options.work_cap) {
    throw BudgetError(std::string(what) + " work estimate " + std::to_string(work) +
                      " exceeds cap " + std::to_string(options.work_cap));
  }
}

// Ascending k-subsets of {0..limit-1} in lexicographic order.
void for_each_combination(int limit, int k,
                          const std::function<void(std::span<const int>)>& fn) {
  std::vector<int> subset(k);
  for (int j = 0; j < k; ++j) subset[j] = j;
  while (true) {
    fn(subset);
    int j = k - 1;
    while (j >= 0 && subset[j] == limit - k + j) --j;
    if (j < 0) return;
    ++subset[j];
    for (int l = j + 1; l < k; ++l) subset[l] = subset[l - 1] + 1;
  }
}

std::vector<Complex> path_values(const DiagonalSpectrum& lambda, std::span<const int> path) {
  if (path.size() < 2) throw Error("path needs at least two indices");
  std::vector<Complex> values;
  values.reserve(path.size());
  for (int index : path) {
    if (index < 0 || index >= lambda.size()) {
      throw DimensionError("path index " + std::to_string(index) +
                           " outside spectrum of size " + std::to_string(lambda.size()));
    }
    const Complex value = lambda[index];
    if (value == Complex(0.0, 0.0)) {
      throw ZeroEigenvalueError("path touches a zero eigenvalue");
    }
    values.push_back(value);
  }
  return values;
}

Complex b_direct_values(std::span<const Complex> values, int n,
                        const LemmaOptions& options) {
  const int k = static_cast<int>(values.size()) - 1;
  if (n < k) return Complex(0.0, 0.0);  // empty ordered sum

  check_budget(binomial_count(n, k) * k, options, "nested B sum");

  std::vector<Complex> ratios(k);
  Complex prefactor(1.0, 0.0);
  for (int j = 0; j < k; ++j) {
    ratios[j] = values[j + 1] / values[j];
    prefactor *= values[j];
  }
  prefactor = Complex(1.0, 0.0) / prefactor;

  Complex sum(0.0, 0.0);
  for_each_combination(n, k, [&](std::span<const int> qs) {
    // ratio_j carries exponent q_{k-1-j}: highest exponent on the first ratio
    Complex term(1.0, 0.0);
    for (int j = 0; j < k; ++j) term *= ipow(ratios[j], qs[k - 1 - j]);
    sum += term;
  });
  return prefactor * sum;
}

Complex b_recurrence_values(std::span<const Complex> values, int n,
                            const LemmaOptions& options) {
  const int k = static_cast<int>(values.size()) - 1;
  if (n < k) return Complex(0.0, 0.0);
  if (k == 1) {
    Complex sum(0.0, 0.0);
    Complex power(1.0, 0.0);
    const Complex ratio = values[1] / values[0];
    for (int q = 0; q < n; ++q) {
      sum += power;
      power *= ratio;
    }
    return sum / values[0];
  }
  if (nodes_confluent(values[0], values[1])) {
    return b_direct_values(values, n, options);
  }
  // drop m_1 from the head, then drop i
  std::vector<Complex> without_m1;
  without_m1.reserve(values.size() - 1);
  without_m1.push_back(values[0]);
  without_m1.insert(without_m1.end(), values.begin() + 2, values.end());
  const Complex upper = b_recurrence_values(without_m1, n, options);
  const Complex lower = b_recurrence_values(values.subspan(1), n, options);
  const Complex ratio = values[1] / values[0];
  return (upper - ipow(ratio, n) * lower) / (values[0] - values[1]);
}

}  // namespace

Matrix epsilon_matrix(const DiagonalSpectrum& lambda, const PerturbationMatrix& tau,
                      int q) {
  if (q < 0) throw Error("epsilon power index must be nonnegative");
  if (lambda.size() != tau.size()) {
    throw DimensionError("spectrum and perturbation dimensions differ");
  }
  require_nonzero(lambda);
  const int n = lambda.size();
  Matrix eps(n, n);
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < n; ++p) {
      eps(i, p) = ipow(lambda[p] / lambda[i], q) / lambda[i] * tau.entries()(i, p);
    }
  }
  return eps;
}

Matrix expand_monomial_lemma(const DiagonalSpectrum& lambda, const PerturbationMatrix& tau,
                             int p, int max_k, const LemmaOptions& options) {
  if (p < 1) throw Error("monomial power must be positive for the lemma expansion");
  if (max_k < 1 || max_k > p) {
    throw Error("epsilon-product length must satisfy 1 <= max_k <= p");
  }
  if (lambda.size() != tau.size()) {
    throw DimensionError("spectrum and perturbation dimensions differ");
  }
  require_nonzero(lambda);

  const int n = lambda.size();
  const double n3 = static_cast<double>(n) * n * n;
  double work = 0.0;
  for (int k = 1; k <= max_k; ++k) work += binomial_count(p, k) * k * n3;
  check_budget(work, options, "lemma expansion");

  std::vector<Matrix> eps;
  eps.reserve(p);
  for (int q = 0; q < p; ++q) eps.push_back(epsilon_matrix(lambda, tau, q));

  Matrix series = Matrix::Identity(n, n);
  for (int k = 1; k <= max_k; ++k) {
    for_each_combination(p, k, [&](std::span<const int> qs) {
      Matrix product = eps[qs[k - 1]];  // descending subscript leftmost
      for (int j = k - 2; j >= 0; --j) product = product * eps[qs[j]];
      series += product;
    });
  }

  Vector powers(n);
  for (int i = 0; i < n; ++i) powers[i] = ipow(lambda[i], p);
  return powers.asDiagonal() * series;
}

bool conjugation_identity_check(const DiagonalSpectrum& lambda,
                                const PerturbationMatrix& tau, std::span<const int> qs) {
  if (qs.empty()) throw Error("conjugation identity needs at least one subscript");
  require_nonzero(lambda);
  const int n = lambda.size();

  Matrix left = lambda.as_matrix();
  for (int q : qs) left = left * epsilon_matrix(lambda, tau, q);
  left = left * lambda.as_matrix();

  Vector squares(n);
  for (int i = 0; i < n; ++i) squares[i] = lambda[i] * lambda[i];
  Matrix right = Matrix(squares.asDiagonal());
  for (int q : qs) right = right * epsilon_matrix(lambda, tau, q + 1);

  const double scale = std::max({max_abs(left), max_abs(right), 1e-300});
  return max_abs(left - right) <= 1e-12 * scale;
}

Complex path_coefficient_b_direct(const DiagonalSpectrum& lambda, std::span<const int> path,
                                  int n, const LemmaOptions& options) {
  if (n < 0) throw Error("monomial power must be nonnegative");
  return b_direct_values(path_values(lambda, path), n, options);
}

Complex path_coefficient_b(const DiagonalSpectrum& lambda, std::span<const int> path,
                           int n, const LemmaOptions& options) {
  if (n < 0) throw Error("monomial power must be nonnegative");
  return b_recurrence_values(path_values(lambda, path), n, options);
}

Complex coefficient_from_b(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                           std::span<const int> path, int n_max,
                           const LemmaOptions& options) {
  if (n_max < 1) throw Error("series truncation order must be positive");
  const std::vector<Complex> values = path_values(lambda, path);
  const Complex head = values.front();

  if (auto degree = f.polynomial_degree()) {
    Complex sum(0.0, 0.0);
    for (int n = 0; n <= *degree; ++n) {
      sum += f.taylor_coefficient(n, Complex(0.0, 0.0)) * ipow(head, n) *
             b_recurrence_values(values, n, options);
    }
    return sum;
  }

  Complex sum(0.0, 0.0);
  int below = 0;
  for (int n = 0; n <= n_max; ++n) {
    const Complex term = f.taylor_coefficient(n, Complex(0.0, 0.0)) * ipow(head, n) *
                         b_recurrence_values(values, n, options);
    sum += term;
    if (std::abs(term) <= 1e-14 * std::max(std::abs(sum), 1e-300)) {
      if (++below >= 3) return sum;
    } else {
      below = 0;
    }
  }
  throw ConvergenceError("B-coefficient series did not settle within " +
                         std::to_string(n_max) + " terms");
}

}  // namespace matfun
