#include "doctest.h"

#include <cmath>
#include <vector>

#include "matfun/expansion.hpp"
#include "matfun/lemma_oracle.hpp"
#include "test_support.hpp"

using namespace matfun;
using testing::matrix_power;

namespace {

DiagonalSpectrum spectrum(std::initializer_list<Complex> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (Complex z : values) v[i++] = z;
  return DiagonalSpectrum(std::move(v));
}

ExpandOptions with_strategy(Strategy strategy) {
  ExpandOptions options;
  options.strategy = strategy;
  return options;
}

}  // namespace

TEST_CASE("zero perturbation stops after one vanishing order") {
  const auto lambda = spectrum({Complex(0.4, 0), Complex(1.2, 0.5), Complex(-0.8, 0)});
  const PerturbationMatrix zero{Matrix(Matrix::Zero(3, 3))};
  for (Strategy strategy : {Strategy::PathSum, Strategy::Quadrature}) {
    const auto result = expand(AnalyticFunction::exponential(), lambda, zero, 5,
                               with_strategy(strategy));
    CHECK(result.converged);
    REQUIRE(result.terms.size() >= 2);
    Matrix expected = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) expected(i, i) = std::exp(lambda[i]);
    CHECK(max_abs(result.terms[0] - expected) < 1e-15);
    for (std::size_t n = 1; n < result.terms.size(); ++n) {
      CHECK(max_abs(result.terms[n]) == 0.0);
    }
    CHECK(max_abs(result.truncated_sum - expected) < 1e-15);
  }
}

TEST_CASE("worked 2x2 square expansion, both strategies") {
  const auto lambda = spectrum({Complex(1, 0), Complex(2, 0)});
  Matrix t(2, 2);
  t << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  const PerturbationMatrix tau(std::move(t));
  const auto square = AnalyticFunction::monomial(2);

  Matrix order1(2, 2), order2(2, 2);
  order1 << Complex(0, 0), Complex(3, 0), Complex(3, 0), Complex(0, 0);
  order2 << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0);
  const Matrix direct = matrix_power(lambda.as_matrix() + tau.entries(), 2);

  for (Strategy strategy : {Strategy::PathSum, Strategy::Quadrature}) {
    const auto result = expand(square, lambda, tau, 3, with_strategy(strategy));
    REQUIRE(result.terms.size() == 4);
    CHECK(max_abs(result.terms[1] - order1) < 1e-11);
    CHECK(max_abs(result.terms[2] - order2) < 1e-11);
    CHECK(max_abs(result.terms[3]) < 1e-11);
    CHECK(testing::rel_frobenius_err(result.truncated_sum, direct) < 1e-11);
    CHECK(result.term_norms.size() == 4);
    CHECK(result.term_norms[1] == doctest::Approx(result.terms[1].norm()));
  }
}

TEST_CASE("identity function: path sum is exact") {
  testing::Rng rng(401);
  const auto lambda = testing::random_distinct_spectrum(rng, 3, 0.4, 2.0, 0.15);
  const auto tau = testing::random_complex_tau(rng, 3, 0.8);
  const auto result =
      expand(AnalyticFunction::monomial(1), lambda, tau, 3, with_strategy(Strategy::PathSum));
  CHECK(max_abs(result.terms[1] - tau.entries()) == 0.0);
  for (std::size_t n = 2; n < result.terms.size(); ++n) {
    CHECK(max_abs(result.terms[n]) == 0.0);
  }
}

TEST_CASE("strategies agree term by term") {
  testing::Rng rng(402);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + static_cast<int>(testing::uniform(rng, 0, 2.99));
    const auto lambda = testing::random_distinct_spectrum(rng, n, 0.3, 1.5, 0.15);
    const auto tau = testing::random_tau_with_norm(rng, n, 0.3);
    for (const auto& f : {AnalyticFunction::exponential(), AnalyticFunction::sine()}) {
      const auto paths = expand(f, lambda, tau, 4, with_strategy(Strategy::PathSum));
      const auto quads = expand(f, lambda, tau, 4, with_strategy(Strategy::Quadrature));
      const std::size_t orders = std::min(paths.terms.size(), quads.terms.size());
      for (std::size_t k = 0; k < orders; ++k) {
        CHECK(max_abs(paths.terms[k] - quads.terms[k]) < 1e-9);
      }
    }
  }
}

TEST_CASE("polynomial expansions terminate exactly") {
  testing::Rng rng(403);
  for (int degree = 1; degree <= 5; ++degree) {
    const auto f = AnalyticFunction::monomial(degree);
    const auto lambda = testing::random_distinct_spectrum(rng, 3, 0.4, 2.0, 0.15);
    const auto tau = testing::random_complex_tau(rng, 3, 2.0);  // no smallness
    const Matrix direct = matrix_power(lambda.as_matrix() + tau.entries(), degree);
    for (Strategy strategy : {Strategy::PathSum, Strategy::Quadrature}) {
      const auto result = expand(f, lambda, tau, degree, with_strategy(strategy));
      CHECK(testing::rel_frobenius_err(result.truncated_sum, direct) < 1e-11);
    }
  }
}

TEST_CASE("expansion tracks the taylor oracle for small perturbations") {
  testing::Rng rng(404);
  const auto lambda = spectrum({Complex(0.1, 0), Complex(0.5, 0), Complex(0.9, 0)});
  const auto tau = testing::random_tau_with_norm(rng, 3, 0.05);
  const auto result = expand(AnalyticFunction::exponential(), lambda, tau, 6);
  const Matrix oracle =
      matrix_taylor_oracle(AnalyticFunction::exponential(),
                           lambda.as_matrix() + tau.entries(), 1e-14);
  CHECK(max_abs(result.truncated_sum - oracle) < 1e-9);
}

TEST_CASE("expansion is linear in the function") {
  testing::Rng rng(405);
  std::vector<Complex> a = {Complex(0.5, 0), Complex(-1, 0.3), Complex(2, 0), Complex(0.25, 0)};
  std::vector<Complex> b = {Complex(1, 0), Complex(0, 1), Complex(-0.5, 0)};
  const Complex alpha(1.5, -0.5), beta(-0.75, 0.25);
  std::vector<Complex> mixed = {alpha * a[0] + beta * b[0], alpha * a[1] + beta * b[1],
                                alpha * a[2] + beta * b[2], alpha * a[3]};

  const auto lambda = testing::random_distinct_spectrum(rng, 3, 0.4, 1.8, 0.15);
  const auto tau = testing::random_complex_tau(rng, 3, 0.5);

  const auto fa = expand(AnalyticFunction::polynomial(a), lambda, tau, 4,
                         with_strategy(Strategy::PathSum));
  const auto fb = expand(AnalyticFunction::polynomial(b), lambda, tau, 4,
                         with_strategy(Strategy::PathSum));
  const auto fm = expand(AnalyticFunction::polynomial(mixed), lambda, tau, 4,
                         with_strategy(Strategy::PathSum));
  for (std::size_t k = 0; k < fm.terms.size(); ++k) {
    const Matrix combined = alpha * fa.terms[k] + beta * fb.terms[k];
    const double scale = std::max(1.0, max_abs(combined));
    CHECK(max_abs(fm.terms[k] - combined) / scale < 1e-11);
  }
}

TEST_CASE("real symmetric problems stay hermitian order by order") {
  testing::Rng rng(406);
  Vector values(3);
  values << Complex(0.2, 0), Complex(0.7, 0), Complex(1.4, 0);
  const DiagonalSpectrum lambda(std::move(values));

  Matrix h(3, 3);
  for (int i = 0; i < 3; ++i) {
    h(i, i) = Complex(testing::uniform(rng, -0.5, 0.5), 0);
    for (int j = i + 1; j < 3; ++j) {
      const Complex v = testing::complex_in_box(rng, 0.4);
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  const PerturbationMatrix tau(std::move(h));

  for (Strategy strategy : {Strategy::PathSum, Strategy::Quadrature}) {
    const auto result = expand(AnalyticFunction::exponential(), lambda, tau, 4,
                               with_strategy(strategy));
    for (const Matrix& term : result.terms) {
      CHECK(max_abs(term - term.adjoint().eval()) < 1e-12);
    }
  }
}

TEST_CASE("taylor oracle closed cases") {
  const auto exp = AnalyticFunction::exponential();

  // constant diagonal: series is a single term
  const Complex c(0.3, 0.8);
  const Matrix constant = c * Matrix::Identity(3, 3);
  const Matrix value = matrix_taylor_oracle(exp, constant, 1e-14);
  CHECK(max_abs(value - std::exp(c) * Matrix::Identity(3, 3)) < 1e-14);

  // nilpotent: series terminates
  Matrix nilpotent = Matrix::Zero(2, 2);
  nilpotent(0, 1) = Complex(1, 0);
  Matrix en(2, 2);
  en << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
  CHECK(max_abs(matrix_taylor_oracle(exp, nilpotent, 1e-14) - en) < 1e-14);

  // log of a near-diagonal matrix agrees with the resolvent route
  const auto log = AnalyticFunction::logarithm();
  Matrix m(2, 2);
  m << Complex(1, 0), Complex(0.01, 0), Complex(-0.02, 0), Complex(1.2, 0);
  const Matrix taylor = matrix_taylor_oracle(log, m, 1e-12);
  const auto lambda = spectrum({Complex(1, 0), Complex(1.2, 0)});
  const Matrix resolvent = matrix_function_resolvent(
      log, m, choose_contour(lambda, log, 0.05));
  CHECK(max_abs(taylor - resolvent) < 1e-10);

  // radius guard
  Matrix outside(2, 2);
  outside << Complex(1, 0), Complex(3, 0), Complex(3, 0), Complex(1.5, 0);
  CHECK_THROWS_AS((void)matrix_taylor_oracle(log, outside, 1e-12), RadiusError);
}

TEST_CASE("convergence profile recovers truncation-order slopes") {
  testing::Rng rng(407);
  const auto lambda = spectrum({Complex(0.1, 0), Complex(0.5, 0), Complex(0.9, 0)});
  const auto tau = testing::random_tau_with_norm(rng, 3, 0.1);
  const std::vector<double> scales = {1.0, 0.5, 0.25, 0.125};

  const auto profile =
      convergence_profile(AnalyticFunction::exponential(), lambda, tau, 3, scales);
  REQUIRE(profile.slopes.size() == 3);
  for (int order = 1; order <= 3; ++order) {
    CHECK_FALSE(profile.exact[order - 1]);
    CHECK(profile.slopes[order - 1] == doctest::Approx(order + 1).epsilon(0.4 / 4.0));
  }

  // a polynomial expansion of its own degree is exact at every scale
  const auto square_profile =
      convergence_profile(AnalyticFunction::monomial(2), lambda, tau, 2, scales);
  CHECK(square_profile.exact[1]);

  // sine at first order
  const auto sine_lambda = spectrum({Complex(0.3, 0), Complex(0.8, 0)});
  const auto sine_tau = testing::random_tau_with_norm(rng, 2, 0.1);
  const auto sine_profile =
      convergence_profile(AnalyticFunction::sine(), sine_lambda, sine_tau, 1, scales);
  CHECK(sine_profile.slopes[0] == doctest::Approx(2.0).epsilon(0.3 / 2.0));
}

TEST_CASE("budget and dimension guards") {
  const auto lambda = spectrum({Complex(1, 0), Complex(2, 0)});
  const PerturbationMatrix bad{Matrix(Matrix::Zero(3, 3))};
  CHECK_THROWS_AS((void)expand(AnalyticFunction::exponential(), lambda, bad, 2),
                  DimensionError);

  ExpandOptions tiny = with_strategy(Strategy::PathSum);
  tiny.path_work_cap = 4.0;
  const PerturbationMatrix tau{Matrix(Matrix::Identity(2, 2))};
  CHECK_THROWS_AS((void)expand(AnalyticFunction::exponential(), lambda, tau, 3, tiny),
                  BudgetError);
}
