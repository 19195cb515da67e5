#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "matfun/divided_difference.hpp"
#include "test_support.hpp"

using namespace matfun;
using testing::rel_err;

TEST_CASE("first-order coefficient: difference quotient and confluent limit") {
  const auto square = AnalyticFunction::monomial(2);
  CHECK(coefficient_a1(square, Complex(3, 0), Complex(1, 0)) == Complex(4, 0));

  const Complex c(0.3, 0.7);
  const auto exp = AnalyticFunction::exponential();
  CHECK(coefficient_a1(exp, c, c) == exp.derivative(1, c));

  // gap 1e-14 is inside the confluence tolerance: derivative branch
  const auto cube = AnalyticFunction::monomial(3);
  const Complex near = coefficient_a1(cube, Complex(2, 0), Complex(2.0 + 1e-14, 0));
  CHECK(rel_err(near, Complex(12, 0)) < 1e-9);
}

TEST_CASE("divided differences of monomials collapse by degree") {
  const auto square = AnalyticFunction::monomial(2);
  const std::vector<Complex> nodes = {Complex(1, 0), Complex(2, 0), Complex(3, 0)};
  CHECK(divided_difference(square, nodes) == Complex(1, 0));

  testing::Rng rng(101);
  for (int p = 1; p <= 5; ++p) {
    const auto f = AnalyticFunction::monomial(p);
    const auto lambda = testing::random_distinct_spectrum(rng, p + 2, 0.3, 2.0, 0.15);
    std::vector<Complex> all(lambda.values().begin(), lambda.values().end());

    const std::vector<Complex> exact(all.begin(), all.begin() + p + 1);
    CHECK(rel_err(divided_difference(f, exact), Complex(1, 0)) < 1e-11);

    CHECK(std::abs(divided_difference(f, all)) < 1e-10);  // one node past the degree
  }
}

TEST_CASE("repeated nodes contribute through derivatives") {
  const Complex c(0.0, 0.0);
  const std::vector<Complex> triple = {c, c, c};
  CHECK(divided_difference(AnalyticFunction::exponential(), triple) == Complex(0.5, 0));

  // f[a,a,b] = ((f(b)-f(a))/(b-a) - f'(a)) / (b-a)
  const auto f = AnalyticFunction::sine();
  const Complex a(0.4, 0.1), b(1.3, -0.2);
  const std::vector<Complex> mixed = {a, b, a};
  const Complex direct =
      ((f.eval(b) - f.eval(a)) / (b - a) - f.derivative(1, a)) / (b - a);
  CHECK(rel_err(divided_difference(f, mixed), direct) < 1e-12);

  // five equal nodes: f^(4)(c)/4!
  const std::vector<Complex> five(5, Complex(0.7, 0.3));
  const auto g = AnalyticFunction::exponential();
  CHECK(rel_err(divided_difference(g, five), std::exp(Complex(0.7, 0.3)) / 24.0) < 1e-13);
}

TEST_CASE("divided difference is permutation invariant") {
  testing::Rng rng(102);
  const auto f = AnalyticFunction::exponential();
  for (int trial = 0; trial < 20; ++trial) {
    const int count = 2 + static_cast<int>(testing::uniform(rng, 0, 3.99));
    const auto lambda = testing::random_distinct_spectrum(rng, count, 0.3, 2.5, 0.1);
    std::vector<Complex> nodes(lambda.values().begin(), lambda.values().end());
    const Complex reference = divided_difference(f, nodes);

    std::vector<Complex> shuffled = nodes;
    for (int s = 0; s < 3; ++s) {
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(rel_err(divided_difference(f, shuffled), reference) < 1e-12);
    }
  }
}

TEST_CASE("divided difference is linear in the function") {
  testing::Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> a(5), b(5);
    for (int j = 0; j < 5; ++j) {
      a[j] = testing::complex_in_box(rng, 1.0);
      b[j] = testing::complex_in_box(rng, 1.0);
    }
    const Complex alpha = testing::complex_in_box(rng, 2.0);
    const Complex beta = testing::complex_in_box(rng, 2.0);
    std::vector<Complex> mixed(5);
    for (int j = 0; j < 5; ++j) mixed[j] = alpha * a[j] + beta * b[j];

    const auto lambda = testing::random_distinct_spectrum(rng, 3, 0.4, 2.0, 0.2);
    std::vector<Complex> nodes(lambda.values().begin(), lambda.values().end());

    const Complex left =
        divided_difference(AnalyticFunction::polynomial(mixed), nodes);
    const Complex right =
        alpha * divided_difference(AnalyticFunction::polynomial(a), nodes) +
        beta * divided_difference(AnalyticFunction::polynomial(b), nodes);
    CHECK(rel_err(left, right) < 1e-12);
  }
}

TEST_CASE("distinct branch converges to the confluent branch") {
  struct Case {
    AnalyticFunction f;
    Complex a;
  };
  const std::vector<Case> cases = {
      {AnalyticFunction::exponential(), Complex(10, 0)},
      {AnalyticFunction::sine(), Complex(0.7, 0)},
      {AnalyticFunction::logarithm(), Complex(10, 0)},
      {AnalyticFunction::monomial(3), Complex(2.5, 1.5)},
      {AnalyticFunction::reciprocal_shift(Complex(-2, 0)), Complex(10, 0)},
  };
  for (const auto& test : cases) {
    double discrepancy[3];
    int j = 0;
    for (double gap : {1e-2, 1e-4, 1e-6}) {
      const Complex split = coefficient_a1(test.f, test.a, test.a + gap);
      const Complex merged = test.f.derivative(1, test.a + 0.5 * gap);
      discrepancy[j++] = std::abs(split - merged) / std::abs(merged);
    }
    INFO(test.f.spec_string());
    // the gap^2 truncation term dominates down to 1e-4; below that the
    // cancellation roundoff (~eps/gap) takes over but stays under 1e-7
    CHECK(discrepancy[1] < discrepancy[0]);
    CHECK(discrepancy[2] <= 1e-7);
  }
}

TEST_CASE("coefficient over an index path") {
  testing::Rng rng(104);
  const auto lambda = testing::random_distinct_spectrum(rng, 4, 0.4, 2.0, 0.2);

  const std::vector<int> pair = {0, 2};
  CHECK(coefficient_a(AnalyticFunction::monomial(1), lambda, pair) == Complex(1, 0));

  const std::vector<int> repeated = {1, 1};
  const auto f = AnalyticFunction::exponential();
  CHECK(coefficient_a(f, lambda, repeated) == f.derivative(1, lambda[1]));

  const std::vector<int> bad = {0, 7};
  CHECK_THROWS_AS(coefficient_a(f, lambda, bad), DimensionError);
  const std::vector<int> single = {0};
  CHECK_THROWS_AS(coefficient_a(f, lambda, single), Error);
}

TEST_CASE("table depth is capped") {
  std::vector<Complex> nodes(65);
  for (int j = 0; j < 65; ++j) nodes[j] = Complex(j, 0);
  CHECK_THROWS_AS((void)NodeList(nodes), DepthError);
}
