#pragma once

#include <span>

#include "matfun/analytic_function.hpp"
#include "matfun/types.hpp"

namespace matfun {

// The lemma route enumerates nested sums directly; it is the trusted slow
// oracle. Calls whose scalar multiply-add estimate exceeds the cap raise
// BudgetError.
struct LemmaOptions {
  double work_cap = 1e7;
};

// [eps_q]_{ip} = (lambda_p / lambda_i)^q * (1 / lambda_i) * tau_{ip}.
// Requires a spectrum with no zero entries.
Matrix epsilon_matrix(const DiagonalSpectrum& lambda, const PerturbationMatrix& tau,
                      int q);

// (lambda + tau)^p as lambda^p (1 + sum eps_q + sum_{q<q1} eps_q1 eps_q + ...)
// truncated at epsilon-product length max_k, 1 <= max_k <= p. Products apply
// the highest subscript leftmost. With max_k = p the result is exact up to
// roundoff.
Matrix expand_monomial_lemma(const DiagonalSpectrum& lambda, const PerturbationMatrix& tau,
                             int p, int max_k, const LemmaOptions& options = {});

// Verifies lambda eps_{q1} ... eps_{qr} lambda == lambda^2 eps_{q1+1} ... eps_{qr+1}
// entrywise within 1e-12 of the larger side's max entry magnitude.
bool conjugation_identity_check(const DiagonalSpectrum& lambda,
                                const PerturbationMatrix& tau, std::span<const int> qs);

// B^(k,lambda,n) for the index path (i, m_1, ..., m_{k-1}, p) with
// k = path.size() - 1: the nested ordered sum over 0 <= q < q_1 < ... <= n-1
// of ratio powers with prefactor 1/(lambda_i ... lambda_{m_{k-1}}).
// The direct form evaluates the definition; the plain form uses the
// geometric-sum recurrence, falling back to the direct sum for confluent
// adjacent eigenvalues.
Complex path_coefficient_b_direct(const DiagonalSpectrum& lambda, std::span<const int> path,
                                  int n, const LemmaOptions& options = {});
Complex path_coefficient_b(const DiagonalSpectrum& lambda, std::span<const int> path,
                           int n, const LemmaOptions& options = {});

// A^(k,lambda) for the path as sum_n f^(n)(0)/n! * lambda_i^n * B^(k,lambda,n).
// Exact finite sum for polynomial f; otherwise the series is truncated at
// n_max and must have its terms fall below 1e-14 of the partial sum.
Complex coefficient_from_b(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                           std::span<const int> path, int n_max,
                           const LemmaOptions& options = {});

}  // namespace matfun
