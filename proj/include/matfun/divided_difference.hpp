#pragma once

#include <span>
#include <vector>

#include "matfun/analytic_function.hpp"
#include "matfun/types.hpp"

namespace matfun {

// Nodes a, b merge when |a - b| <= kConfluenceTol * max(1, |a|, |b|).
inline constexpr double kConfluenceTol = 1e-10;
// Divided-difference tables are capped at this many nodes.
inline constexpr int kMaxTableNodes = 64;

inline bool nodes_confluent(Complex a, Complex b) {
  return std::abs(a - b) <=
         kConfluenceTol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Eigenvalues along an index path, sorted lexicographically by (real, imag)
// and clustered by single-link merge of adjacent nodes within tolerance.
// Positions in one cluster share the cluster mean as their value, so repeated
// nodes are exactly equal in the table.
class NodeList {
 public:
  explicit NodeList(std::vector<Complex> nodes);

  int size() const { return static_cast<int>(values_.size()); }
  Complex value(int position) const { return values_[position]; }
  int cluster(int position) const { return cluster_[position]; }
  const std::vector<Complex>& values() const { return values_; }

 private:
  std::vector<Complex> values_;  // cluster representative per sorted position
  std::vector<int> cluster_;     // cluster id per sorted position
};

// First-order coefficient: (f(a)-f(b))/(a-b), or f'((a+b)/2) at confluence.
Complex coefficient_a1(const AnalyticFunction& f, Complex a, Complex b);

// Generalized divided difference over the nodes; repeated nodes contribute
// through f^(k)/k!. Invariant under permutation of the input order.
Complex divided_difference(const AnalyticFunction& f, const NodeList& nodes);
Complex divided_difference(const AnalyticFunction& f, std::span<const Complex> nodes);

// Expansion coefficient for an index path (i, m_1, ..., m_{n-1}, p): the
// divided difference of f over the eigenvalues at those indices.
Complex coefficient_a(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                      std::span<const int> path);

}  // namespace matfun
