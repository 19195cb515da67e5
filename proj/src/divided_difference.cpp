#include "matfun/divided_difference.hpp"

#include <algorithm>
#include <cmath>

namespace matfun {

NodeList::NodeList(std::vector<Complex> nodes) {
  if (nodes.empty()) throw Error("node list must be non-empty");
  if (static_cast<int>(nodes.size()) > kMaxTableNodes) {
    throw DepthError("divided-difference table capped at " +
                     std::to_string(kMaxTableNodes) + " nodes, got " +
                     std::to_string(nodes.size()));
  }
  std::sort(nodes.begin(), nodes.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  cluster_.assign(nodes.size(), 0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    cluster_[i] = nodes_confluent(nodes[i - 1], nodes[i]) ? cluster_[i - 1]
                                                          : cluster_[i - 1] + 1;
  }

  values_.assign(nodes.size(), Complex(0.0, 0.0));
  std::size_t begin = 0;
  while (begin < nodes.size()) {
    std::size_t end = begin + 1;
    while (end < nodes.size() && cluster_[end] == cluster_[begin]) ++end;
    Complex mean(0.0, 0.0);
    for (std::size_t j = begin; j < end; ++j) mean += nodes[j];
    mean /= static_cast<double>(end - begin);
    for (std::size_t j = begin; j < end; ++j) values_[j] = mean;
    begin = end;
  }
}

Complex coefficient_a1(const AnalyticFunction& f, Complex a, Complex b) {
  if (nodes_confluent(a, b)) {
    return f.derivative(1, 0.5 * (a + b));
  }
  return (f.eval(a) - f.eval(b)) / (a - b);
}

Complex divided_difference(const AnalyticFunction& f, const NodeList& nodes) {
  const int n = nodes.size();
  // table[i][k] = divided difference over positions i..i+k
  std::vector<std::vector<Complex>> table(n, std::vector<Complex>(n));
  for (int i = 0; i < n; ++i) table[i][0] = f.eval(nodes.value(i));
  for (int k = 1; k < n; ++k) {
    for (int i = 0; i + k < n; ++i) {
      if (nodes.cluster(i) == nodes.cluster(i + k)) {
        table[i][k] = f.taylor_coefficient(k, nodes.value(i));
      } else {
        const Complex gap = nodes.value(i + k) - nodes.value(i);
        if (gap == Complex(0.0, 0.0)) {
          throw Error("confluence clustering produced coincident representatives");
        }
        table[i][k] = (table[i + 1][k - 1] - table[i][k - 1]) / gap;
      }
    }
  }
  return table[0][n - 1];
}

Complex divided_difference(const AnalyticFunction& f, std::span<const Complex> nodes) {
  return divided_difference(f, NodeList(std::vector<Complex>(nodes.begin(), nodes.end())));
}

Complex coefficient_a(const AnalyticFunction& f, const DiagonalSpectrum& lambda,
                      std::span<const int> path) {
  if (path.size() < 2) throw Error("coefficient path needs at least two indices");
  std::vector<Complex> nodes;
  nodes.reserve(path.size());
  for (int index : path) {
    if (index < 0 || index >= lambda.size()) {
      throw DimensionError("path index " + std::to_string(index) +
                           " outside spectrum of size " + std::to_string(lambda.size()));
    }
    nodes.push_back(lambda[index]);
  }
  return divided_difference(f, NodeList(std::move(nodes)));
}

}  // namespace matfun
