#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <utility>

#include "matfun/errors.hpp"

namespace matfun {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// z^n by binary exponentiation, n >= 0.
inline Complex ipow(Complex z, int n) {
  Complex acc(1.0, 0.0);
  while (n > 0) {
    if (n & 1) acc *= z;
    z *= z;
    n >>= 1;
  }
  return acc;
}

// The diagonal entries of the unperturbed matrix; they are its eigenvalues.
class DiagonalSpectrum {
 public:
  explicit DiagonalSpectrum(Vector values) : values_(std::move(values)) {
    if (values_.size() < 1) {
      throw DimensionError("spectrum must have at least one entry");
    }
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag())) {
        throw DimensionError("spectrum entries must be finite");
      }
    }
  }

  int size() const { return static_cast<int>(values_.size()); }
  Complex operator[](int i) const { return values_[i]; }
  const Vector& values() const { return values_; }

  Matrix as_matrix() const {
    Matrix m = Matrix::Zero(values_.size(), values_.size());
    m.diagonal() = values_;
    return m;
  }

  bool has_zero_entry() const {
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      if (values_[i] == Complex(0.0, 0.0)) return true;
    }
    return false;
  }

 private:
  Vector values_;
};

// Dense square perturbation added to the diagonal matrix.
class PerturbationMatrix {
 public:
  explicit PerturbationMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
      throw DimensionError("perturbation must be a nonempty square matrix");
    }
  }

  int size() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double frobenius_norm() const { return entries_.norm(); }

 private:
  Matrix entries_;
};

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace matfun
