#pragma once

#include <cmath>
#include <complex>

#include "qcount/density.hpp"
#include "qcount/linalg.hpp"

namespace qtest {

using qcount::Complex;
using qcount::Matrix;

inline Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Matrix pauli_z() { return diag2(1, -1); }

/// Binary entropy in bits, computed independently of the library.
inline double h2(double p) {
  double s = 0.0;
  if (p > 0) s -= p * std::log2(p);
  if (p < 1) s -= (1 - p) * std::log2(1 - p);
  return s;
}

/// Trace distance of two qubit states from their Bloch vectors: |r - s| / 2.
inline double bloch_distance(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  const double x = 2 * d(0, 1).real();
  const double y = -2 * d(0, 1).imag();
  const double z = (d(0, 0) - d(1, 1)).real();
  return 0.5 * std::sqrt(x * x + y * y + z * z);
}

}  // namespace qtest
