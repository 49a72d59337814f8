#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qcount {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

/// Eigenvalues of the Hermitian part of `h`, ascending.
RealVector eigenvalues(const Matrix& h);

/// Half the sum of absolute eigenvalues of a Hermitian matrix.
double half_trace_norm(const Matrix& h);

/// Shannon entropy in bits of a spectrum; entries <= 0 contribute nothing.
double entropy_bits(const RealVector& spectrum);

/// Largest absolute entry of `a`.
double max_abs(const Matrix& a);

/// Largest deviation of `a` from its adjoint.
double hermiticity_defect(const Matrix& a);

/// Outer product |v><v|.
Matrix projector(const Vector& v);

}  // namespace linalg
}  // namespace qcount
