#include "qcount/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qcount/errors.hpp"

namespace qcount {

namespace linalg {

RealVector eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double half_trace_norm(const Matrix& h) { return 0.5 * eigenvalues(h).cwiseAbs().sum(); }

double entropy_bits(const RealVector& spectrum) {
  double s = 0.0;
  for (double p : spectrum) {
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Matrix& a) { return max_abs(a - a.adjoint()); }

Matrix projector(const Vector& v) { return v * v.adjoint(); }

}  // namespace linalg

namespace {

void require_same_space(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("operators act on spaces of different dimension (" +
                         std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
  if (a.basis() && b.basis() && !(*a.basis() == *b.basis())) {
    throw DimensionError("operators are expanded in different string bases");
  }
}

void require_basis_dim(const std::optional<StringBasis>& basis, std::size_t dim) {
  if (basis && basis->dim() != dim) {
    throw DimensionError("basis dimension " + std::to_string(basis->dim()) +
                         " does not match operator dimension " + std::to_string(dim));
  }
}

}  // namespace

PureState::PureState(Vector amplitudes, std::optional<StringBasis> basis, double tol)
    : amplitudes_(std::move(amplitudes)), basis_(std::move(basis)) {
  require_basis_dim(basis_, dim());
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream msg;
    msg << "state vector has norm " << norm << ", expected 1";
    throw InvalidStateError(msg.str());
  }
}

PureState PureState::basis_state(const StringBasis& basis, std::string_view bits) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis.dim()));
  v(static_cast<Eigen::Index>(basis.index_of(bits))) = 1.0;
  return PureState(std::move(v), basis);
}

PureState PureState::unit(std::size_t dim, std::size_t k) {
  if (k >= dim) throw DomainError("unit vector index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return PureState(std::move(v));
}

RealVector DensityOperator::spectrum() const { return linalg::eigenvalues(matrix_); }

DensityOperator DensityOperator::pure(const PureState& psi) {
  return DensityOperator(linalg::projector(psi.vector()), psi.basis());
}

DensityOperator DensityOperator::basis_state(const StringBasis& basis, std::string_view bits) {
  return pure(PureState::basis_state(basis, bits));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim,
                                                 std::optional<StringBasis> basis) {
  if (dim == 0) throw DomainError("dimension must be positive");
  require_basis_dim(basis, dim);
  const auto d = static_cast<Eigen::Index>(dim);
  return DensityOperator(Matrix::Identity(d, d) / static_cast<double>(dim), std::move(basis));
}

DensityOperator DensityOperator::trusted(Matrix m, std::optional<StringBasis> basis) {
  require_basis_dim(basis, static_cast<std::size_t>(m.rows()));
  Matrix h = 0.5 * (m + m.adjoint());
  return DensityOperator(std::move(h), std::move(basis));
}

DensityOperator DensityOperator::with_basis(std::optional<StringBasis> basis) const {
  require_basis_dim(basis, dim());
  return DensityOperator(matrix_, std::move(basis));
}

DensityOperator make_density(const Matrix& m, std::optional<StringBasis> basis,
                             const StateTolerance& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  require_basis_dim(basis, static_cast<std::size_t>(m.rows()));

  const double herm = linalg::hermiticity_defect(m);
  if (herm > tol.hermitian) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |A - A^dagger| = " << herm;
    throw NotHermitianError(msg.str());
  }
  Matrix h = 0.5 * (m + m.adjoint());

  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& ev = es.eigenvalues();
  if (ev.minCoeff() < -tol.psd) {
    std::ostringstream msg;
    msg << "matrix is not positive semidefinite: min eigenvalue " << ev.minCoeff();
    throw NotPsdError(msg.str());
  }
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream msg;
    msg << "trace is " << tr << ", expected 1";
    throw TraceError(msg.str());
  }

  if (ev.minCoeff() < 0.0) {
    RealVector clipped = ev.cwiseMax(0.0);
    clipped /= clipped.sum();
    h = es.eigenvectors() * clipped.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  } else if (tr != 1.0) {
    h /= tr;
  }
  return DensityOperator(std::move(h), std::move(basis));
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_space(rho, sigma);
  return std::clamp(linalg::half_trace_norm(rho.matrix() - sigma.matrix()), 0.0, 1.0);
}

double von_neumann_entropy(const DensityOperator& rho) {
  return std::max(0.0, linalg::entropy_bits(rho.spectrum()));
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_space(rho, sigma);

  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix());
  const RealVector& mu = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  // <v_j| rho |v_j> in sigma's eigenbasis.
  const RealVector weight = (v.adjoint() * rho.matrix() * v).diagonal().real();

  double cross = 0.0;  // -Tr rho log2 sigma
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    if (mu(j) <= kSupportTolerance) {
      if (weight(j) > 1e-10) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross -= weight(j) * std::log2(mu(j));
  }
  const double value = cross - von_neumann_entropy(rho);
  return std::max(0.0, value);
}

int base_length(const DensityOperator& rho, double tol_overlap) {
  if (!rho.basis()) throw DomainError("base length requires a qubit-string basis");
  const auto diag = rho.matrix().diagonal().real();
  for (Eigen::Index i = diag.size() - 1; i >= 0; --i) {
    if (diag(i) > tol_overlap) return StringBasis::length_at(static_cast<std::size_t>(i));
  }
  throw DomainError("degenerate operator: no basis string has overlap above tolerance");
}

DensityOperator mix(std::span<const double> weights, std::span<const DensityOperator> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw DimensionError("mixture needs one weight per state and at least one state");
  }
  Matrix acc = Matrix::Zero(states[0].matrix().rows(), states[0].matrix().cols());
  for (std::size_t i = 0; i < states.size(); ++i) {
    require_same_space(states[0], states[i]);
    acc += weights[i] * states[i].matrix();
  }
  return DensityOperator::trusted(std::move(acc), states[0].basis());
}

DensityOperator change_basis(const DensityOperator& rho, const StringBasis& target) {
  if (!rho.basis()) throw DomainError("change_basis requires a qubit-string basis");
  const auto from = static_cast<Eigen::Index>(rho.dim());
  const auto to = static_cast<Eigen::Index>(target.dim());
  if (to >= from) {
    Matrix m = Matrix::Zero(to, to);
    m.topLeftCorner(from, from) = rho.matrix();
    return DensityOperator::trusted(std::move(m), target);
  }
  if (base_length(rho) > target.n()) {
    throw DomainError("state has base length " + std::to_string(base_length(rho)) +
                      ", exceeding target bound " + std::to_string(target.n()));
  }
  return DensityOperator::trusted(rho.matrix().topLeftCorner(to, to), target);
}

}  // namespace qcount
