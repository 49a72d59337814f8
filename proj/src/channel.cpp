#include "qcount/channel.hpp"

#include <cmath>
#include <sstream>

#include "qcount/errors.hpp"

namespace qcount {

Channel Channel::make(std::vector<Matrix> kraus) {
  if (kraus.empty()) throw DimensionError("a channel needs at least one Kraus operator");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  if (rows == 0 || cols == 0) throw DimensionError("Kraus operators must be non-empty");
  for (const auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols) {
      throw DimensionError("Kraus operators do not share dimensions");
    }
  }
  Channel ch(static_cast<std::size_t>(cols), static_cast<std::size_t>(rows), std::move(kraus));
  const double residual = ch.completeness_residual();
  if (residual > kCompletenessTolerance) {
    std::ostringstream msg;
    msg << "completeness relation violated: max |sum K^dagger K - 1| = " << residual;
    throw InvalidChannelError(msg.str());
  }
  return ch;
}

Channel Channel::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return make({Matrix::Identity(d, d)});
}

Channel Channel::with_bases(std::optional<StringBasis> in, std::optional<StringBasis> out) const {
  if (in && in->dim() != in_dim_) throw DimensionError("input basis does not match in_dim");
  if (out && out->dim() != out_dim_) throw DimensionError("output basis does not match out_dim");
  Channel copy = *this;
  copy.in_basis_ = std::move(in);
  copy.out_basis_ = std::move(out);
  return copy;
}

Matrix Channel::apply_raw(const Matrix& a) const {
  const auto d = static_cast<Eigen::Index>(out_dim_);
  Matrix out = Matrix::Zero(d, d);
  for (const auto& k : kraus_) out.noalias() += k * a * k.adjoint();
  return out;
}

Matrix Channel::adjoint_raw(const Matrix& b) const {
  const auto d = static_cast<Eigen::Index>(in_dim_);
  Matrix out = Matrix::Zero(d, d);
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * b * k;
  return out;
}

double Channel::completeness_residual() const {
  const auto d = static_cast<Eigen::Index>(in_dim_);
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
  return linalg::max_abs(sum - Matrix::Identity(d, d));
}

DensityOperator apply(const Channel& channel, const DensityOperator& rho) {
  if (rho.dim() != channel.in_dim()) {
    throw DimensionError("state dimension " + std::to_string(rho.dim()) +
                         " does not match channel input dimension " +
                         std::to_string(channel.in_dim()));
  }
  if (rho.basis() && channel.in_basis() && !(*rho.basis() == *channel.in_basis())) {
    throw DimensionError("state basis does not match channel input basis");
  }
  return DensityOperator::trusted(channel.apply_raw(rho.matrix()), channel.out_basis());
}

Channel compose(const Channel& second, const Channel& first) {
  if (first.out_dim() != second.in_dim()) {
    throw DimensionError("cannot compose: inner output dimension " +
                         std::to_string(first.out_dim()) + " != outer input dimension " +
                         std::to_string(second.in_dim()));
  }
  std::vector<Matrix> kraus;
  kraus.reserve(first.kraus().size() * second.kraus().size());
  for (const auto& a : second.kraus()) {
    for (const auto& b : first.kraus()) kraus.push_back(a * b);
  }
  return Channel::make(std::move(kraus)).with_bases(first.in_basis(), second.out_basis());
}

LinearMap as_linear_map(const Channel& channel) {
  return {channel.in_dim(), channel.out_dim(),
          [channel](const Matrix& a) { return channel.apply_raw(a); }};
}

Matrix choi_matrix(const LinearMap& map) {
  const auto in = static_cast<Eigen::Index>(map.in_dim);
  const auto out = static_cast<Eigen::Index>(map.out_dim);
  Matrix choi = Matrix::Zero(out * in, out * in);
  for (Eigen::Index i = 0; i < in; ++i) {
    for (Eigen::Index j = 0; j < in; ++j) {
      Matrix unit = Matrix::Zero(in, in);
      unit(i, j) = 1.0;
      const Matrix image = map.map(unit);
      for (Eigen::Index a = 0; a < out; ++a) {
        for (Eigen::Index b = 0; b < out; ++b) choi(a * in + i, b * in + j) = image(a, b);
      }
    }
  }
  return choi;
}

Matrix choi_matrix(const Channel& channel) { return choi_matrix(as_linear_map(channel)); }

CptpReport check_cptp(const LinearMap& map, double tol) {
  const Matrix choi = choi_matrix(map);
  CptpReport report;
  report.min_choi_eigenvalue = linalg::eigenvalues(choi).minCoeff();
  const auto in = static_cast<Eigen::Index>(map.in_dim);
  const auto out = static_cast<Eigen::Index>(map.out_dim);
  // Tracing out the output factor must give the identity on the input factor.
  Matrix partial = Matrix::Zero(in, in);
  for (Eigen::Index a = 0; a < out; ++a) partial += choi.block(a * in, a * in, in, in);
  report.completeness_residual = linalg::max_abs(partial - Matrix::Identity(in, in));
  report.completely_positive = report.min_choi_eigenvalue >= -tol;
  report.trace_preserving = report.completeness_residual <= tol;
  return report;
}

CptpReport is_cptp(const Channel& channel, double tol) {
  CptpReport report = check_cptp(as_linear_map(channel), tol);
  report.completeness_residual = channel.completeness_residual();
  report.trace_preserving = report.completeness_residual <= tol;
  return report;
}

Channel build_pinching(std::span<const PureState> vectors, double tol) {
  if (vectors.empty()) throw DimensionError("pinching needs at least one vector");
  const std::size_t dim = vectors.front().dim();
  const std::size_t count = vectors.size();
  if (count > dim) {
    throw DimensionError("cannot have " + std::to_string(count) +
                         " orthonormal vectors in dimension " + std::to_string(dim));
  }
  for (const auto& v : vectors) {
    if (v.dim() != dim) throw DimensionError("pinching vectors differ in dimension");
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      const Complex ip = vectors[i].vector().dot(vectors[j].vector());
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(ip - expected) > tol) {
        std::ostringstream msg;
        msg << "pinching vectors " << i << " and " << j << " are not orthonormal (overlap "
            << std::abs(ip) << ")";
        throw InvalidChannelError(msg.str());
      }
    }
  }

  const auto d = static_cast<Eigen::Index>(dim);
  const auto outputs = static_cast<Eigen::Index>(count + 1);
  std::vector<Matrix> projectors;
  projectors.reserve(count + 1);
  Matrix residual = Matrix::Identity(d, d);
  for (const auto& v : vectors) {
    projectors.push_back(linalg::projector(v.vector()));
    residual -= projectors.back();
  }
  projectors.push_back(std::move(residual));

  std::vector<Matrix> kraus;
  for (Eigen::Index i = 0; i < outputs; ++i) {
    const Matrix& p = projectors[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < d; ++k) {
      // |e_i><k| P_i has a single nonzero row: row i equals row k of P_i.
      Matrix op = Matrix::Zero(outputs, d);
      op.row(i) = p.row(k);
      if (op.norm() > 1e-14) kraus.push_back(std::move(op));
    }
  }
  return Channel::make(std::move(kraus));
}

}  // namespace qcount
