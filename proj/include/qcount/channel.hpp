#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qcount/density.hpp"
#include "qcount/linalg.hpp"

namespace qcount {

/// Completely positive trace-preserving map in Kraus form,
/// rho -> sum_k K_k rho K_k^dagger with sum_k K_k^dagger K_k = 1.
class Channel {
 public:
  static constexpr double kCompletenessTolerance = 1e-8;

  /// Validates the completeness relation. Throws DimensionError for ragged
  /// input and InvalidChannelError when sum K^dagger K deviates from 1.
  static Channel make(std::vector<Matrix> kraus);

  static Channel identity(std::size_t dim);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  /// Optional string bases attached to the input and output spaces. apply()
  /// tags its result with the output basis.
  const std::optional<StringBasis>& in_basis() const { return in_basis_; }
  const std::optional<StringBasis>& out_basis() const { return out_basis_; }
  Channel with_bases(std::optional<StringBasis> in, std::optional<StringBasis> out) const;

  /// sum_k K_k a K_k^dagger on a raw in_dim x in_dim matrix.
  Matrix apply_raw(const Matrix& a) const;
  /// Heisenberg picture: sum_k K_k^dagger b K_k.
  Matrix adjoint_raw(const Matrix& b) const;

  /// max |sum K^dagger K - 1|.
  double completeness_residual() const;

 private:
  Channel(std::size_t in_dim, std::size_t out_dim, std::vector<Matrix> kraus)
      : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {}

  std::size_t in_dim_;
  std::size_t out_dim_;
  std::vector<Matrix> kraus_;
  std::optional<StringBasis> in_basis_;
  std::optional<StringBasis> out_basis_;
};

/// E(rho). Throws DimensionError if rho.dim() != E.in_dim().
DensityOperator apply(const Channel& channel, const DensityOperator& rho);

/// E2 o E1 with Kraus family {K2_a K1_b}. Throws DimensionError unless E1.out_dim == E2.in_dim.
Channel compose(const Channel& second, const Channel& first);

/// An arbitrary linear map on matrices, for certificates of maps that need
/// not be CP (e.g. the transpose).
struct LinearMap {
  std::size_t in_dim;
  std::size_t out_dim;
  std::function<Matrix(const Matrix&)> map;
};

LinearMap as_linear_map(const Channel& channel);

/// Choi matrix sum_{ij} E(|i><j|) (x) |i><j| of size (out*in) x (out*in); row
/// index is out_index * in_dim + in_index.
Matrix choi_matrix(const LinearMap& map);
Matrix choi_matrix(const Channel& channel);

struct CptpReport {
  double min_choi_eigenvalue = 0.0;
  /// Deviation from trace preservation: max |Tr_out J - 1|.
  double completeness_residual = 0.0;
  bool completely_positive = false;
  bool trace_preserving = false;
  bool passes() const { return completely_positive && trace_preserving; }
};

CptpReport check_cptp(const LinearMap& map, double tol = 1e-8);
CptpReport is_cptp(const Channel& channel, double tol = 1e-8);

/// The measure-and-record channel H' -> C^{N+1} built from N orthonormal
/// vectors phi_i: Kraus operators |e_i><k| P_i with P_i = |phi_i><phi_i| for
/// i <= N and P_{N+1} = 1 - sum P_i. Output basis |e_i> is computational.
/// Kraus operators that vanish identically (e.g. when P_{N+1} = 0) are dropped.
/// Throws InvalidChannelError for non-orthonormal input and DimensionError for
/// empty or ragged input or N > dim H'.
Channel build_pinching(std::span<const PureState> vectors, double tol = 1e-8);

}  // namespace qcount
