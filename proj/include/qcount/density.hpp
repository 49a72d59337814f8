#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "qcount/basis.hpp"
#include "qcount/linalg.hpp"

namespace qcount {

/// Validation tolerances for density operators.
struct StateTolerance {
  double hermitian = 1e-8;
  double psd = 1e-8;
  double trace = 1e-8;
};

/// Unit vector, optionally tagged with the string basis it is expanded in.
class PureState {
 public:
  /// Normalizes nothing: throws InvalidStateError unless |norm - 1| <= tol.
  explicit PureState(Vector amplitudes, std::optional<StringBasis> basis = std::nullopt,
                     double tol = 1e-8);

  /// |s> for a classical string s.
  static PureState basis_state(const StringBasis& basis, std::string_view bits);
  /// The k-th computational basis vector of C^dim.
  static PureState unit(std::size_t dim, std::size_t k);

  const Vector& vector() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const std::optional<StringBasis>& basis() const { return basis_; }

 private:
  Vector amplitudes_;
  std::optional<StringBasis> basis_;
};

/// Positive semidefinite unit-trace Hermitian matrix. Instances are immutable
/// and only obtainable through validation (make_density) or from operations
/// that preserve the invariants.
class DensityOperator {
 public:
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  /// Present when the operator lives on a qubit-string space.
  const std::optional<StringBasis>& basis() const { return basis_; }

  /// Eigenvalues, ascending.
  RealVector spectrum() const;

  static DensityOperator pure(const PureState& psi);
  static DensityOperator basis_state(const StringBasis& basis, std::string_view bits);
  static DensityOperator maximally_mixed(std::size_t dim,
                                         std::optional<StringBasis> basis = std::nullopt);
  static DensityOperator maximally_mixed(const StringBasis& basis) {
    return maximally_mixed(basis.dim(), basis);
  }

  /// Wraps a matrix that is already known to be a state up to rounding: only
  /// the Hermitian part is kept. Used by channel application and convex mixing.
  static DensityOperator trusted(Matrix m, std::optional<StringBasis> basis = std::nullopt);

  /// Same operator re-tagged (or untagged) with a basis of matching dimension.
  DensityOperator with_basis(std::optional<StringBasis> basis) const;

 private:
  DensityOperator(Matrix m, std::optional<StringBasis> basis)
      : matrix_(std::move(m)), basis_(std::move(basis)) {}

  friend DensityOperator make_density(const Matrix&, std::optional<StringBasis>,
                                      const StateTolerance&);

  Matrix matrix_;
  std::optional<StringBasis> basis_;
};

/// Validates `m` as a density operator. Eigenvalues in [-tol.psd, 0) are
/// clipped to zero and the result renormalized.
/// Throws NotHermitianError, NotPsdError or TraceError (all InvalidStateError).
DensityOperator make_density(const Matrix& m, std::optional<StringBasis> basis = std::nullopt,
                             const StateTolerance& tol = {});
inline DensityOperator make_density(const Matrix& m, const StringBasis& basis,
                                    const StateTolerance& tol = {}) {
  return make_density(m, std::optional<StringBasis>(basis), tol);
}

/// (1/2) Tr|rho - sigma|. Throws DimensionError on mismatched dimension or basis.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// -Tr rho log2 rho, in bits.
double von_neumann_entropy(const DensityOperator& rho);

/// Tr rho (log2 rho - log2 sigma) in bits; +infinity when supp(rho) is not
/// contained in supp(sigma).
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// Eigenvalues of sigma at or below this are treated as outside its support.
inline constexpr double kSupportTolerance = 1e-12;

/// Longest string s with <s|rho|s> > tol_overlap. Requires a string basis.
/// Throws DomainError if no diagonal entry exceeds tol_overlap.
int base_length(const DensityOperator& rho, double tol_overlap = 1e-12);

/// Convex combination sum_i w_i rho_i (weights are assumed validated).
DensityOperator mix(std::span<const double> weights, std::span<const DensityOperator> states);

/// Re-expresses rho on a larger or smaller string basis. Embedding is exact
/// (prefix-stable index order); truncation requires base_length(rho) <= target.n().
DensityOperator change_basis(const DensityOperator& rho, const StringBasis& target);

}  // namespace qcount
