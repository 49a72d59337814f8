#include "qcount/random.hpp"

#include <Eigen/QR>

#include "qcount/channel.hpp"
#include "qcount/errors.hpp"

namespace qcount {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(base);
  for (auto t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

Matrix haar_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw DomainError("dimension must be positive");
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

Matrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (cols > rows) throw DomainError("isometry needs rows >= cols");
  return haar_unitary(rows, rng).leftCols(static_cast<Eigen::Index>(cols));
}

PureState random_pure(std::size_t dim, Rng& rng, std::optional<StringBasis> basis) {
  Vector v = ginibre(dim, 1, rng).col(0);
  v.normalize();
  return PureState(std::move(v), std::move(basis));
}

DensityOperator random_density(std::size_t dim, Rng& rng, std::size_t rank,
                               std::optional<StringBasis> basis) {
  if (dim == 0) throw DomainError("dimension must be positive");
  if (rank == 0) rank = std::uniform_int_distribution<std::size_t>(1, dim)(rng);
  const Matrix g = ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::trusted(std::move(rho), std::move(basis));
}

Channel random_channel(std::size_t in_dim, std::size_t out_dim, Rng& rng, std::size_t env) {
  if (env == 0) env = in_dim;
  const Matrix w = haar_isometry(out_dim * env, in_dim, rng);
  std::vector<Matrix> kraus;
  kraus.reserve(env);
  // Row index of w is (output index) * env + (environment index).
  for (std::size_t m = 0; m < env; ++m) {
    Matrix k(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(in_dim));
    for (std::size_t a = 0; a < out_dim; ++a) {
      k.row(static_cast<Eigen::Index>(a)) = w.row(static_cast<Eigen::Index>(a * env + m));
    }
    kraus.push_back(std::move(k));
  }
  return Channel::make(std::move(kraus));
}

}  // namespace qcount
