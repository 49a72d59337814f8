#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "qcount/basis.hpp"
#include "qcount/density.hpp"
#include "qcount/errors.hpp"
#include "qcount/random.hpp"

using namespace qcount;
using qtest::diag2;

TEST_CASE("string basis ordering") {
  const StringBasis b(3);
  CHECK(b.dim() == 15);
  CHECK(string_index("", b) == 0);
  CHECK(string_index("0", b) == 1);
  CHECK(string_index("1", b) == 2);
  CHECK(string_index("00", b) == 3);
  CHECK(string_index("111", b) == 14);
  CHECK(index_string(6, b) == "11");
  CHECK(StringBasis::length_at(0) == 0);
  CHECK(StringBasis::length_at(7) == 3);
  CHECK_THROWS_AS(b.index_of("0000"), DomainError);
  CHECK_THROWS_AS(b.index_of("012"), DomainError);
  CHECK_THROWS_AS(b.string_at(15), DomainError);
}

TEST_CASE("string basis round trip up to length 10") {
  const StringBasis b(10);
  for (std::size_t i = 0; i < b.dim(); ++i) {
    const std::string s = b.string_at(i);
    REQUIRE(b.index_of(s) == i);
    REQUIRE(static_cast<int>(s.size()) == StringBasis::length_at(i));
  }
}

TEST_CASE("prefix stability across length bounds") {
  const StringBasis small(2), big(5);
  for (std::size_t i = 0; i < small.dim(); ++i) CHECK(small.string_at(i) == big.string_at(i));
}

TEST_CASE("make_density validation") {
  CHECK_NOTHROW(make_density(Matrix::Identity(3, 3) / 3.0));
  const auto pure = make_density(diag2(1, 0));
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(make_density(diag2(1.5, -0.5)), NotPsdError);
  CHECK_THROWS_AS(make_density(diag2(0.5, 0.4)), TraceError);
  Matrix skew = diag2(0.5, 0.5);
  skew(0, 1) = 0.3;
  CHECK_THROWS_AS(make_density(skew), NotHermitianError);
  CHECK_THROWS_AS(make_density(diag2(1.5, -0.5)), InvalidStateError);
  CHECK_THROWS_AS(make_density(Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("make_density clips tiny negative eigenvalues") {
  const auto rho = make_density(diag2(1.0 + 5e-9, -5e-9));
  const auto spec = rho.spectrum();
  CHECK(spec.minCoeff() >= 0.0);
  CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigen reconstruction round trip") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto rho = random_density(1 + t % 8, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    const Matrix back = es.eigenvectors() * es.eigenvalues().cast<Complex>().asDiagonal() *
                        es.eigenvectors().adjoint();
    CHECK(linalg::max_abs(make_density(back).matrix() - rho.matrix()) < 1e-10);
  }
}

TEST_CASE("trace distance examples") {
  const auto zero = make_density(diag2(1, 0));
  const auto one = make_density(diag2(0, 1));
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  const auto p = make_density(plus);
  CHECK(trace_distance(zero, zero) == 0.0);
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(trace_distance(zero, p) - std::sqrt(0.5)) < 1e-9);
  CHECK_THROWS_AS(trace_distance(zero, DensityOperator::maximally_mixed(3)), DimensionError);
}

TEST_CASE("trace distance agrees with the Bloch-vector formula") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_density(2, rng);
    const auto b = random_density(2, rng);
    CHECK(std::abs(trace_distance(a, b) - qtest::bloch_distance(a.matrix(), b.matrix())) < 1e-12);
  }
}

TEST_CASE("trace distance is a metric on random triples") {
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 8);
    const auto a = random_density(d, rng), b = random_density(d, rng), c = random_density(d, rng);
    const double ab = trace_distance(a, b);
    REQUIRE(std::abs(ab - trace_distance(b, a)) < 1e-14);
    REQUIRE(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-9);
    REQUIRE(ab >= 0.0);
    REQUIRE(ab <= 1.0);
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityOperator::maximally_mixed(2)) == doctest::Approx(1.0));
  CHECK(std::abs(von_neumann_entropy(make_density(diag2(0.75, 0.25))) - 0.8112781244591328) < 1e-9);
  CHECK(std::abs(von_neumann_entropy(make_density(diag2(0.75, 0.25))) - qtest::h2(0.25)) < 1e-12);
  Rng rng(8);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 8);
    const double s = von_neumann_entropy(random_density(d, rng));
    REQUIRE(s >= -1e-9);
    REQUIRE(s <= std::log2(static_cast<double>(d)) + 1e-9);
  }
}

TEST_CASE("relative entropy") {
  const auto zero = make_density(diag2(1, 0));
  const auto one = make_density(diag2(0, 1));
  CHECK(relative_entropy(zero, zero) == doctest::Approx(0.0));
  CHECK(relative_entropy(zero, DensityOperator::maximally_mixed(2)) == doctest::Approx(1.0));
  CHECK(std::isinf(relative_entropy(zero, one)));
  // Commuting case reduces to classical Kullback-Leibler divergence.
  const double kl = 0.3 * std::log2(0.3 / 0.6) + 0.7 * std::log2(0.7 / 0.4);
  CHECK(relative_entropy(make_density(diag2(0.3, 0.7)), make_density(diag2(0.6, 0.4))) ==
        doctest::Approx(kl).epsilon(1e-12));
  Rng rng(9);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 8);
    const double r = relative_entropy(random_density(d, rng), random_density(d, rng, d));
    REQUIRE(std::isfinite(r));
    REQUIRE(r >= -1e-9);
  }
}

TEST_CASE("base length") {
  const StringBasis b2(2), b4(4);
  CHECK(base_length(DensityOperator::basis_state(b2, "00")) == 2);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(b4.dim()));
  v(static_cast<Eigen::Index>(b4.index_of("00"))) = 0.8;
  v(static_cast<Eigen::Index>(b4.index_of("1011"))) = -0.6;
  CHECK(base_length(DensityOperator::pure(PureState(v, b4))) == 4);
  CHECK(base_length(DensityOperator::maximally_mixed(StringBasis(3))) == 3);
  CHECK(base_length(DensityOperator::basis_state(b4, "")) == 0);
  CHECK_THROWS_AS(base_length(DensityOperator::maximally_mixed(3)), DomainError);
}

TEST_CASE("change of basis embeds and truncates") {
  const StringBasis b1(1), b3(3);
  const auto rho = DensityOperator::basis_state(b1, "1");
  const auto big = change_basis(rho, b3);
  CHECK(big.dim() == 15);
  CHECK(big.matrix()(2, 2).real() == 1.0);
  const auto back = change_basis(big, b1);
  CHECK(linalg::max_abs(back.matrix() - rho.matrix()) == 0.0);
  CHECK_THROWS_AS(change_basis(DensityOperator::basis_state(b3, "010"), b1), DomainError);
}

TEST_CASE("mix forms convex combinations") {
  const auto a = make_density(diag2(1, 0));
  const auto b = make_density(diag2(0, 1));
  const std::vector<double> w{0.25, 0.75};
  const std::vector<DensityOperator> s{a, b};
  const auto m = mix(w, s);
  CHECK(m.matrix()(0, 0).real() == doctest::Approx(0.25));
  CHECK(m.matrix()(1, 1).real() == doctest::Approx(0.75));
}

TEST_CASE("pure state validation") {
  Vector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(PureState{v}, InvalidStateError);
  CHECK_NOTHROW(PureState(v / std::sqrt(2.0)));
}

TEST_CASE("seeded generators are reproducible") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  Rng r1(42), r2(42);
  CHECK(linalg::max_abs(haar_unitary(5, r1) - haar_unitary(5, r2)) == 0.0);
  Rng r3(1);
  const Matrix u = haar_unitary(6, r3);
  CHECK(linalg::max_abs(u.adjoint() * u - Matrix::Identity(6, 6)) < 1e-12);
  for (std::size_t rank = 1; rank <= 4; ++rank) {
    const auto rho = random_density(4, r3, rank);
    const auto spec = rho.spectrum();
    int positive = 0;
    for (double x : spec) positive += x > 1e-12;
    CHECK(positive == static_cast<int>(rank));
  }
}
