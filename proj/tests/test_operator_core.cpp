#include <doctest.h>

#include "lindgeo/errors.hpp"
#include "lindgeo/operator_core.hpp"
#include "lindgeo/random.hpp"

#include <unsupported/Eigen/KroneckerProduct>

using namespace lindgeo;

namespace {

const cplx I1{0.0, 1.0};

Operator sx() { return pauli(0); }
Operator sy() { return pauli(1); }
Operator sz() { return pauli(2); }

Operator kron(const Operator& a, const Operator& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Operator singlet_projector() {
  Eigen::Vector4cd psi(0.0, 1.0, -1.0, 0.0);
  psi /= std::sqrt(2.0);
  return psi * psi.adjoint();
}

Operator random_density(std::mt19937_64& rng, int dim) {
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(standard_normal(rng), standard_normal(rng));
  Operator rho = a * a.adjoint();
  return rho / rho.trace();
}

Operator random_hermitian(std::mt19937_64& rng, int dim) {
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(standard_normal(rng), standard_normal(rng));
  return (a + a.adjoint()) / 2.0;
}

Operator random_traceless(std::mt19937_64& rng, int dim) {
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(standard_normal(rng), standard_normal(rng));
  a -= Operator::Identity(dim, dim) * (a.trace() / static_cast<double>(dim));
  return a;
}

}  // namespace

TEST_CASE("coherence transform examples") {
  auto mixed = to_coherence(Operator::Identity(2, 2) / 2.0, Convention::Bloch1q);
  CHECK(mixed.values.norm() < 1e-15);

  Operator up = Operator::Zero(2, 2);
  up(0, 0) = 1.0;
  auto north = to_coherence(up, Convention::Bloch1q);
  CHECK(north.values(0) == doctest::Approx(0.0));
  CHECK(north.values(1) == doctest::Approx(0.0));
  CHECK(north.values(2) == doctest::Approx(1.0));

  auto s = to_coherence(singlet_projector(), Convention::Pauli2q);
  REQUIRE(s.values.size() == 15);
  for (int m = 0; m < 15; ++m) {
    double expected = (m == 0 || m == 5 || m == 10) ? 0.25 : 0.0;
    CHECK(s.values(m) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("pair index map") {
  CHECK(index_of_pair(0, 0) == 0);
  CHECK(index_of_pair(1, 1) == 5);
  CHECK(index_of_pair(2, 2) == 10);
  CHECK(index_of_pair(0, 3) == 12);
  CHECK(pair_of_index(12).first == 0);
  CHECK(pair_of_index(12).second == 3);
  CHECK(pair_of_index(14).first == 2);
  CHECK(pair_of_index(14).second == 3);
  CHECK((basis_operator(Convention::Pauli2q, 12) - kron(sx(), Operator::Identity(2, 2))).norm() < 1e-15);
}

TEST_CASE("pauli products") {
  auto xy = pauli_product(0, 1);
  CHECK(xy.index == 2);
  CHECK(xy.phase == I1);
  auto yx = pauli_product(1, 0);
  CHECK(yx.phase == -I1);
  auto zz = pauli_product(2, 2);
  CHECK(zz.index == 3);
  CHECK(zz.phase == cplx(1.0, 0.0));
}

TEST_CASE("transform rejects bad input") {
  Operator nonherm = Operator::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.3;
  CHECK_THROWS_AS(to_coherence(nonherm, Convention::Bloch1q), PreconditionError);
  CHECK_THROWS_AS(to_coherence(Operator::Identity(4, 4) / 4.0, Convention::Bloch1q), PreconditionError);
  CHECK_THROWS_AS(to_coherence(Operator::Identity(2, 2), Convention::Bloch1q), PreconditionError);
}

TEST_CASE("affine generator examples") {
  LindbladSpec rot{sz() / 2.0, {}};
  auto g = build_affine_generator(rot, Convention::Bloch1q);
  Eigen::Matrix3d expected;
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  CHECK((g.linear - expected).norm() < 1e-14);
  CHECK(g.shift.norm() < 1e-14);

  LindbladSpec flip{Operator::Zero(2, 2), {sx()}};
  g = build_affine_generator(flip, Convention::Bloch1q);
  CHECK((g.linear - Eigen::Vector3d(0, -4, -4).asDiagonal().toDenseMatrix()).norm() < 1e-14);
  CHECK(g.shift.norm() < 1e-14);

  LindbladSpec damping{Operator::Zero(2, 2), {(sx() - I1 * sy()) / 2.0}};
  g = build_affine_generator(damping, Convention::Bloch1q);
  CHECK((g.linear - Eigen::Vector3d(-1, -1, -2).asDiagonal().toDenseMatrix()).norm() < 1e-14);
  CHECK((g.shift - Eigen::Vector3d(0, 0, -2)).norm() < 1e-14);
}

TEST_CASE("non-traceless jump is rejected") {
  LindbladSpec bad{Operator::Zero(2, 2), {Operator::Identity(2, 2)}};
  CHECK_THROWS_AS(build_affine_generator(bad, Convention::Bloch1q), PreconditionError);
  LindbladSpec wrong_dim{Operator::Zero(2, 2), {sx()}};
  CHECK_THROWS_AS(build_affine_generator(wrong_dim, Convention::Pauli2q), PreconditionError);
}

TEST_CASE("stationarity residual examples") {
  Operator up = Operator::Zero(2, 2);
  up(0, 0) = 1.0;
  CHECK(stationarity_residual({sz(), {}}, up) < 1e-15);

  Operator heis = kron(sx(), sx()) + kron(sy(), sy()) + kron(sz(), sz());
  CHECK(stationarity_residual({heis, {}}, singlet_projector()) < 1e-14);

  Operator id2 = Operator::Identity(2, 2);
  LindbladSpec unital{Operator::Zero(4, 4), {kron(sx(), id2), kron(id2, sy()), kron(sz(), sz())}};
  CHECK(stationarity_residual(unital, Operator::Identity(4, 4) / 4.0) < 1e-15);

  CHECK(stationarity_residual({sx(), {}}, up) > 0.1);
}

TEST_CASE("round trip on random densities") {
  auto rng = make_stream(11, 0);
  double worst = 0.0;
  for (int n = 0; n < 2000; ++n) {
    for (auto conv : {Convention::Bloch1q, Convention::Pauli2q}) {
      Operator rho = random_density(rng, hilbert_dim(conv));
      auto c = to_coherence(rho, conv);
      worst = std::max(worst, (to_operator(c) - rho).norm());
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("generator structure on random specs") {
  auto rng = make_stream(12, 0);
  for (int n = 0; n < 200; ++n) {
    for (auto conv : {Convention::Bloch1q, Convention::Pauli2q}) {
      int dim = hilbert_dim(conv);
      Operator h = random_hermitian(rng, dim);
      auto ham = build_affine_generator({h, {}}, conv);
      CHECK((ham.linear + ham.linear.transpose()).norm() < 1e-12);
      CHECK(ham.shift.norm() < 1e-12);

      std::vector<Operator> jumps{random_traceless(rng, dim), random_traceless(rng, dim)};
      auto full = build_affine_generator({h, jumps}, conv);
      if (conv == Convention::Bloch1q) {
        auto dis = build_affine_generator({Operator::Zero(dim, dim), jumps}, conv);
        CHECK((dis.linear - dis.linear.transpose()).norm() < 1e-12 * (1.0 + dis.linear.norm()));
      }

      // Affine action against the operator expression, component by component.
      Operator rho = random_density(rng, dim);
      auto c = to_coherence(rho, conv);
      Eigen::VectorXd predicted = full.apply(c.values);
      Operator lr = apply_lindbladian({h, jumps}, rho);
      CHECK(std::abs(lr.trace()) < 1e-12 * (1.0 + lr.norm()));
      for (int m = 0; m < coherence_dim(conv); ++m) {
        double component = (lr * basis_operator(conv, m)).trace().real();
        component = conv == Convention::Bloch1q ? component : -component / 4.0;
        CHECK(std::abs(component - predicted(m)) < 1e-12 * (1.0 + lr.norm()));
      }
    }
  }
}

TEST_CASE("liouvillian matches the direct application") {
  auto rng = make_stream(13, 0);
  Operator h = random_hermitian(rng, 4);
  std::vector<Operator> jumps{random_traceless(rng, 4)};
  Operator rho = random_density(rng, 4);
  Eigen::MatrixXcd s = liouvillian_matrix({h, jumps});
  Eigen::VectorXcd vec = Eigen::Map<const Eigen::VectorXcd>(rho.data(), 16);
  Eigen::VectorXcd out = s * vec;
  Operator direct = apply_lindbladian({h, jumps}, rho);
  CHECK((Eigen::Map<const Eigen::VectorXcd>(direct.data(), 16) - out).norm() < 1e-12);
}

TEST_CASE("hermiticity and eigenvalue helpers") {
  CHECK(is_hermitian(sy(), 1e-12));
  Operator a = sx();
  a(0, 1) = 2.0;
  CHECK_FALSE(is_hermitian(a, 1e-12));
  CHECK(min_eigenvalue(sz()) == doctest::Approx(-1.0));
}
