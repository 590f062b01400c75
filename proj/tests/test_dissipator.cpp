#include <doctest.h>

#include "lindgeo/dissipator.hpp"
#include "lindgeo/errors.hpp"
#include "lindgeo/random.hpp"


using namespace lindgeo;

namespace {

const cplx I1{0.0, 1.0};

Eigen::Matrix3d diag3(double a, double b, double c) { return Eigen::Vector3d(a, b, c).asDiagonal(); }

// rho -> sum_jk g_jk (2 s_j rho s_k - anti(j, k) rho - rho anti(j, k)).
Eigen::Matrix2cd gks_dissipate(const GksMatrix& g, bool literal_order, const Eigen::Matrix2cd& rho) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      Eigen::Matrix2cd prod = literal_order ? pauli(j) * pauli(k) : pauli(k) * pauli(j);
      out += g(j, k) * (2.0 * pauli(j) * rho * pauli(k) - prod * rho - rho * prod);
    }
  return out;
}

AffineGenerator gks_generator(const GksMatrix& g, bool literal_order) {
  auto dissipate = [&](const Eigen::Matrix2cd& rho) { return gks_dissipate(g, literal_order, rho); };
  AffineGenerator gen;
  gen.linear = Eigen::Matrix3d::Zero();
  gen.shift = Eigen::Vector3d::Zero();
  Eigen::Matrix2cd half = Eigen::Matrix2cd::Identity() / 2.0;
  for (int i = 0; i < 3; ++i) {
    gen.shift(i) = (dissipate(half) * pauli(i)).trace().real();
    for (int k = 0; k < 3; ++k) {
      Eigen::Matrix2cd basis = pauli(k) / 2.0;
      gen.linear(i, k) = (dissipate(basis) * pauli(i)).trace().real();
    }
  }
  return gen;
}

// q in [0,4]^3 with 20% of components exactly zero, t in [-3,3]^3.
CanonicalDissipator random_dissipator(std::mt19937_64& rng) {
  CanonicalDissipator d;
  for (int i = 0; i < 3; ++i) {
    d.q[i] = uniform01(rng) < 0.2 ? 0.0 : uniform(rng, 0.0, 4.0);
    d.t[i] = uniform(rng, -3.0, 3.0);
  }
  return d;
}

// Valid dissipator: positive rates and a shift inside the ellipsoid.
CanonicalDissipator random_valid(std::mt19937_64& rng) {
  CanonicalDissipator d;
  for (auto& q : d.q) q = uniform(rng, 0.05, 4.0);
  Eigen::Vector3d u(standard_normal(rng), standard_normal(rng), standard_normal(rng));
  u.normalize();
  double r = std::cbrt(uniform01(rng));
  d.t = {r * u(0) * std::sqrt(d.q[1] * d.q[2]), r * u(1) * std::sqrt(d.q[0] * d.q[2]),
         r * u(2) * std::sqrt(d.q[0] * d.q[1])};
  return d;
}

}  // namespace

TEST_CASE("gks matrix examples") {
  auto g = gks_matrix({{1, 1, 1}, {0, 0, 0}});
  CHECK((g - GksMatrix::Identity() / 8.0).norm() < 1e-15);

  g = gks_matrix({{2, 2, 0}, {0, 0, -2}});
  GksMatrix expected;
  expected << 2.0, 2.0 * I1, 0.0, -2.0 * I1, 2.0, 0.0, 0.0, 0.0, 0.0;
  CHECK((g - expected / 8.0).norm() < 1e-15);
  CHECK((g - g.adjoint()).norm() == 0.0);

  auto spec = gks_spectrum({{1, 1, 1}, {1, 0, 0}});
  CHECK(spec.eigenvalues[0] == doctest::Approx(0.0));
  CHECK(spec.eigenvalues[1] == doctest::Approx(0.125));
  CHECK(spec.eigenvalues[2] == doctest::Approx(0.25));
}

TEST_CASE("closed-form Lindblad test") {
  auto v = is_lindblad({{1, 1, 1}, {1, 0, 0}});
  CHECK(v.valid);
  CHECK(v.boundary);
  CHECK(v.margin == doctest::Approx(0.0));

  v = is_lindblad({{1, 1, 1}, {1, 1, 0}});
  CHECK_FALSE(v.valid);
  CHECK(v.ellipsoid == doctest::Approx(2.0));

  v = is_lindblad({{0, 1, 1}, {0, 0, 0.1}});
  CHECK_FALSE(v.valid);
  CHECK_FALSE(v.admissible());

  v = is_lindblad({{-0.1, 1, 1}, {0, 0, 0}});
  CHECK_FALSE(v.valid);

  v = is_lindblad({{0, 1, 1}, {1, 0, 0}});
  CHECK(v.valid);
  CHECK(v.boundary);
}

TEST_CASE("spectrum report examples") {
  auto zero = gks_spectrum({});
  CHECK(zero.A == 0.0);
  CHECK(zero.B == 0.0);
  CHECK(zero.C == 0.0);
  CHECK(zero.Q == 0.0);
  CHECK(zero.rank == 0);

  auto s = gks_spectrum({{1, 1, 1}, {1, 0, 0}});
  CHECK(s.A == doctest::Approx(3.0));
  CHECK(s.B == doctest::Approx(1.0));
  CHECK(s.C == doctest::Approx(3.0));
  CHECK(s.Q == doctest::Approx(1.0));
  CHECK(s.charpoly[0] == doctest::Approx(512.0));
  CHECK(s.charpoly[1] == doctest::Approx(-192.0));
  CHECK(s.charpoly[2] == doctest::Approx(16.0));
  CHECK(s.charpoly[3] == doctest::Approx(0.0));
  CHECK(s.rank == 2);

  auto ad = gks_spectrum({{2, 2, 0}, {0, 0, -2}});
  CHECK(ad.Q - ad.B == doctest::Approx(0.0));
  CHECK(ad.A - ad.t2 == doctest::Approx(0.0));
  CHECK(ad.rank == 1);
}

TEST_CASE("classification examples") {
  auto c = classify({{0, 1, 1}, {1, 0, 0}});
  CHECK(c.tag == DissipatorTag::CaseI);
  CHECK(c.boundary);
  CHECK(c.gks_rank == 1);

  c = classify({{8, 0, 0}, {0, 0, 0}});
  CHECK(c.tag == DissipatorTag::CaseII);
  CHECK(c.unital);
  CHECK(c.gks_rank == 1);

  c = classify({{1, 1, 1}, {1, 0, 0}});
  CHECK(c.tag == DissipatorTag::Generic);
  CHECK(c.gks_rank == 2);

  CHECK(classify({}).tag == DissipatorTag::Zero);
  CHECK(classify({{1, 1, 1}, {1, 1, 0}}).tag == DissipatorTag::Invalid);
  CHECK(to_string(DissipatorTag::CaseII) == "case_ii");
}

TEST_CASE("case ii has a two-dimensional fixed space") {
  for (double q : {0.5, 8.0}) {
    for (int axis = 0; axis < 3; ++axis) {
      CanonicalDissipator d;
      d.q[axis] = q;
      REQUIRE(classify(d).tag == DissipatorTag::CaseII);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(canonical_generator(d).linear);
      int null = 0;
      for (int i = 0; i < 3; ++i) null += svd.singularValues()(i) < 1e-12 ? 1 : 0;
      CHECK(null == 1);  // one fixed Bloch direction plus the identity
    }
  }
}

TEST_CASE("Lindblad operator extraction") {
  auto ops = extract_lindblad_operators({{8, 0, 0}, {0, 0, 0}});
  REQUIRE(ops.size() == 1);
  CHECK((ops[0] - pauli(0)).norm() < 1e-14);

  ops = extract_lindblad_operators({{2, 2, 0}, {0, 0, -2}});
  REQUIRE(ops.size() == 1);
  Eigen::Matrix2cd lowering = (pauli(0) - I1 * pauli(1)) / 2.0;
  cplx overlap = (lowering.adjoint() * ops[0]).trace() / (lowering.adjoint() * lowering).trace();
  CHECK(std::abs(overlap) == doctest::Approx(1.0));
  CHECK((ops[0] - overlap * lowering).norm() < 1e-14);

  CHECK_THROWS_AS(extract_lindblad_operators({{1, 1, 1}, {2, 0, 0}}), DomainError);
}

TEST_CASE("two operators for the optimal dissipator family") {
  for (double q2 : {0.5, 0.9}) {
    for (double q1 : {0.0, 0.3}) {
      CanonicalDissipator d{{q1, q2, 1.0 / q2}, {1, 0, 0}};
      auto ops = extract_lindblad_operators(d);
      CHECK(ops.size() == static_cast<std::size_t>(q1 > 0 ? 2 : 1));
      // The printed pair generates the same dissipator.
      std::vector<Operator> printed{(std::sqrt(q2) * pauli(1) + I1 * pauli(2) / std::sqrt(q2)) / std::sqrt(8.0)};
      if (q1 > 0) printed.push_back(std::sqrt(q1 / 8.0) * pauli(0));
      auto ref = build_affine_generator({Operator::Zero(2, 2), printed}, Convention::Bloch1q);
      auto mine = canonical_generator(d);
      CHECK((ref.linear - mine.linear).norm() < 1e-12);
      CHECK((ref.shift - mine.shift).norm() < 1e-12);
    }
  }
}

TEST_CASE("canonical generator examples") {
  auto g = canonical_generator({{8, 0, 0}, {0, 0, 0}});
  CHECK((g.linear - diag3(0, -4, -4)).norm() < 1e-15);
  CHECK(g.shift.norm() == 0.0);

  g = canonical_generator({{0, 1, 1}, {1, 0, 0}});
  CHECK((g.linear - diag3(-1, -0.5, -0.5)).norm() < 1e-15);
  CHECK((g.shift - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);

  CanonicalDissipator ad{{2, 2, 0}, {0, 0, -2}};
  g = canonical_generator(ad);
  CHECK((g.linear - diag3(-1, -1, -2)).norm() < 1e-15);
  auto rebuilt = build_affine_generator(lindblad_spec(ad), Convention::Bloch1q);
  CHECK((rebuilt.linear - g.linear).norm() < 1e-12);
  CHECK((rebuilt.shift - g.shift).norm() < 1e-12);
}

TEST_CASE("anticommutator ordering") {
  // The standard ordering reproduces the canonical form. Writing the
  // anticommutator with the same index order as the jump term loses the
  // shift and leaks c.t into the trace.
  auto rng = make_stream(21, 0);
  for (int n = 0; n < 100; ++n) {
    auto d = random_valid(rng);
    auto canon = canonical_generator(d);
    auto standard = gks_generator(gks_matrix(d), false);
    auto literal = gks_generator(gks_matrix(d), true);
    CHECK((standard.linear - canon.linear).norm() < 1e-12);
    CHECK((standard.shift - canon.shift).norm() < 1e-12);
    CHECK((literal.linear - canon.linear).norm() < 1e-12);
    CHECK(literal.shift.norm() < 1e-12);
    for (int k = 0; k < 3; ++k) {
      cplx tr_std = gks_dissipate(gks_matrix(d), false, pauli(k) / 2.0).trace();
      cplx tr_lit = gks_dissipate(gks_matrix(d), true, pauli(k) / 2.0).trace();
      CHECK(std::abs(tr_std) < 1e-12);
      CHECK(std::abs(tr_lit + d.t[k]) < 1e-12);
    }
  }
}

TEST_CASE("closed form agrees with the spectral oracle") {
  auto rng = make_stream(22, 0);
  int disagreements = 0, implication_failures = 0;
  double worst_charpoly = 0.0;
  for (int n = 0; n < 20000; ++n) {
    auto d = random_dissipator(rng);
    auto v = is_lindblad(d);
    auto s = gks_spectrum(d);
    bool spectral = s.eigenvalues[0] >= -1e-12;
    if (v.valid != spectral && std::abs(s.eigenvalues[0]) > 1e-9) ++disagreements;
    if (v.valid && d.q[0] > 0 && d.q[1] > 0 && d.q[2] > 0 && s.A < s.t2) ++implication_failures;

    // 512 prod (x - lambda_j) against the invariants.
    const auto& e = s.eigenvalues;
    std::array<double, 4> roots{512.0, -512.0 * (e[0] + e[1] + e[2]),
                                512.0 * (e[0] * e[1] + e[0] * e[2] + e[1] * e[2]), -512.0 * e[0] * e[1] * e[2]};
    double lam = std::max({1.0, std::abs(e[0]), std::abs(e[2])});
    for (int k = 1; k < 4; ++k)
      worst_charpoly = std::max(worst_charpoly, std::abs(roots[k] - s.charpoly[k]) / (512.0 * std::pow(lam, k)));
  }
  CHECK(disagreements == 0);
  CHECK(implication_failures == 0);
  CHECK(worst_charpoly < 1e-10);
}

TEST_CASE("extracted operators rebuild the generator") {
  auto rng = make_stream(23, 0);
  double worst = 0.0;
  for (int n = 0; n < 2000; ++n) {
    auto d = random_valid(rng);
    auto canon = canonical_generator(d);
    auto rebuilt = build_affine_generator(lindblad_spec(d), Convention::Bloch1q);
    worst = std::max({worst, (canon.linear - rebuilt.linear).cwiseAbs().maxCoeff(),
                      (canon.shift - rebuilt.shift).cwiseAbs().maxCoeff()});
  }
  CHECK(worst < 1e-10);
}
