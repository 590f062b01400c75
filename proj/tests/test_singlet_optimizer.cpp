#include <doctest.h>

#include "lindgeo/errors.hpp"
#include "lindgeo/random.hpp"
#include "lindgeo/singlet_optimizer.hpp"

#include <cmath>

using namespace lindgeo;

namespace {

const double kGolden = (3.0 + std::sqrt(5.0)) / 8.0;

RestrictedState golden_restricted() {
  RestrictedState s;
  double a = (5.0 + std::sqrt(5.0)) / 40.0, b = 1.0 / (4.0 * std::sqrt(5.0));
  s.values << a, a, b, b, -a;
  return s;
}

OptimizerOptions quick(int starts = 16, std::uint64_t seed = 3) { return {starts, seed, 0}; }

// Rotation by pi/2 about x on both qubits: sigma_y -> sigma_z, sigma_z -> -sigma_y.
TwoQubitCoherence rotate_yz(const TwoQubitCoherence& c) {
  const int image[4] = {0, 2, 1, 3};
  const double sign[4] = {1, 1, -1, 1};
  TwoQubitCoherence out;
  for (int m = 0; m < 15; ++m) {
    auto p = pair_of_index(m);
    out.c(index_of_pair(image[p.first], image[p.second])) = sign[p.first] * sign[p.second] * c.c(m);
  }
  return out;
}

}  // namespace

TEST_CASE("restricted state packing") {
  auto s = golden_restricted();
  auto c = s.coherence();
  CHECK(c.at(1) == s.c1());
  CHECK(c.at(4) == s.c4());
  CHECK(c.at(13) == s.c13());
  CHECK(c.at(2) == 0.0);
  CHECK((RestrictedState::from_coherence(c).values - s.values).norm() == 0.0);
  CHECK(s.purity() == doctest::Approx(c.purity()));
  CHECK(singlet_fraction(c) == doctest::Approx(kGolden).epsilon(1e-15));
}

TEST_CASE("kernel condition residuals") {
  RestrictedState s;
  s.values << 0.1, 0.05, 0.0, 0.0, 0.0;
  auto k = restricted_kernel_residuals(s, 1.0, 1.0);
  CHECK(k.first == doctest::Approx(0.0));
  CHECK(k.degenerate);

  auto opt = restricted_kernel_residuals(golden_restricted(), 1.0, 1.0);
  CHECK(opt.degenerate);
  CHECK(std::isnan(opt.second));
  CHECK(std::isnan(opt.third));
  // The printed first condition is off at the optimum; the xx component vanishes.
  CHECK(opt.first == doctest::Approx(-2.0 * golden_restricted().c1()));
  CHECK(std::abs(opt.xx_component) < 1e-15);

  auto rng = make_stream(51, 0);
  RestrictedState g;
  for (int i = 0; i < 5; ++i) g.values(i) = uniform(rng, -0.2, 0.2);
  auto gk = restricted_kernel_residuals(g, 0.8, 1.25);
  CHECK_FALSE(gk.degenerate);
  CHECK(std::isfinite(gk.first));
  CHECK(std::isfinite(gk.second));
  CHECK(std::isfinite(gk.third));
}

TEST_CASE("solvability examples") {
  CanonicalDissipator d{{0, 0.8, 1.25}, {1, 0, 0}};
  auto zero = solvability(TwoQubitCoherence{}, d);
  CHECK_FALSE(zero.feasible);
  CHECK_FALSE(zero.hamiltonian.has_value());

  auto rng = make_stream(52, 0);
  RestrictedState g;
  for (int i = 0; i < 5; ++i) g.values(i) = uniform(rng, -0.2, 0.2);
  auto rep = solvability(g.coherence(), d);
  CHECK(rep.kernel_basis.size() == 3);
  CHECK((rep.G + rep.G.transpose()).norm() < 1e-14);

  // The limit family misses the kernel test by O(eps^2).
  auto worst_residual = [](double eps) {
    auto fam = explicit_family_limit(eps);
    auto frep = solvability(fam.state.coherence(), fam.problem().dissipator);
    CHECK(frep.kernel_basis.size() == 3);
    double worst = 0.0;
    for (double r : frep.orthogonality_residuals) worst = std::max(worst, std::abs(r));
    return std::pair{frep.feasible, worst};
  };
  auto [feasible_1, res_1] = worst_residual(0.1);
  auto [feasible_01, res_01] = worst_residual(0.01);
  CHECK_FALSE(feasible_1);
  CHECK(res_1 == doctest::Approx(3.97e-4).epsilon(0.01));
  CHECK(res_01 == doctest::Approx(3.95e-6).epsilon(0.01));
  CHECK_FALSE(feasible_01);
}

TEST_CASE("moment gradients match finite differences") {
  auto rng = make_stream(53, 0);
  for (int n = 0; n < 10; ++n) {
    CanonicalDissipator d{{uniform(rng, 0, 2), uniform(rng, 0.2, 2), uniform(rng, 0.2, 2)}, {0, 0, 0}};
    d.t[0] = uniform(rng, -1, 1) * std::sqrt(d.q[1] * d.q[2]);
    TwoQubitCoherence c;
    for (int m = 0; m < 15; ++m) c.c(m) = uniform(rng, -0.1, 0.1);
    auto mv = stationarity_moments_with_gradient(c, d);
    for (int r = 0; r < 3; ++r) {
      CHECK(mv.value[r] == doctest::Approx(stationarity_moment(c, d, r + 1)).epsilon(1e-12));
      for (int m = 0; m < 15; ++m) {
        const double h = 1e-6;
        TwoQubitCoherence up = c, down = c;
        up.c(m) += h;
        down.c(m) -= h;
        double fd = (stationarity_moment(up, d, r + 1) - stationarity_moment(down, d, r + 1)) / (2 * h);
        CHECK(std::abs(fd - mv.gradient[r](m)) < 1e-7);
      }
    }
  }
}

TEST_CASE("kernel test against steady states of random problems") {
  auto rng = make_stream(54, 0);
  int agree = 0;
  const int trials = 100;
  for (int n = 0; n < trials; ++n) {
    SteadyProblem p;
    for (auto& q : p.dissipator.q) q = uniform(rng, 0.1, 2.0);
    p.dissipator.t[0] = uniform(rng, -1, 1) * std::sqrt(p.dissipator.q[1] * p.dissipator.q[2]);
    for (int m = 0; m < 15; ++m) p.hamiltonian.d(m) = standard_normal(rng);
    auto sol = steady_state(p);

    auto rep = solvability(sol.c, p.dissipator);
    REQUIRE(rep.feasible);
    REQUIRE(rep.hamiltonian.has_value());
    CHECK(rep.residual < 1e-9);
    auto again = steady_state({p.dissipator, *rep.hamiltonian});
    if ((again.c.c - sol.c.c).norm() < 1e-8) ++agree;

    // A perturbed state breaks stationarity and the moments see it.
    TwoQubitCoherence off = sol.c;
    off.c(4) += 0.01;
    auto bad = solvability(off, p.dissipator);
    double cmax = 0.0;
    for (int r = 1; r <= 3; ++r) cmax = std::max(cmax, std::abs(stationarity_moment(off, p.dissipator, r)));
    CHECK(bad.feasible == (cmax < 1e-9));
  }
  CHECK(agree == trials);
}

TEST_CASE("restricted optimum") {
  auto near = optimize_restricted(0.999, quick());
  CHECK(std::abs(near.F - kGolden) < 1e-3);
  CHECK(near.diagnostics.lindblad_residual <= 1e-8);
  CHECK(near.diagnostics.min_eigenvalue >= -1e-9);
  REQUIRE(near.hamiltonian.has_value());
  auto s = RestrictedState::from_coherence(near.state);
  auto g = golden_restricted();
  CHECK((s.values - g.values).cwiseAbs().maxCoeff() < 1e-3);

  auto mid = optimize_restricted(0.5, quick());
  CHECK(mid.F == doctest::Approx(0.6108495283).epsilon(1e-8));
  CHECK(mid.F < kGolden);

  // Relabelling y and z maps the optimum at q2 to a steady state at 1/q2.
  CanonicalDissipator swapped{{0, 2.0, 0.5}, {1, 0, 0}};
  auto image = rotate_yz(mid.state);
  CHECK(singlet_fraction(image) == doctest::Approx(mid.F).epsilon(1e-14));
  CHECK(solvability(image, swapped).feasible);
}

TEST_CASE("optimum sits at q1 = 0") {
  double f0 = optimize_restricted(0.9, quick(), 0.0).F;
  double f1 = optimize_restricted(0.9, quick(), 0.1).F;
  double f5 = optimize_restricted(0.9, quick(), 0.5).F;
  CHECK(f0 > f1);
  CHECK(f1 > f5);
}

TEST_CASE("multistart does not depend on the worker count") {
  OptimizerOptions one{8, 11, 1}, many{8, 11, 3};
  auto a = optimize_restricted(0.7, one);
  auto b = optimize_restricted(0.7, many);
  CHECK(a.F == b.F);
  CHECK(a.state.c == b.state.c);
}

TEST_CASE("full optimisation at zero norm") {
  auto c12 = optimize_full(0.0, MomentSet::C12, quick());
  auto c123 = optimize_full(0.0, MomentSet::C123, quick());
  CHECK(std::abs(c12.F - 0.65496) < 2e-3);
  CHECK(std::abs(c123.F - 0.65451) < 2e-3);
  CHECK(c12.F >= c123.F - 1e-9);
  CHECK(c123.F <= kGolden + 1e-6);

  CHECK_THROWS_AS(optimize_full(-0.1, MomentSet::C12), PreconditionError);
  CHECK_THROWS_AS(optimize_full(0.8, MomentSet::C12), DomainError);
  CHECK_THROWS_AS(optimize_restricted(1.0), PreconditionError);
  CHECK_THROWS_AS(optimize_restricted(0.5, {}, -1.0), PreconditionError);
}

TEST_CASE("explicit family") {
  auto p = explicit_family(0.9);
  CHECK(p.kappa == doctest::Approx(3.654755).epsilon(1e-6));
  CHECK(p.F_formula == doctest::Approx(0.81 / (3.24 + 0.6561 + 1.0 - p.kappa)).epsilon(1e-12));
  CHECK(p.F_formula == doctest::Approx(0.65252).epsilon(1e-5));
  CHECK(std::abs(p.F_formula - p.F_sum) < 1e-12);
  // Measured, not zero: see the README.
  CHECK(p.xx_residual == doctest::Approx(6.1e-3).epsilon(0.05));

  auto lim = explicit_family_limit(0.01);
  double h = (std::sqrt(5.0) - 1.0) / (16.0 * 0.01);
  CHECK(h == doctest::Approx(7.72542).epsilon(1e-6));
  CHECK(lim.h_zy == doctest::Approx(h));
  CHECK(lim.h_yz == doctest::Approx(h));
  auto ham = lim.hamiltonian();
  CHECK(ham.to_labels().at("zy") == doctest::Approx(h));
  CHECK(ham.to_labels().at("yz") == doctest::Approx(h));

  auto tiny = explicit_family_limit(1e-6);
  CHECK((tiny.state.values - golden_restricted().values).cwiseAbs().maxCoeff() < 1e-5);
  CHECK(std::abs(tiny.F_sum - kGolden) < 1e-5);

  // The xx component of the limit form falls off quickly with epsilon.
  CHECK(explicit_family_limit(0.05).xx_residual < explicit_family_limit(0.1).xx_residual);

  CHECK_THROWS_AS(explicit_family(1.0), PreconditionError);
  CHECK_THROWS_AS(explicit_family_limit(0.0), PreconditionError);
}

TEST_CASE("small shift") {
  auto rows = small_shift_experiment({1, 1, 1}, {0.0, 0.05}, quick(4));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].F == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rows[1].F >= 0.25);
  CHECK(rows[1].F - 0.25 < 0.02);
  CHECK_THROWS_AS(small_shift_experiment({1, 1, 1}, {2.0}, quick(2)), DomainError);
}
