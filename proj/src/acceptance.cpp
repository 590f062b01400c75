#include "lindgeo/acceptance.hpp"

#include "lindgeo/channel.hpp"
#include "lindgeo/errors.hpp"
#include "lindgeo/random.hpp"
#include "lindgeo/singlet_optimizer.hpp"
#include "lindgeo/steady_state.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>

namespace lindgeo {

namespace {

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

const double kFmax = (3.0 + std::sqrt(5.0)) / 8.0;

Triple unit_vector(std::mt19937_64& rng) {
  for (;;) {
    const Triple u{standard_normal(rng), standard_normal(rng), standard_normal(rng)};
    const double n = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    if (n > 1e-6) return {u[0] / n, u[1] / n, u[2] / n};
  }
}

// q in [lo, hi]^3 and t inside the ellipsoid t1^2/(q2 q3) + ... <= scale^2.
CanonicalDissipator random_valid_dissipator(std::mt19937_64& rng, double lo, double hi, bool on_boundary = false) {
  CanonicalDissipator d;
  for (auto& q : d.q) q = uniform(rng, lo, hi);
  const Triple w = unit_vector(rng);
  const double s = on_boundary ? 1.0 : uniform01(rng);
  for (std::size_t i = 0; i < 3; ++i) d.t[i] = s * w[i] * std::sqrt(d.q[(i + 1) % 3] * d.q[(i + 2) % 3]);
  return d;
}

// Mix of generic parameters, exact boundary points and zero-rate faces.
CanonicalDissipator oracle_sample(std::mt19937_64& rng) {
  const double kind = uniform01(rng);
  CanonicalDissipator d;
  if (kind < 0.6) {
    for (auto& q : d.q) q = uniform(rng, -0.2, 2.0);
    for (auto& t : d.t) t = uniform(rng, -1.5, 1.5);
    return d;
  }
  for (auto& q : d.q) q = uniform(rng, 0.0, 2.0);
  if (kind > 0.85) d.q[static_cast<std::size_t>(rng() % 3)] = 0.0;
  const Triple w = unit_vector(rng);
  const double s = kind < 0.75 ? 1.0 : uniform(rng, 0.9, 1.1);
  for (std::size_t i = 0; i < 3; ++i) d.t[i] = s * w[i] * std::sqrt(d.q[(i + 1) % 3] * d.q[(i + 2) % 3]);
  return d;
}

SteadyProblem random_problem(std::mt19937_64& rng) {
  SteadyProblem p{random_valid_dissipator(rng, 0.2, 2.0), {}};
  for (int m = 0; m < 15; ++m) p.hamiltonian.d(m) = standard_normal(rng);
  return p;
}

void criterion_closed_form_oracle(CriterionResult& r, const AcceptanceOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  auto rng = make_stream(o.seed, 1);
  int disagreements = 0;
  int outside_band = 0;
  int valid = 0;
  for (int i = 0; i < 100000; ++i) {
    const CanonicalDissipator d = oracle_sample(rng);
    const LindbladVerdict v = is_lindblad(d);
    const bool spectral = gks_spectrum(d).eigenvalues[0] >= -1e-12;
    valid += v.valid ? 1 : 0;
    if (v.valid != spectral) {
      ++disagreements;
      if (std::abs(v.margin) > 1e-9) ++outside_band;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.details.push_back(fmt("100000 samples, %d valid, %d disagreements, %d outside the 1e-9 band, %.2f s", valid,
                          disagreements, outside_band, secs));
  r.passed = outside_band == 0 && secs < 10.0;
}

void criterion_charpoly(CriterionResult& r, const AcceptanceOptions& o) {
  auto rng = make_stream(o.seed, 1);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const SpectrumReport s = gks_spectrum(oracle_sample(rng));
    const auto& l = s.eigenvalues;
    const double scale = std::max({std::abs(l[0]), std::abs(l[1]), std::abs(l[2]), 1e-300});
    const std::array<double, 4> expected{512.0, -512.0 * (l[0] + l[1] + l[2]),
                                         512.0 * (l[0] * l[1] + l[1] * l[2] + l[0] * l[2]), -512.0 * l[0] * l[1] * l[2]};
    for (int k = 1; k < 4; ++k) {
      const double ref = 512.0 * std::pow(scale, k);
      const double err = std::abs(s.charpoly[static_cast<std::size_t>(k)] - expected[static_cast<std::size_t>(k)]) / ref;
      worst = std::max(worst, err);
    }
  }
  r.details.push_back(fmt("max relative coefficient error %.3e over 100000 samples", worst));
  r.passed = worst <= 1e-10;
}

void criterion_generator(CriterionResult& r, const AcceptanceOptions& o) {
  auto rng = make_stream(o.seed, 3);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const CanonicalDissipator d = random_valid_dissipator(rng, 0.0, 2.0);
    const AffineGenerator a = canonical_generator(d);
    const AffineGenerator b = build_affine_generator(lindblad_spec(d), Convention::Bloch1q);
    worst = std::max({worst, (a.linear - b.linear).cwiseAbs().maxCoeff(), (a.shift - b.shift).cwiseAbs().maxCoeff()});
  }
  const DiagonalChannel ad = generator_to_channel({{2.0, 2.0, 0.0}, {0.0, 0.0, -2.0}});
  const double e1 = std::exp(-1.0);
  const double e2 = std::exp(-2.0);
  const double spot = std::max({std::abs(ad.lambda[0] - e1), std::abs(ad.lambda[1] - e1), std::abs(ad.lambda[2] - e2),
                                std::abs(ad.v[0]), std::abs(ad.v[1]), std::abs(ad.v[2] + (1.0 - e2))});
  r.details.push_back(fmt("max entry difference %.3e over 10000 dissipators", worst));
  r.details.push_back(fmt("amplitude damping: lambda = (%.12f, %.12f, %.12f), v3 = %.12f, deviation %.2e", ad.lambda[0],
                          ad.lambda[1], ad.lambda[2], ad.v[2], spot));
  r.passed = worst <= 1e-10 && spot <= 1e-12;
}

void criterion_channel(CriterionResult& r, const AcceptanceOptions& o) {
  auto rng = make_stream(o.seed, 4);
  double worst_trip = 0.0;
  double worst_choi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10000; ++i) {
    const CanonicalDissipator d = random_valid_dissipator(rng, 0.0, 4.0, i % 2 == 0);
    const DiagonalChannel ch = generator_to_channel(d);
    const GeneratorRecovery back = channel_to_generator(ch);
    for (std::size_t k = 0; k < 3; ++k) {
      worst_trip = std::max({worst_trip, std::abs(back.dissipator.q[k] - d.q[k]), std::abs(back.dissipator.t[k] - d.t[k])});
    }
    worst_choi = std::min(worst_choi, cpm_membership(ch).min_choi_eigenvalue);
  }
  r.details.push_back(fmt("round trip max deviation %.3e, min Choi eigenvalue %.3e over 10000 channels (half on the boundary)", worst_trip,
                          worst_choi));
  r.passed = worst_trip <= 1e-9 && worst_choi >= -1e-10;
}

void criterion_volume(CriterionResult& r, const AcceptanceOptions& o) {
  r.passed = true;
  const std::array<std::pair<VolumeRegion, double>, 3> targets{
      {{VolumeRegion::LindbladOctantAbs, 0.25}, {VolumeRegion::RatioOctant1, 0.5}, {VolumeRegion::RatioFull, 0.375}}};
  for (const auto& [region, expected] : targets) {
    const VolumeEstimate e = estimate_volume_fraction(region, 10000000, o.seed, o.threads);
    const double dev = std::abs(e.fraction - expected);
    const bool ok = dev <= 0.005 && dev <= 3.0 * e.standard_error;
    r.details.push_back(fmt("%s: %.6f (expected %.4f, stderr %.2e, %.2f sigma)", to_string(region).c_str(), e.fraction,
                            expected, e.standard_error, dev / e.standard_error));
    r.passed = r.passed && ok;
  }
}

void criterion_shift_ball(CriterionResult& r, const AcceptanceOptions& o) {
  auto rng = make_stream(o.seed, 6);
  double worst = 0.0;
  for (double s : {0.3, 0.5, 0.7}) {
    for (int i = 0; i < 100; ++i) {
      const ShiftBallSample b = shift_ball_sample({s, s, s}, unit_vector(rng));
      worst = std::max(worst, std::abs(b.s_max_cpm - b.s_max_lindblad));
    }
  }
  double half = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ShiftBallSample b = shift_ball_sample({0.5, 0.5, 0.5}, unit_vector(rng));
    half = std::max({half, std::abs(b.s_max_lindblad - 0.5), std::abs(b.s_max_cpm - 0.5)});
  }
  r.details.push_back(fmt("max |s_cpm - s_lindblad| = %.3e over 300 directions", worst));
  r.details.push_back(fmt("lambda = (1/2,1/2,1/2): max |s_max - 1/2| = %.3e", half));
  r.passed = worst <= 1e-6 && half <= 1e-9;
}

OptimizerOptions optimizer_options(const AcceptanceOptions& o) {
  OptimizerOptions opt;
  opt.seed = o.seed;
  opt.threads = o.threads;
  return opt;
}

void criterion_fmax(CriterionResult& r, const AcceptanceOptions& o) {
  const Extrapolation ex = extrapolate_restricted(optimizer_options(o));
  const OptimizationResult& mid = ex.runs[1];
  const RestrictedState s = RestrictedState::from_coherence(mid.state);
  const double a = (5.0 + std::sqrt(5.0)) / 40.0;
  const double b = 1.0 / (4.0 * std::sqrt(5.0));
  const Eigen::Matrix<double, 5, 1> golden = (Eigen::Matrix<double, 5, 1>() << a, a, b, b, -a).finished();
  const double coeff = (s.values - golden).cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < 3; ++i) {
    r.details.push_back(fmt("q2 = %.4f: F = %.9f, kernel residual %.2e, Lindbladian residual %.2e", ex.q2[i], ex.F[i],
                            ex.runs[i].diagnostics.kernel_residual, ex.runs[i].diagnostics.lindblad_residual));
  }
  r.details.push_back(fmt("quadratic extrapolation to q2 = 1: %.9f (target %.9f)", ex.at_one, kFmax));
  r.details.push_back(fmt("coefficients at q2 = 0.999: (%.6f, %.6f, %.6f, %.6f, %.6f), max deviation %.2e", s.c1(),
                          s.c4(), s.c6(), s.c11(), s.c13(), coeff));
  r.passed = std::abs(mid.F - kFmax) <= 1e-3 && std::abs(ex.at_one - kFmax) <= 1e-4 && coeff <= 2e-3;
}

void criterion_norm_sweep(CriterionResult& r, const AcceptanceOptions& o) {
  const std::vector<NormSweepPoint> sweep = norm_sweep({0.0, 0.02, 0.05, 0.1, 0.2}, optimizer_options(o));
  bool monotone = true;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    r.details.push_back(fmt("|c_A|^2 = %.2f: F(C1,C2) = %.7f, F(C1,C2,C3) = %.7f", sweep[i].norm2, sweep[i].f_c12,
                            sweep[i].f_c123));
    if (i > 0) monotone = monotone && sweep[i].f_c12 <= sweep[i - 1].f_c12 && sweep[i].f_c123 <= sweep[i - 1].f_c123;
  }
  const bool ends = std::abs(sweep[0].f_c12 - 0.65496) <= 2e-3 && std::abs(sweep[0].f_c123 - 0.65451) <= 2e-3;
  r.details.push_back(fmt("endpoints within 2e-3: %s, non-increasing: %s", ends ? "yes" : "no", monotone ? "yes" : "no"));
  r.passed = ends && monotone;
}

void criterion_unital(CriterionResult& r, const AcceptanceOptions& o) {
  const UnitalSingletBound pair = unital_singlet_bound({{8.0, 0.0, 0.0}, {}});
  r.details.push_back(fmt("H = sx sx, L ~ sx: F = %.17g, stationarity residual %.2e, certificate %.17g", pair.achieved,
                          pair.achieved_residual, pair.certificate));
  auto rng = make_stream(o.seed, 9);
  double worst = 0.0;
  int witnesses = 0;
  int witness_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    CanonicalDissipator d;
    for (auto& q : d.q) q = uniform(rng, 0.0, 2.0);
    const int zeros = i % 3;  // generic, one zero rate, two zero rates
    const auto first = static_cast<std::size_t>(rng() % 3);
    for (int z = 0; z < zeros; ++z) d.q[(first + static_cast<std::size_t>(z)) % 3] = 0.0;
    const UnitalSingletBound b = unital_singlet_bound(d);
    worst = std::max(worst, b.certificate);
    if (zeros == 2) {
      ++witnesses;
      if (b.achieved != 0.5 || b.achieved_residual > 1e-12) ++witness_failures;
    }
  }
  r.details.push_back(fmt("1000 unital dissipators: largest bound on sup_H F = %.12f", worst));
  r.details.push_back(fmt("single-jump witnesses reaching 1/2: %d of %d", witnesses - witness_failures, witnesses));
  r.passed = pair.achieved == 0.5 && pair.achieved_residual <= 1e-12 && worst <= 0.5 + 1e-6 && witness_failures == 0;
}

void criterion_small_shift(CriterionResult& r, const AcceptanceOptions& o) {
  const OptimizerOptions opt = optimizer_options(o);
  const auto rows = small_shift_experiment({1.0, 1.0, 1.0}, {0.2, 0.1, 0.05, 1.0}, opt);
  for (const auto& row : rows) r.details.push_back(fmt("t1 = %.2f: sup_H F = %.9f", row.t1, row.F));
  const bool decreasing = rows[0].F > rows[1].F && rows[1].F > rows[2].F && rows[2].F > 0.25;
  const bool close = rows[2].F - 0.25 <= 0.02;
  const bool boundary = rows[3].F >= 0.64;
  if (!boundary) {
    OptimizerOptions relax = opt;
    relax.starts = 16;
    const OptimizationResult bound = moment_relaxation({{1.0, 1.0, 1.0}, {1.0, 0.0, 0.0}}, MomentSet::C123, relax);
    r.details.push_back(fmt("t1 = 1: state-space maximum under C1 = C2 = C3 = 0, rho >= 0: %.9f", bound.F));
  }
  r.details.push_back(fmt("decreasing toward 1/4: %s, within 0.02 at t1 = 0.05: %s, boundary scan >= 0.64: %s",
                          decreasing ? "yes" : "no", close ? "yes" : "no", boundary ? "yes" : "no"));
  r.passed = decreasing && close && boundary;
}

void criterion_steady_oracle(CriterionResult& r, const AcceptanceOptions& o) {
  auto rng = make_stream(o.seed, 11);
  double worst = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  int degenerate = 0;
  for (int i = 0; i < 1000; ++i) {
    const SteadyProblem p = random_problem(rng);
    const SteadySolution s = steady_state(p);
    const OperatorSteadyState op = operator_space_steady_state(p);
    if (op.null_dim != 1 || !s.unique) {
      ++degenerate;
      continue;
    }
    const TwoQubitCoherence c = TwoQubitCoherence::from_density(op.rho);
    worst = std::max(worst, (c.c - s.c.c).cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, min_eigenvalue(s.c.density()));
  }
  r.details.push_back(fmt("1000 problems: max coherence difference %.3e, min eigenvalue %.3e, degenerate %d", worst,
                          min_eig, degenerate));
  r.passed = degenerate == 0 && worst <= 1e-10 && min_eig >= -1e-9;
}

void criterion_scaling(CriterionResult& r, const AcceptanceOptions& o) {
  auto rng = make_stream(o.seed, 12);
  double worst = 0.0;
  int coupled = 0;
  for (int i = 0; i < 1000; ++i) {
    const SteadyProblem p = random_problem(rng);
    const AffineGenerator gen = build_two_qubit_generator(p);
    const SteadySolution base = solve_affine(gen.linear, gen.shift);
    for (double k : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const SteadySolution scaled = solve_affine(gen.linear, k * gen.shift);
      worst = std::max(worst, (scaled.c.c - k * base.c.c).cwiseAbs().maxCoeff());
    }
    try {
      rescale_shift(p, base, 0.5);
    } catch (const DomainError&) {
      ++coupled;
    }
  }
  r.details.push_back(fmt("affine slice: max |c(k t) - k c(t)| = %.3e over 1000 problems and 5 factors", worst));
  r.details.push_back(fmt("physical rescaling (q, t/2) with state c/2: %d of 1000 not stationary", coupled));
  r.passed = worst <= 1e-10;
}

void criterion_family(CriterionResult& r, const AcceptanceOptions&) {
  r.gating = false;
  for (double q2 : {0.8, 0.9, 0.95}) {
    const FamilyPoint f = explicit_family(q2);
    const KernelConditions k = restricted_kernel_residuals(f.state, q2, 1.0 / q2);
    r.details.push_back(fmt("family q2 = %.2f: F = %.6f, residual %.3e, xx residual %.3e", q2, f.F_formula, f.residual,
                            f.xx_residual));
    r.details.push_back(fmt("  kernel conditions: q23 c1 - 4 c4 = %.3e, q23 c1 - 2 t1 c4 = %.3e, second %.3e, third %.3e",
                            k.first, k.xx_component, k.second, k.third));
  }
  std::array<double, 3> limit{};
  std::size_t i = 0;
  for (double eps : {0.1, 0.05, 0.02}) {
    const FamilyPoint l = explicit_family_limit(eps);
    const FamilyPoint e = explicit_family(1.0 - eps);
    limit[i++] = l.residual;
    r.details.push_back(fmt("eps = %.2f: limit form residual %.3e (xx %.3e); closed form at q2 = 1 - eps residual %.3e",
                            eps, l.residual, l.xx_residual, e.residual));
  }
  r.passed = limit[1] < limit[0] && limit[2] < limit[1];
}

const std::array<const char*, kCriterionCount> kTitles{
    "closed-form Lindblad test matches the GKS spectrum",
    "characteristic polynomial from invariants",
    "canonical generator equals the rebuilt generator",
    "channel round trip and complete positivity",
    "volume fractions",
    "shift balls of the Lindblad and CPM sets coincide",
    "maximal singlet fraction",
    "norm sweep endpoints and monotonicity",
    "unital singlet bound",
    "small-shift behaviour",
    "affine steady state matches the Liouvillian null space",
    "shift scaling on the affine slice",
    "explicit family diagnostics",
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > kCriterionCount) throw PreconditionError("criterion id must lie in 1.." + std::to_string(kCriterionCount));
  CriterionResult r;
  r.id = id;
  r.title = kTitles[static_cast<std::size_t>(id - 1)];
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: criterion_closed_form_oracle(r, options); break;
      case 2: criterion_charpoly(r, options); break;
      case 3: criterion_generator(r, options); break;
      case 4: criterion_channel(r, options); break;
      case 5: criterion_volume(r, options); break;
      case 6: criterion_shift_ball(r, options); break;
      case 7: criterion_fmax(r, options); break;
      case 8: criterion_norm_sweep(r, options); break;
      case 9: criterion_unital(r, options); break;
      case 10: criterion_small_shift(r, options); break;
      case 11: criterion_steady_oracle(r, options); break;
      case 12: criterion_scaling(r, options); break;
      case 13: criterion_family(r, options); break;
    }
  } catch (const std::exception& e) {
    r.passed = false;
    r.details.push_back(std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    results.push_back(run_criterion(id, options));
    if (on_result) on_result(results.back());
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::string out = fmt("[%s] %2d %s%s (%.1f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                        r.gating ? "" : " [non-gating]", r.seconds);
  for (const auto& d : r.details) out += "       " + d + "\n";
  return out;
}

bool all_gating_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed || !r.gating; });
}

}  // namespace lindgeo
