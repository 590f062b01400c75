#include "lindgeo/singlet_optimizer.hpp"

#include "lindgeo/errors.hpp"
#include "lindgeo/nelder_mead.hpp"
#include "lindgeo/parallel.hpp"
#include "lindgeo/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lindgeo {

namespace {

constexpr double kFeasibility = 1e-9;
constexpr double kProjectionTolerance = 1e-14;
constexpr int kSphereAngles = 9;
constexpr std::array<int, 10> kBlockA{2, 3, 5, 7, 8, 9, 10, 12, 14, 15};

const std::array<Eigen::Matrix4cd, 15>& pair_basis() {
  static const std::array<Eigen::Matrix4cd, 15> basis = [] {
    std::array<Eigen::Matrix4cd, 15> b;
    for (int m = 0; m < 15; ++m) b[static_cast<std::size_t>(m)] = basis_operator(Convention::Pauli2q, m);
    return b;
  }();
  return basis;
}

// hamiltonian_part of each unit Hamiltonian; G(c) has columns N_b c.
const std::array<Matrix15, 15>& unit_hamiltonian_parts() {
  static const std::array<Matrix15, 15> parts = [] {
    std::array<Matrix15, 15> p;
    for (int b = 0; b < 15; ++b) {
      Hamiltonian15 h;
      h.d(b) = 1.0;
      p[static_cast<std::size_t>(b)] = hamiltonian_part(h);
    }
    return p;
  }();
  return parts;
}

double trace_with_basis(int m, const Eigen::Matrix4cd& a) {
  return pair_basis()[static_cast<std::size_t>(m)].transpose().cwiseProduct(a).sum().real();
}

Eigen::Matrix4cd coherence_operator(const Vector15& c) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int m = 0; m < 15; ++m) out -= c(m) * pair_basis()[static_cast<std::size_t>(m)];
  return out;
}

double singlet_of(const Vector15& c) { return 0.25 + c(0) + c(5) + c(10); }

int active_moments(MomentSet set) { return set == MomentSet::C12 ? 2 : 3; }

CanonicalDissipator restricted_dissipator(double q1, double q2) { return {{q1, q2, 1.0 / q2}, {1.0, 0.0, 0.0}}; }

// C_r = tr(rho^r D(rho)) for a fixed dissipator.
class MomentEvaluator {
 public:
  explicit MomentEvaluator(const CanonicalDissipator& d) : gen_(two_qubit_dissipator_part(d)) {}

  Eigen::Vector3d values(const Vector15& c) const {
    const Eigen::Matrix4cd rho = 0.25 * Eigen::Matrix4cd::Identity() + coherence_operator(c);
    const Eigen::Matrix4cd x = coherence_operator(gen_.apply(c));
    const Eigen::Matrix4cd rx = rho * x;
    const Eigen::Matrix4cd rrx = rho * rx;
    return {rx.trace().real(), rrx.trace().real(), (rho * rrx).trace().real()};
  }

  MomentValues with_gradient(const Vector15& c) const {
    const Eigen::Matrix4cd rho = 0.25 * Eigen::Matrix4cd::Identity() + coherence_operator(c);
    const Eigen::Matrix4cd x = coherence_operator(gen_.apply(c));
    const Eigen::Matrix4cd rho2 = rho * rho;
    const Eigen::Matrix4cd rho3 = rho2 * rho;
    const std::array<Eigen::Matrix4cd, 3> powers{rho, rho2, rho3};
    // d/dc_m tr(rho^r X) = -tr(P_m sum_a rho^(r-1-a) X rho^a) - sum_n M_nm tr(P_n rho^r)
    const std::array<Eigen::Matrix4cd, 3> sandwiches{x, rho * x + x * rho, rho2 * x + rho * x * rho + x * rho2};
    MomentValues mv;
    for (std::size_t r = 0; r < 3; ++r) {
      mv.value[r] = (powers[r] * x).trace().real();
      Vector15 y, p;
      for (int m = 0; m < 15; ++m) {
        y(m) = trace_with_basis(m, sandwiches[r]);
        p(m) = trace_with_basis(m, powers[r]);
      }
      mv.gradient[r] = -y - gen_.linear.transpose() * p;
    }
    return mv;
  }

 private:
  AffineGenerator gen_;
};

// Coherence vector as a function of the search variables.
class Parametrization {
 public:
  virtual ~Parametrization() = default;
  virtual int dim() const = 0;
  virtual Vector15 map(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const = 0;  // 15 x dim
};

class RestrictedParametrization final : public Parametrization {
 public:
  int dim() const override { return 5; }
  Vector15 map(const Eigen::VectorXd& x) const override {
    Vector15 c = Vector15::Zero();
    for (int i = 0; i < 5; ++i) c(RestrictedState::labels[static_cast<std::size_t>(i)] - 1) = x(i);
    return c;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const override {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(15, 5);
    for (int i = 0; i < 5; ++i) j(RestrictedState::labels[static_cast<std::size_t>(i)] - 1, i) = 1.0;
    return j;
  }
};

class FullParametrization final : public Parametrization {
 public:
  int dim() const override { return 15; }
  Vector15 map(const Eigen::VectorXd& x) const override { return x; }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const override { return Eigen::MatrixXd::Identity(15, 15); }
};

// Restricted block free, c_A on a sphere of squared norm 4 r^2 = target.
class SphereParametrization final : public Parametrization {
 public:
  explicit SphereParametrization(double norm_target) : radius_(0.5 * std::sqrt(norm_target)) {}
  int dim() const override { return 5 + kSphereAngles; }
  Vector15 map(const Eigen::VectorXd& x) const override {
    Vector15 c = RestrictedParametrization{}.map(x.head(5));
    double tail = radius_;
    for (int i = 0; i < kSphereAngles; ++i) {
      c(kBlockA[static_cast<std::size_t>(i)] - 1) = tail * std::cos(x(5 + i));
      tail *= std::sin(x(5 + i));
    }
    c(kBlockA[kSphereAngles] - 1) = tail;
    return c;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd j(15, dim());
    const double h = 1e-7;
    for (int i = 0; i < dim(); ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      j.col(i) = (map(xp) - map(xm)) / (2.0 * h);
    }
    return j;
  }

 private:
  double radius_;
};

struct Projection {
  Eigen::VectorXd x;
  bool ok = false;
  double residual = 0.0;
};

// Gauss-Newton with minimum-norm steps onto {C_r = 0, r < k}.
Projection project_onto_moments(const Parametrization& par, const MomentEvaluator& ev, int k, Eigen::VectorXd x) {
  Projection out;
  Eigen::VectorXd g = ev.values(par.map(x)).head(k);
  for (int iter = 0; iter < 60 && g.cwiseAbs().maxCoeff() > kProjectionTolerance; ++iter) {
    const MomentValues mv = ev.with_gradient(par.map(x));
    Eigen::MatrixXd jc(k, 15);
    for (int r = 0; r < k; ++r) jc.row(r) = mv.gradient[static_cast<std::size_t>(r)].transpose();
    const Eigen::MatrixXd j = jc * par.jacobian(x);
    const Eigen::VectorXd step = j.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(g);
    double scale = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 20; ++ls, scale *= 0.5) {
      Eigen::VectorXd trial = x - scale * step;
      Eigen::VectorXd gt = ev.values(par.map(trial)).head(k);
      if (gt.norm() < g.norm()) {
        x = trial;
        g = gt;
        accepted = true;
        break;
      }
    }
    if (!accepted || x.norm() > 1e3) break;
  }
  out.x = x;
  out.residual = g.cwiseAbs().maxCoeff();
  out.ok = out.residual <= 1e-11;
  return out;
}

enum class Inequality { Psd, Purity };

double inequality_violation(const Vector15& c, Inequality kind) {
  if (kind == Inequality::Purity) return std::max(0.0, 0.25 + 4.0 * c.squaredNorm() - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.25 * Eigen::Matrix4cd::Identity() + coherence_operator(c),
                                                     Eigen::EigenvaluesOnly);
  return std::max(0.0, -es.eigenvalues()(0));
}

struct StartResult {
  bool converged = false;
  double F = -std::numeric_limits<double>::infinity();
  Vector15 c = Vector15::Zero();
  double residual = 0.0;
};

bool better(const StartResult& a, const StartResult& b) {
  if (a.converged != b.converged) return a.converged;
  if (a.F != b.F) return a.F > b.F;
  for (int i = 0; i < 15; ++i) {
    if (a.c(i) != b.c(i)) return a.c(i) < b.c(i);
  }
  return false;
}

// One multistart run: simplex search on the augmented Lagrangian of -F in
// the equality moments, with an exact penalty on the inequality. Weights
// grow x10 per stage until the moments vanish to 1e-8, then the point is
// projected onto the moment constraints.
StartResult run_start(const Parametrization& par, const MomentEvaluator& ev, int k, Inequality ineq,
                      const Eigen::VectorXd& x0) {
  StartResult best;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd multiplier = Eigen::VectorXd::Zero(k);
  double mu = 10.0;
  double weight = 10.0;
  for (int stage = 0; stage < 14; ++stage) {
    auto objective = [&](const Eigen::VectorXd& y) {
      const Vector15 c = par.map(y);
      const Eigen::VectorXd g = ev.values(c).head(k);
      return -singlet_of(c) + multiplier.dot(g) + 0.5 * mu * g.squaredNorm() + weight * inequality_violation(c, ineq);
    };
    NelderMeadOptions nm;
    nm.max_evaluations = 6000;
    nm.initial_step = stage == 0 ? 0.05 : 0.005;
    nm.x_tolerance = 1e-10;
    nm.f_tolerance = 1e-15;
    nm.restarts = 1;
    x = nelder_mead(objective, x, nm).x;
    const Vector15 c = par.map(x);
    const Eigen::VectorXd g = ev.values(c).head(k);
    const double violation = inequality_violation(c, ineq);
    if (g.cwiseAbs().maxCoeff() < 1e-8 && violation <= kFeasibility) break;
    multiplier += mu * g;
    mu = std::min(mu * 10.0, 1e10);
    if (violation > kFeasibility) weight *= 10.0;
  }
  const Projection p = project_onto_moments(par, ev, k, x);
  if (!p.ok) return best;
  const Vector15 c = par.map(p.x);
  if (inequality_violation(c, ineq) > kFeasibility) return best;
  best.converged = true;
  best.F = singlet_of(c);
  best.c = c;
  best.residual = p.residual;
  return best;
}

StartResult multistart(const Parametrization& par, const CanonicalDissipator& d, int k, Inequality ineq,
                       const OptimizerOptions& options, int* converged) {
  const auto n = static_cast<std::size_t>(std::max(1, options.starts));
  const MomentEvaluator ev(d);
  std::vector<StartResult> results(n);
  parallel_for(n, options.threads, [&](std::size_t s) {
    auto rng = make_stream(options.seed, s);
    Eigen::VectorXd x0(par.dim());
    for (int i = 0; i < par.dim(); ++i) {
      x0(i) = i < 5 || par.dim() == 15 ? uniform(rng, -0.25, 0.25) : uniform(rng, 0.0, 2.0 * std::numbers::pi);
    }
    results[s] = run_start(par, ev, k, ineq, x0);
  });
  StartResult best;
  *converged = 0;
  for (const auto& r : results) {
    if (r.converged) ++*converged;
    if (better(r, best)) best = r;
  }
  return best;
}

double xx_coherence(const Eigen::Matrix4cd& a) { return -0.25 * trace_with_basis(0, a); }

}  // namespace

TwoQubitCoherence RestrictedState::coherence() const {
  TwoQubitCoherence c;
  c.c = RestrictedParametrization{}.map(values);
  return c;
}

RestrictedState RestrictedState::from_coherence(const TwoQubitCoherence& c) {
  RestrictedState s;
  for (int i = 0; i < 5; ++i) s.values(i) = c.at(labels[static_cast<std::size_t>(i)]);
  return s;
}

KernelConditions restricted_kernel_residuals(const RestrictedState& s, double q2, double q3, double t1) {
  KernelConditions k;
  const double q23 = q2 + q3;
  k.first = q23 * s.c1() - 4.0 * s.c4();
  k.xx_component = q23 * s.c1() - 2.0 * t1 * s.c4();
  const double denom = s.c4() * s.c11() + s.c6() * s.c13();
  if (std::abs(denom) <= 1e-12) {
    k.degenerate = true;
    return k;
  }
  const double dd = q3 * s.c6() / denom;
  k.second = 1.0 + 2.0 * q23 * s.c13() + dd * (s.c6() * s.c6() - s.c11() * s.c11());
  k.third = q2 * s.c11() + dd * (s.c4() * s.c6() + s.c11() * s.c13());
  return k;
}

SolvabilityReport solvability(const TwoQubitCoherence& c, const CanonicalDissipator& d, int kernel_dim) {
  if (kernel_dim < 0 || kernel_dim > 15) throw PreconditionError("kernel dimension must lie in 0..15");
  SolvabilityReport rep;
  const auto& parts = unit_hamiltonian_parts();
  for (int b = 0; b < 15; ++b) rep.G.col(b) = parts[static_cast<std::size_t>(b)] * c.c;
  rep.f = -two_qubit_dissipator_part(d).apply(c.c);

  Eigen::JacobiSVD<Matrix15> svd(rep.G, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int kdim = kernel_dim;
  if (kdim == 0) {
    for (int i = 0; i < 15; ++i) {
      if (sv(0) == 0.0 || sv(i) < 1e-9 * sv(0)) ++kdim;
    }
  }
  for (int i = 15 - kdim; i < 15; ++i) {
    rep.kernel_basis.emplace_back(svd.matrixU().col(i));
    rep.orthogonality_residuals.push_back(svd.matrixU().col(i).dot(rep.f));
  }
  rep.feasible = std::all_of(rep.orthogonality_residuals.begin(), rep.orthogonality_residuals.end(),
                             [](double r) { return std::abs(r) <= kFeasibility; });
  if (rep.feasible) {
    Hamiltonian15 h;
    for (int i = 0; i < 15 - kdim; ++i) h.d += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(rep.f) / sv(i));
    rep.residual = (rep.G * h.d - rep.f).norm();
    rep.hamiltonian = h;
  }
  return rep;
}

MomentValues stationarity_moments_with_gradient(const TwoQubitCoherence& c, const CanonicalDissipator& d) {
  return MomentEvaluator(d).with_gradient(c.c);
}

OptimizationResult optimize_restricted(double q2, const OptimizerOptions& options, double q1) {
  if (!(q2 > 0.0 && q2 < 1.0)) throw PreconditionError("q2 must lie in (0, 1)");
  if (!(q1 >= 0.0)) throw PreconditionError("q1 must be non-negative");
  const CanonicalDissipator d = restricted_dissipator(q1, q2);
  const RestrictedParametrization par;

  OptimizationResult out;
  out.q2 = q2;
  out.diagnostics.starts = options.starts;
  const StartResult best = multistart(par, d, 3, Inequality::Psd, options, &out.diagnostics.converged);
  if (!best.converged) throw DomainError("restricted optimizer: no start converged");

  out.state.c = best.c;
  out.F = best.F;
  out.diagnostics.best_residual = best.residual;
  out.diagnostics.min_eigenvalue = min_eigenvalue(out.state.density());

  const SolvabilityReport rep = solvability(out.state, d);
  out.diagnostics.kernel_dim = static_cast<int>(rep.kernel_basis.size());
  out.diagnostics.kernel_residual = 0.0;
  for (double r : rep.orthogonality_residuals) {
    out.diagnostics.kernel_residual = std::max(out.diagnostics.kernel_residual, std::abs(r));
  }
  if (!rep.feasible) throw DomainError("restricted optimizer: optimum fails the kernel test");
  out.hamiltonian = rep.hamiltonian;
  const SteadyProblem p{d, *rep.hamiltonian};
  out.diagnostics.lindblad_residual = stationarity_residual(lindblad_spec(p), out.state.density());
  return out;
}

OptimizationResult optimize_full(double norm_target, MomentSet constraints, const OptimizerOptions& options) {
  if (!(norm_target >= 0.0)) throw PreconditionError("norm target must be non-negative");
  if (norm_target > 0.75) throw DomainError("norm target exceeds the purity cap");
  const CanonicalDissipator d{{0.0, 1.0, 1.0}, {1.0, 0.0, 0.0}};
  const int k = active_moments(constraints);

  OptimizationResult out;
  out.diagnostics.starts = options.starts;
  StartResult best;
  if (norm_target == 0.0) {
    best = multistart(RestrictedParametrization{}, d, k, Inequality::Purity, options, &out.diagnostics.converged);
  } else {
    best = multistart(SphereParametrization{norm_target}, d, k, Inequality::Purity, options,
                      &out.diagnostics.converged);
  }
  if (!best.converged) throw DomainError("full optimizer: no start converged");
  out.state.c = best.c;
  out.F = best.F;
  out.diagnostics.best_residual = best.residual;
  out.diagnostics.min_eigenvalue = min_eigenvalue(out.state.density());
  return out;
}

OptimizationResult moment_relaxation(const CanonicalDissipator& d, MomentSet constraints,
                                     const OptimizerOptions& options) {
  if (!is_lindblad(d).admissible()) throw DomainError("dissipator is not of Lindblad form");
  OptimizationResult out;
  out.q2 = d.q[1];
  out.diagnostics.starts = options.starts;
  const StartResult best = multistart(FullParametrization{}, d, active_moments(constraints), Inequality::Psd, options,
                                      &out.diagnostics.converged);
  if (!best.converged) throw DomainError("moment relaxation: no start converged");
  out.state.c = best.c;
  out.F = best.F;
  out.diagnostics.best_residual = best.residual;
  out.diagnostics.min_eigenvalue = min_eigenvalue(out.state.density());
  return out;
}

Extrapolation extrapolate_restricted(const OptimizerOptions& options) {
  Extrapolation ex;
  const std::array<double, 3> eps{1e-2, 1e-3, 1e-4};
  for (std::size_t i = 0; i < 3; ++i) {
    ex.q2[i] = 1.0 - eps[i];
    ex.runs[i] = optimize_restricted(ex.q2[i], options);
    ex.F[i] = ex.runs[i].F;
  }
  // Lagrange form at q2 = 1.
  ex.at_one = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) w *= (1.0 - ex.q2[j]) / (ex.q2[i] - ex.q2[j]);
    }
    ex.at_one += w * ex.F[i];
  }
  return ex;
}

std::vector<NormSweepPoint> norm_sweep(const std::vector<double>& norms, const OptimizerOptions& options) {
  std::vector<NormSweepPoint> out;
  for (double n : norms) {
    out.push_back({n, optimize_full(n, MomentSet::C12, options).F, optimize_full(n, MomentSet::C123, options).F});
  }
  return out;
}

Hamiltonian15 FamilyPoint::hamiltonian() const {
  Hamiltonian15 h;
  h.d(index_of_pair(2, 1)) = h_zy;
  h.d(index_of_pair(1, 2)) = h_yz;
  return h;
}

SteadyProblem FamilyPoint::problem() const { return {restricted_dissipator(0.0, q2), hamiltonian()}; }

namespace {

void fill_residuals(FamilyPoint& fp) {
  fp.F_sum = singlet_fraction(fp.state.coherence());
  const SteadyProblem p = fp.problem();
  const Eigen::Matrix4cd drho = apply_lindbladian(lindblad_spec(p), fp.state.coherence().density());
  fp.residual = drho.norm();
  fp.xx_residual = std::abs(xx_coherence(drho));
}

}  // namespace

FamilyPoint explicit_family(double q2) {
  if (!(q2 > 0.0 && q2 < 1.0)) throw PreconditionError("family parameter q2 must lie in (0, 1)");
  FamilyPoint fp;
  fp.q2 = q2;
  const double s = q2 * q2;
  fp.kappa = std::sqrt(1.0 + 4.0 * s + 10.0 * s * s + 4.0 * s * s * s + s * s * s * s);
  const double k = fp.kappa;
  const double c1 = 0.5 * s * (1.0 + 2.0 * s / k) / ((1.0 + s) * (1.0 + s));
  const double c4 = 0.25 * q2 * (1.0 + 2.0 * q2 / k) / (1.0 + s);
  fp.state.values << c1, c4, 0.25 * s * (1.0 + s) / k, 0.25 * (1.0 + s) / k, -c4;
  const double h = (k - 2.0 * s) / (4.0 * (1.0 - s) * (1.0 + s) * (1.0 + s));
  fp.h_zy = h * s;
  fp.h_yz = h;
  fp.F_formula = s / (4.0 * s + s * s + 1.0 - k);
  fill_residuals(fp);
  return fp;
}

FamilyPoint explicit_family_limit(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  FamilyPoint fp;
  fp.epsilon = epsilon;
  fp.q2 = 1.0 - epsilon;
  const double s5 = std::sqrt(5.0);
  const double a = (5.0 + s5) / 40.0;
  fp.state.values << a * (1.0 - 0.5 * epsilon * epsilon), a, (1.0 - epsilon) / (4.0 * s5), (1.0 + epsilon) / (4.0 * s5),
      -a;
  fp.h_zy = fp.h_yz = (s5 - 1.0) / (16.0 * epsilon);
  fill_residuals(fp);
  fp.F_formula = fp.F_sum;
  return fp;
}

std::vector<SmallShiftRow> small_shift_experiment(const Triple& q, const std::vector<double>& t1_values,
                                                  const OptimizerOptions& options) {
  std::vector<SmallShiftRow> rows;
  const auto& parts = unit_hamiltonian_parts();
  for (double t1 : t1_values) {
    const CanonicalDissipator d{q, {t1, 0.0, 0.0}};
    if (!is_lindblad(d).admissible()) throw DomainError("dissipator with t1 = " + std::to_string(t1) + " is not valid");
    const AffineGenerator dis = two_qubit_dissipator_part(d);

    auto solve = [&](const Vector15& h, Vector15& c) {
      Matrix15 a = dis.linear;
      for (int b = 0; b < 15; ++b) a += h(b) * parts[static_cast<std::size_t>(b)];
      Eigen::FullPivLU<Matrix15> lu(a);
      if (!lu.isInvertible()) return false;
      c = lu.solve(-dis.shift);
      return (a * c + dis.shift).norm() <= 1e-9;
    };

    const auto n = static_cast<std::size_t>(std::max(1, options.starts));
    std::vector<std::pair<double, Vector15>> results(n, {-1.0, Vector15::Zero()});
    parallel_for(n, options.threads, [&](std::size_t s) {
      auto rng = make_stream(options.seed, s);
      Eigen::VectorXd h0(15);
      for (int i = 0; i < 15; ++i) h0(i) = standard_normal(rng);
      auto objective = [&](const Eigen::VectorXd& h) {
        Vector15 c;
        if (!solve(h, c)) return 1.0;
        return -singlet_of(c);
      };
      NelderMeadOptions nm;
      nm.max_evaluations = 20000;
      nm.initial_step = 0.25;
      nm.restarts = 3;
      const NelderMeadResult r = nelder_mead(objective, h0, nm);
      results[s] = {-r.value, r.x};
    });

    SmallShiftRow row;
    row.t1 = t1;
    row.F = -std::numeric_limits<double>::infinity();
    for (const auto& [f, h] : results) {
      if (f > row.F) {
        row.F = f;
        row.hamiltonian.d = h;
      }
    }
    Vector15 c = Vector15::Zero();
    if (!solve(row.hamiltonian.d, c)) {
      row.hamiltonian = Hamiltonian15{};
      c = steady_state({d, row.hamiltonian}).c.c;
    }
    row.state.c = c;
    row.F = singlet_fraction(row.state);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lindgeo
