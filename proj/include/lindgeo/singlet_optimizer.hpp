#pragma once

// Maximal steady-state singlet fraction for a dissipator on qubit 1 with
// an arbitrary two-qubit Hamiltonian.
//
// A coherence vector c is a steady state for some H iff G(c) d = f(c) is
// solvable, where G(c) d is the Hamiltonian contribution and
// f = -(M_dis c + t). G(c) is antisymmetric and its kernel is the commutant
// of rho, so for nondegenerate rho solvability is equivalent to
// C_1 = C_2 = C_3 = 0.

#include "lindgeo/channel.hpp"
#include "lindgeo/steady_state.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace lindgeo {

/// States with only c_1, c_4, c_6, c_11 and c_13 nonzero.
struct RestrictedState {
  static constexpr std::array<int, 5> labels{1, 4, 6, 11, 13};

  Eigen::Matrix<double, 5, 1> values = Eigen::Matrix<double, 5, 1>::Zero();

  double c1() const { return values(0); }
  double c4() const { return values(1); }
  double c6() const { return values(2); }
  double c11() const { return values(3); }
  double c13() const { return values(4); }

  TwoQubitCoherence coherence() const;
  static RestrictedState from_coherence(const TwoQubitCoherence& c);
  double purity() const { return 0.25 + 4.0 * values.squaredNorm(); }
};

/// The closed-form kernel conditions for restricted states, together with
/// the sigma^x sigma^x component of the stationarity equation, which does
/// not involve H. `second` and `third` are NaN when c4 c11 + c6 c13 = 0.
struct KernelConditions {
  double first = 0.0;         // q23 c1 - 4 c4
  double xx_component = 0.0;  // q23 c1 - 2 t1 c4
  double second = std::numeric_limits<double>::quiet_NaN();
  double third = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
};

KernelConditions restricted_kernel_residuals(const RestrictedState& s, double q2, double q3, double t1 = 1.0);

struct SolvabilityReport {
  Matrix15 G = Matrix15::Zero();
  Vector15 f = Vector15::Zero();
  std::vector<Vector15> kernel_basis;
  std::vector<double> orthogonality_residuals;  // k . f per kernel vector
  bool feasible = false;
  std::optional<Hamiltonian15> hamiltonian;     // minimum-norm d when feasible
  double residual = std::numeric_limits<double>::quiet_NaN();  // |G d - f|
};

/// Assembles G(c) and f(c) and decides feasibility against the numerical
/// kernel (singular values below 1e-9 of the largest, or the `kernel_dim`
/// smallest when it is positive). Feasible iff every |k . f| <= 1e-9.
SolvabilityReport solvability(const TwoQubitCoherence& c, const CanonicalDissipator& d, int kernel_dim = 0);

/// C_1..C_3 with their gradients in c, evaluated together.
struct MomentValues {
  std::array<double, 3> value{};
  std::array<Vector15, 3> gradient{};
};
MomentValues stationarity_moments_with_gradient(const TwoQubitCoherence& c, const CanonicalDissipator& d);

enum class MomentSet { C12, C123 };

struct OptimizerOptions {
  int starts = 64;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: default_threads()
};

struct OptimizerDiagnostics {
  int starts = 0;
  int converged = 0;
  double best_residual = 0.0;       // largest |C_r| over the active constraints
  double kernel_residual = std::numeric_limits<double>::quiet_NaN();
  int kernel_dim = 0;
  double min_eigenvalue = 0.0;      // of the reconstructed rho
  double lindblad_residual = std::numeric_limits<double>::quiet_NaN();
};

struct OptimizationResult {
  double F = 0.0;
  TwoQubitCoherence state;
  double q2 = 1.0;
  std::optional<Hamiltonian15> hamiltonian;
  OptimizerDiagnostics diagnostics;
};

/// Maximises F over restricted states that are steady states of some H for
/// q = (q1, q2, 1/q2), t = (1, 0, 0), subject to rho >= 0. The reported
/// state passes the numerical kernel test and carries its Hamiltonian.
/// Requires 0 < q2 < 1 and q1 >= 0. Throws DomainError when no start
/// converges.
OptimizationResult optimize_restricted(double q2, const OptimizerOptions& options = {}, double q1 = 0.0);

/// Maximises F over all 15 coherences at q = (0, 1, 1), t = (1, 0, 0) with
/// the chosen moments set to zero, purity <= 1 and ||c_A||^2 fixed, where
/// c_A collects c_m for m in {2,3,5,7,8,9,10,12,14,15} and
/// ||c_A||^2 = 4 sum c_m^2.
OptimizationResult optimize_full(double norm_target, MomentSet constraints, const OptimizerOptions& options = {});

/// Maximises F over all 15 coherences of physical states with the chosen
/// moments zero. Every steady state of (d, H) for any H satisfies these
/// conditions, so the result bounds sup_H F from above up to the local
/// search.
OptimizationResult moment_relaxation(const CanonicalDissipator& d, MomentSet constraints,
                                     const OptimizerOptions& options = {});

/// Quadratic through F at q2 = 1 - 1e-2, 1 - 1e-3, 1 - 1e-4, evaluated at q2 = 1.
struct Extrapolation {
  std::array<double, 3> q2{};
  std::array<double, 3> F{};
  double at_one = 0.0;
  std::array<OptimizationResult, 3> runs{};
};
Extrapolation extrapolate_restricted(const OptimizerOptions& options = {});

struct NormSweepPoint {
  double norm2 = 0.0;
  double f_c12 = 0.0;
  double f_c123 = 0.0;
};
std::vector<NormSweepPoint> norm_sweep(const std::vector<double>& norms, const OptimizerOptions& options = {});

struct FamilyPoint {
  double q2 = 1.0;
  double kappa = std::numeric_limits<double>::quiet_NaN();
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  RestrictedState state;
  double h_zy = 0.0;  // sigma^z_1 sigma^y_2
  double h_yz = 0.0;  // sigma^y_1 sigma^z_2
  double F_formula = 0.0;
  double F_sum = 0.0;  // 1/4 + c1 + c6 + c11
  double residual = 0.0;     // full Lindbladian stationarity residual
  double xx_residual = 0.0;  // |sigma^x sigma^x coherence of L(rho)|

  Hamiltonian15 hamiltonian() const;
  SteadyProblem problem() const;
};

/// Closed-form family at finite q2 in (0, 1).
FamilyPoint explicit_family(double q2);
/// Lowest-order form of the family at q2 = 1 - epsilon.
FamilyPoint explicit_family_limit(double epsilon);

struct SmallShiftRow {
  double t1 = 0.0;
  double F = 0.25;
  TwoQubitCoherence state;
  Hamiltonian15 hamiltonian;
};

/// sup_H F for the dissipator (q, (t1, 0, 0)) at each t1, with the steady
/// state from the affine solve. Throws DomainError for invalid (q, t1).
std::vector<SmallShiftRow> small_shift_experiment(const Triple& q, const std::vector<double>& t1_values,
                                                  const OptimizerOptions& options = {});

}  // namespace lindgeo
