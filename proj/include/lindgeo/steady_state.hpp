#pragma once

// Two-qubit Lindblad problems with a one-qubit canonical dissipator on
// qubit 1: generator assembly, steady states, singlet fraction, the
// stationarity moments C_r and the shift-scaling construction.

#include "lindgeo/dissipator.hpp"

#include <map>
#include <string>
#include <utility>

namespace lindgeo {

using Vector15 = Eigen::Matrix<double, 15, 1>;
using Matrix15 = Eigen::Matrix<double, 15, 15>;

/// H = sum_m d_m sigma^j (x) sigma^k with the same zero-based index m = j + 4k
/// as the two-qubit coherence vector. Labels are two characters from
/// "xyz1", qubit 1 first ("xx", "yx", ..., "z1").
struct Hamiltonian15 {
  Vector15 d = Vector15::Zero();

  static std::string label(int m);
  static int index_of_label(const std::string& label);
  static Hamiltonian15 from_labels(const std::map<std::string, double>& coefficients);
  std::map<std::string, double> to_labels() const;

  Eigen::Matrix4cd matrix() const;
};

/// Two-qubit coherences in the minus-sign convention,
/// rho = 1/4 - sum_m c_m sigma^j (x) sigma^k. Accessors `at(m)` use the
/// one-based labels m = 1..15.
struct TwoQubitCoherence {
  Vector15 c = Vector15::Zero();

  double at(int one_based) const { return c(one_based - 1); }
  double& at(int one_based) { return c(one_based - 1); }

  Eigen::Matrix4cd density() const;
  static TwoQubitCoherence from_density(const Eigen::Matrix4cd& rho);
  double purity() const { return 0.25 + 4.0 * c.squaredNorm(); }
};

struct SteadyProblem {
  CanonicalDissipator dissipator;  // acts on qubit 1
  Hamiltonian15 hamiltonian;
};

struct SteadySolution {
  TwoQubitCoherence c;
  bool unique = true;
  int kernel_dim = 0;
  double residual = 0.0;  // |(M+N) c + t|
};

/// Dissipator part on qubit 1 expressed in two-qubit coherences: M c + t.
AffineGenerator two_qubit_dissipator_part(const CanonicalDissipator& d);

/// Hamiltonian part N (antisymmetric) from the Pauli product table.
Matrix15 hamiltonian_part(const Hamiltonian15& h);

/// Structured assembly of (M + N, t). Throws DomainError for invalid dissipators.
AffineGenerator build_two_qubit_generator(const SteadyProblem& p);

/// Operator-level description: extracted Lindblad operators on qubit 1 and H.
LindbladSpec lindblad_spec(const SteadyProblem& p);

/// Solves linear * c = -shift with the rules of steady_state.
SteadySolution solve_affine(const Matrix15& linear, const Vector15& shift);

/// Solves (M+N) c = -t. Singular values below 1e-9 of the largest span the
/// kernel; the minimum-norm particular solution is returned with
/// `unique == false`. Throws DomainError when the affine system is inconsistent.
SteadySolution steady_state(const SteadyProblem& p);

/// Independent route through the 16x16 Liouvillian null space.
struct OperatorSteadyState {
  int null_dim = 0;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();  // set when null_dim == 1
};
OperatorSteadyState operator_space_steady_state(const SteadyProblem& p);

/// F = <psi| rho |psi> = 1/4 + c_1 + c_6 + c_11 for the singlet psi.
double singlet_fraction(const TwoQubitCoherence& c);

/// C_r = tr(rho^r D(rho)) with D the canonical dissipator on qubit 1.
double stationarity_moment(const TwoQubitCoherence& c, const CanonicalDissipator& d, int r);

/// Problem with shift k t and state k c. Throws DomainError when (q, k t) is
/// not a valid dissipator, or when k c is not stationary for the rescaled
/// problem to 1e-10.
std::pair<SteadyProblem, SteadySolution> rescale_shift(const SteadyProblem& p, const SteadySolution& s, double k);

/// Exchanges the roles of the two qubits.
TwoQubitCoherence swap_qubits(const TwoQubitCoherence& c);
Hamiltonian15 swap_qubits(const Hamiltonian15& h);

/// Upper bound on the singlet fraction of any steady state of a unital
/// dissipator, over all Hamiltonians. Stationarity forces C_1 = 0, which for
/// t = 0 confines c to the kernel S of the symmetric part of M; the bound is
/// lambda_max of the singlet projector with its components outside S removed.
/// `achieved` is the singlet fraction of an explicit steady state (the
/// maximally mixed state, or for a single Pauli jump L ~ sigma_a the product
/// state |+a>|-a> under H = sigma_a sigma_a).
struct UnitalSingletBound {
  double certificate = 0.0;
  double achieved = 0.25;
  double achieved_residual = 0.0;
  int kernel_dim = 0;
};
UnitalSingletBound unital_singlet_bound(const CanonicalDissipator& d);

}  // namespace lindgeo
