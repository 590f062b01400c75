#pragma once

// Small-dimension operator algebra for one and two qubits: Pauli bases,
// density operator <-> coherence vector transforms and Lindblad generators
// expressed as affine maps on coherence space.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace lindgeo {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;

/// Coherence-vector conventions.
///
/// Bloch1q:     rho = (1 + sum_k c_k sigma_k) / 2, c_k = tr(rho sigma_k), 3 entries.
/// Pauli2q: rho = 1/4 - sum_m c_m sigma^j (x) sigma^k with zero-based
///              index m = j + 4k over sigma^{0..3} = {x, y, z, 1}, the pair
///              (1, 1) excluded, 15 entries. One-based labels are m + 1.
enum class Convention { Bloch1q, Pauli2q };

int coherence_dim(Convention conv);
int hilbert_dim(Convention conv);

/// Single-qubit Pauli matrix; index 0..2 = x, y, z and 3 = identity.
const Eigen::Matrix2cd& pauli(int index);

/// Product of two single-qubit Paulis, sigma_a sigma_b = phase * sigma_c.
struct PauliProduct {
  cplx phase;
  int index;
};
PauliProduct pauli_product(int a, int b);

/// Zero-based two-qubit index m = j + 4k <-> Pauli pair (j, k).
struct PauliPair {
  int first;
  int second;
};
PauliPair pair_of_index(int m);
int index_of_pair(int first, int second);

/// Basis operator attached to coherence entry `m` (zero-based).
Operator basis_operator(Convention conv, int m);

struct CoherenceVector {
  Convention convention = Convention::Bloch1q;
  Eigen::VectorXd values;
};

/// Hermitian, unit-trace operator -> coherence vector.
/// Throws PreconditionError on dimension mismatch, non-Hermitian input or
/// trace different from one.
CoherenceVector to_coherence(const Operator& rho, Convention conv);

/// Coherence vector -> operator (always Hermitian with unit trace).
Operator to_operator(const CoherenceVector& c);

struct LindbladSpec {
  Operator hamiltonian;
  std::vector<Operator> jumps;
};

/// Right-hand side  i[rho, H] + sum_j 2 L rho L^+ - rho L^+ L - L^+ L rho.
Operator apply_lindbladian(const LindbladSpec& spec, const Operator& rho);

/// Affine action  c' = linear * c + shift  of a generator on coherence space.
struct AffineGenerator {
  Convention convention = Convention::Bloch1q;
  Eigen::MatrixXd linear;
  Eigen::VectorXd shift;

  Eigen::VectorXd apply(const Eigen::VectorXd& c) const { return linear * c + shift; }
};

/// Generic construction by applying the Lindbladian to every basis operator.
/// Throws PreconditionError for non-Hermitian H, non-traceless jumps or
/// dimension mismatch.
AffineGenerator build_affine_generator(const LindbladSpec& spec, Convention conv);

/// Frobenius norm of the Lindbladian applied to rho.
double stationarity_residual(const LindbladSpec& spec, const Operator& rho);

/// Column-stacking superoperator, vec(L(rho)) = S vec(rho).
Eigen::MatrixXcd liouvillian_matrix(const LindbladSpec& spec);

/// Validation helpers shared by the other modules.
bool is_hermitian(const Operator& a, double tol);
double min_eigenvalue(const Operator& hermitian);

}  // namespace lindgeo
