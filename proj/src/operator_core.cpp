#include "lindgeo/operator_core.hpp"

#include "lindgeo/errors.hpp"
#include "lindgeo/tolerances.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <string>

namespace lindgeo {

namespace {

const std::array<Eigen::Matrix2cd, 4>& pauli_table() {
  static const std::array<Eigen::Matrix2cd, 4> table = [] {
    const cplx i(0.0, 1.0);
    std::array<Eigen::Matrix2cd, 4> p;
    p[0] << 0, 1, 1, 0;
    p[1] << 0, -i, i, 0;
    p[2] << 1, 0, 0, -1;
    p[3] = Eigen::Matrix2cd::Identity();
    return p;
  }();
  return table;
}

double norm_scale(const Operator& a) { return std::max(1.0, a.norm()); }

void require_dim(const Operator& a, int dim, const char* what) {
  if (a.rows() != dim || a.cols() != dim) {
    throw PreconditionError(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                            std::to_string(dim) + " operator, got " + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()));
  }
}

void validate_spec(const LindbladSpec& spec, int dim) {
  require_dim(spec.hamiltonian, dim, "hamiltonian");
  if (!is_hermitian(spec.hamiltonian, tol::herm)) {
    throw PreconditionError("hamiltonian is not Hermitian");
  }
  for (const auto& jump : spec.jumps) {
    require_dim(jump, dim, "jump operator");
    if (std::abs(jump.trace()) > tol::lin * norm_scale(jump)) {
      throw PreconditionError("jump operator is not traceless");
    }
  }
}

int dim_of_spec(const LindbladSpec& spec) { return static_cast<int>(spec.hamiltonian.rows()); }

}  // namespace

int coherence_dim(Convention conv) { return conv == Convention::Bloch1q ? 3 : 15; }

int hilbert_dim(Convention conv) { return conv == Convention::Bloch1q ? 2 : 4; }

const Eigen::Matrix2cd& pauli(int index) { return pauli_table().at(static_cast<std::size_t>(index)); }

PauliProduct pauli_product(int a, int b) {
  if (a == 3) return {1.0, b};
  if (b == 3) return {1.0, a};
  if (a == b) return {1.0, 3};
  const int c = 3 - a - b;
  // Levi-Civita sign of the cyclic order (a, b, c).
  const bool cyclic = (b == (a + 1) % 3);
  return {cplx(0.0, cyclic ? 1.0 : -1.0), c};
}

PauliPair pair_of_index(int m) { return {m % 4, m / 4}; }

int index_of_pair(int first, int second) { return first + 4 * second; }

Operator basis_operator(Convention conv, int m) {
  if (m < 0 || m >= coherence_dim(conv)) {
    throw PreconditionError("basis index out of range: " + std::to_string(m));
  }
  if (conv == Convention::Bloch1q) return pauli(m);
  const auto [j, k] = pair_of_index(m);
  return Eigen::kroneckerProduct(pauli(j), pauli(k)).eval();
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * norm_scale(a);
}

double min_eigenvalue(const Operator& hermitian) {
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

CoherenceVector to_coherence(const Operator& rho, Convention conv) {
  require_dim(rho, hilbert_dim(conv), "density operator");
  if (!is_hermitian(rho, tol::herm)) throw PreconditionError("density operator is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol::lin) throw PreconditionError("density operator trace is not 1");

  const int n = coherence_dim(conv);
  CoherenceVector out{conv, Eigen::VectorXd(n)};
  for (int m = 0; m < n; ++m) {
    const double overlap = (basis_operator(conv, m) * rho).trace().real();
    out.values(m) = conv == Convention::Bloch1q ? overlap : -overlap / 4.0;
  }
  return out;
}

Operator to_operator(const CoherenceVector& c) {
  const int n = coherence_dim(c.convention);
  if (c.values.size() != n) {
    throw PreconditionError("coherence vector has " + std::to_string(c.values.size()) +
                            " entries, expected " + std::to_string(n));
  }
  const int dim = hilbert_dim(c.convention);
  if (c.convention == Convention::Bloch1q) {
    Operator rho = Operator::Identity(dim, dim) / 2.0;
    for (int k = 0; k < n; ++k) rho += 0.5 * c.values(k) * basis_operator(c.convention, k);
    return rho;
  }
  Operator rho = Operator::Identity(dim, dim) / 4.0;
  for (int m = 0; m < n; ++m) rho -= c.values(m) * basis_operator(c.convention, m);
  return rho;
}

Operator apply_lindbladian(const LindbladSpec& spec, const Operator& rho) {
  const cplx i(0.0, 1.0);
  Operator out = i * (rho * spec.hamiltonian - spec.hamiltonian * rho);
  for (const auto& l : spec.jumps) {
    const Operator ldl = l.adjoint() * l;
    out += 2.0 * l * rho * l.adjoint() - rho * ldl - ldl * rho;
  }
  return out;
}

AffineGenerator build_affine_generator(const LindbladSpec& spec, Convention conv) {
  const int dim = hilbert_dim(conv);
  if (dim_of_spec(spec) != dim) throw PreconditionError("spec dimension does not match convention");
  validate_spec(spec, dim);

  const int n = coherence_dim(conv);
  AffineGenerator gen{conv, Eigen::MatrixXd(n, n), Eigen::VectorXd(n)};
  std::vector<Operator> basis;
  basis.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) basis.push_back(basis_operator(conv, m));

  // Bloch1q:     linear_kj = tr(s_k L(s_j)) / 2,  shift_k = tr(s_k L(1)) / 2.
  // Pauli2q: linear_mn = tr(P_m L(P_n)) / 4,  shift_m = -tr(P_m L(1)) / 16.
  const double lin_scale = conv == Convention::Bloch1q ? 0.5 : 0.25;
  const double shift_scale = conv == Convention::Bloch1q ? 0.5 : -1.0 / 16.0;
  for (int col = 0; col < n; ++col) {
    const Operator image = apply_lindbladian(spec, basis[static_cast<std::size_t>(col)]);
    for (int row = 0; row < n; ++row) {
      gen.linear(row, col) = lin_scale * (basis[static_cast<std::size_t>(row)] * image).trace().real();
    }
  }
  const Operator image = apply_lindbladian(spec, Operator::Identity(dim, dim));
  for (int row = 0; row < n; ++row) {
    gen.shift(row) = shift_scale * (basis[static_cast<std::size_t>(row)] * image).trace().real();
  }
  return gen;
}

double stationarity_residual(const LindbladSpec& spec, const Operator& rho) {
  const int dim = dim_of_spec(spec);
  require_dim(rho, dim, "density operator");
  return apply_lindbladian(spec, rho).norm();
}

Eigen::MatrixXcd liouvillian_matrix(const LindbladSpec& spec) {
  const int dim = dim_of_spec(spec);
  validate_spec(spec, dim);
  const cplx i(0.0, 1.0);
  const Operator id = Operator::Identity(dim, dim);
  const Operator& h = spec.hamiltonian;
  // vec(A X B) = (B^T kron A) vec(X).
  Eigen::MatrixXcd s = i * Eigen::kroneckerProduct(h.transpose(), id).eval() -
                       i * Eigen::kroneckerProduct(id, h).eval();
  for (const auto& l : spec.jumps) {
    const Operator ldl = l.adjoint() * l;
    s += 2.0 * Eigen::kroneckerProduct(l.conjugate(), l).eval();
    s -= Eigen::kroneckerProduct(ldl.transpose(), id).eval();
    s -= Eigen::kroneckerProduct(id, ldl).eval();
  }
  return s;
}

}  // namespace lindgeo
