#include "lindgeo/steady_state.hpp"

#include "lindgeo/errors.hpp"
#include "lindgeo/tolerances.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <string>

namespace lindgeo {

namespace {

constexpr char kPauliLabels[] = "xyz1";
constexpr double kKernelThreshold = 1e-9;

const std::array<Eigen::Matrix4cd, 15>& pair_basis() {
  static const std::array<Eigen::Matrix4cd, 15> basis = [] {
    std::array<Eigen::Matrix4cd, 15> b;
    for (int m = 0; m < 15; ++m) b[static_cast<std::size_t>(m)] = basis_operator(Convention::Pauli2q, m);
    return b;
  }();
  return basis;
}

Eigen::Matrix4cd operator_from_coherence(const Vector15& c, double identity_weight) {
  Eigen::Matrix4cd out = identity_weight * Eigen::Matrix4cd::Identity();
  for (int m = 0; m < 15; ++m) out -= c(m) * pair_basis()[static_cast<std::size_t>(m)];
  return out;
}

void require_admissible(const CanonicalDissipator& d) {
  if (!is_lindblad(d).admissible()) throw DomainError("dissipator is not of Lindblad form");
}

int kernel_dimension(const Eigen::JacobiSVD<Matrix15>& svd) {
  const auto& sv = svd.singularValues();
  const double top = sv(0);
  if (top == 0.0) return 15;
  int k = 0;
  for (int i = 0; i < 15; ++i) {
    if (sv(i) < kKernelThreshold * top) ++k;
  }
  return k;
}

}  // namespace

std::string Hamiltonian15::label(int m) {
  const auto [j, k] = pair_of_index(m);
  return {kPauliLabels[j], kPauliLabels[k]};
}

int Hamiltonian15::index_of_label(const std::string& label) {
  for (int m = 0; m < 15; ++m) {
    if (Hamiltonian15::label(m) == label) return m;
  }
  throw PreconditionError("unknown Pauli pair label '" + label + "'");
}

Hamiltonian15 Hamiltonian15::from_labels(const std::map<std::string, double>& coefficients) {
  Hamiltonian15 h;
  for (const auto& [label, value] : coefficients) h.d(index_of_label(label)) = value;
  return h;
}

std::map<std::string, double> Hamiltonian15::to_labels() const {
  std::map<std::string, double> out;
  for (int m = 0; m < 15; ++m) out[label(m)] = d(m);
  return out;
}

Eigen::Matrix4cd Hamiltonian15::matrix() const {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  for (int m = 0; m < 15; ++m) h += d(m) * pair_basis()[static_cast<std::size_t>(m)];
  return h;
}

Eigen::Matrix4cd TwoQubitCoherence::density() const { return operator_from_coherence(c, 0.25); }

TwoQubitCoherence TwoQubitCoherence::from_density(const Eigen::Matrix4cd& rho) {
  TwoQubitCoherence out;
  out.c = to_coherence(rho, Convention::Pauli2q).values;
  return out;
}

AffineGenerator two_qubit_dissipator_part(const CanonicalDissipator& d) {
  const Eigen::MatrixXd m1 = canonical_generator(d).linear;
  AffineGenerator gen{Convention::Pauli2q, Matrix15::Zero(), Vector15::Zero()};
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) gen.linear(index_of_pair(i, k), index_of_pair(j, k)) += m1(i, j);
      // D(1 (x) s_k) = (t.s) (x) s_k couples the qubit-2 polarisation to the shift.
      if (k < 3) gen.linear(index_of_pair(i, k), index_of_pair(3, k)) += d.t[static_cast<std::size_t>(i)];
    }
  }
  for (int i = 0; i < 3; ++i) gen.shift(index_of_pair(i, 3)) = -0.25 * d.t[static_cast<std::size_t>(i)];
  return gen;
}

Matrix15 hamiltonian_part(const Hamiltonian15& h) {
  // i[rho, H] with rho = 1/4 - sum c_n P_n and H = sum d_b Q_b gives
  // c'_R += i (phase(PQ) - phase(QP)) c_n d_b for PQ ~ R.
  Matrix15 n = Matrix15::Zero();
  const cplx i(0.0, 1.0);
  for (int b = 0; b < 15; ++b) {
    if (h.d(b) == 0.0) continue;
    const auto [b1, b2] = pair_of_index(b);
    for (int col = 0; col < 15; ++col) {
      const auto [a1, a2] = pair_of_index(col);
      const PauliProduct pq1 = pauli_product(a1, b1);
      const PauliProduct pq2 = pauli_product(a2, b2);
      const PauliProduct qp1 = pauli_product(b1, a1);
      const PauliProduct qp2 = pauli_product(b2, a2);
      const cplx kappa = pq1.phase * pq2.phase - qp1.phase * qp2.phase;
      if (std::abs(kappa) == 0.0) continue;
      n(index_of_pair(pq1.index, pq2.index), col) += (i * kappa).real() * h.d(b);
    }
  }
  return n;
}

AffineGenerator build_two_qubit_generator(const SteadyProblem& p) {
  require_admissible(p.dissipator);
  AffineGenerator gen = two_qubit_dissipator_part(p.dissipator);
  gen.linear += hamiltonian_part(p.hamiltonian);
  return gen;
}

LindbladSpec lindblad_spec(const SteadyProblem& p) {
  LindbladSpec spec{p.hamiltonian.matrix(), {}};
  for (const auto& l : extract_lindblad_operators(p.dissipator)) {
    spec.jumps.emplace_back(Eigen::kroneckerProduct(l, Eigen::Matrix2cd::Identity()).eval());
  }
  return spec;
}

SteadySolution solve_affine(const Matrix15& linear, const Vector15& shift) {
  const Vector15 rhs = -shift;
  Eigen::JacobiSVD<Matrix15> svd(linear, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int kdim = kernel_dimension(svd);
  const auto& sv = svd.singularValues();

  Vector15 x = Vector15::Zero();
  for (int i = 0; i < 15 - kdim; ++i) {
    x += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(rhs) / sv(i));
  }

  SteadySolution sol;
  sol.c.c = x;
  sol.kernel_dim = kdim;
  sol.unique = kdim == 0;
  sol.residual = (linear * x - rhs).norm();
  if (sol.residual > 1e-9 * std::max(1.0, rhs.norm())) {
    throw DomainError("no steady state on the affine slice: residual " + std::to_string(sol.residual));
  }
  return sol;
}

SteadySolution steady_state(const SteadyProblem& p) {
  const AffineGenerator gen = build_two_qubit_generator(p);
  return solve_affine(gen.linear, gen.shift);
}

OperatorSteadyState operator_space_steady_state(const SteadyProblem& p) {
  require_admissible(p.dissipator);
  const Eigen::MatrixXcd s = liouvillian_matrix(lindblad_spec(p));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  OperatorSteadyState out;
  const double top = sv(0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (top == 0.0 || sv(i) < kKernelThreshold * top) ++out.null_dim;
  }
  if (out.null_dim == 1) {
    const Eigen::VectorXcd v = svd.matrixV().col(15);
    Eigen::Matrix4cd rho = Eigen::Map<const Eigen::Matrix4cd>(v.data());
    rho /= rho.trace();
    out.rho = 0.5 * (rho + rho.adjoint());
  }
  return out;
}

double singlet_fraction(const TwoQubitCoherence& c) { return 0.25 + c.at(1) + c.at(6) + c.at(11); }

double stationarity_moment(const TwoQubitCoherence& c, const CanonicalDissipator& d, int r) {
  if (r < 1 || r > 3) throw PreconditionError("stationarity moment order must be 1, 2 or 3");
  const Vector15 rate = two_qubit_dissipator_part(d).apply(c.c);
  const Eigen::Matrix4cd drho = operator_from_coherence(rate, 0.0);
  const Eigen::Matrix4cd rho = c.density();
  Eigen::Matrix4cd power = rho;
  for (int i = 1; i < r; ++i) power = power * rho;
  return (power * drho).trace().real();
}

std::pair<SteadyProblem, SteadySolution> rescale_shift(const SteadyProblem& p, const SteadySolution& s, double k) {
  SteadyProblem scaled = p;
  for (double& t : scaled.dissipator.t) t *= k;
  if (!is_lindblad(scaled.dissipator).admissible()) {
    throw DomainError("rescaled dissipator violates the Lindblad condition (shift factor " + std::to_string(k) + ")");
  }
  const AffineGenerator gen = build_two_qubit_generator(scaled);
  SteadySolution out;
  out.c.c = k * s.c.c;
  out.residual = gen.apply(out.c.c).norm();
  Eigen::JacobiSVD<Matrix15> svd(Matrix15(gen.linear));
  out.kernel_dim = kernel_dimension(svd);
  out.unique = out.kernel_dim == 0;
  if (out.residual > 1e-10) {
    throw DomainError("rescaled state is not stationary (residual " + std::to_string(out.residual) +
                      "); the qubit-2 polarisation couples to the dissipator shift");
  }
  return {scaled, out};
}

TwoQubitCoherence swap_qubits(const TwoQubitCoherence& c) {
  TwoQubitCoherence out;
  for (int m = 0; m < 15; ++m) {
    const auto [j, k] = pair_of_index(m);
    out.c(index_of_pair(k, j)) = c.c(m);
  }
  return out;
}

Hamiltonian15 swap_qubits(const Hamiltonian15& h) {
  Hamiltonian15 out;
  for (int m = 0; m < 15; ++m) {
    const auto [j, k] = pair_of_index(m);
    out.d(index_of_pair(k, j)) = h.d(m);
  }
  return out;
}

UnitalSingletBound unital_singlet_bound(const CanonicalDissipator& d) {
  const double scale = std::max({1.0, std::abs(d.q[0]), std::abs(d.q[1]), std::abs(d.q[2])});
  for (double t : d.t) {
    if (std::abs(t) > tol::lin * scale) throw PreconditionError("unital bound needs a dissipator with t = 0");
  }
  require_admissible(d);

  const Matrix15 m = two_qubit_dissipator_part(d).linear;
  const Matrix15 sym = m + m.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix15> es(sym);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().maxCoeff() > tol::lin * std::max(1.0, top)) {
    throw DomainError("dissipative part is not contractive");
  }

  UnitalSingletBound out;
  Vector15 singlet = Vector15::Zero();
  singlet(0) = singlet(5) = singlet(10) = 0.25;
  Vector15 projected = Vector15::Zero();
  for (int i = 0; i < 15; ++i) {
    if (top == 0.0 || std::abs(es.eigenvalues()(i)) <= kKernelThreshold * top) {
      const Vector15 u = es.eigenvectors().col(i);
      projected += u * u.dot(singlet);
      ++out.kernel_dim;
    }
  }
  const Eigen::Matrix4cd witness = operator_from_coherence(projected, 0.25);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> wes(witness, Eigen::EigenvaluesOnly);
  out.certificate = wes.eigenvalues()(3);

  const DissipatorClass cls = classify(d);
  SteadyProblem p{d, {}};
  TwoQubitCoherence state;
  if (cls.tag == DissipatorTag::CaseII) {
    int axis = 0;
    for (int i = 1; i < 3; ++i) {
      if (d.q[static_cast<std::size_t>(i)] > d.q[static_cast<std::size_t>(axis)]) axis = i;
    }
    p.hamiltonian.d(index_of_pair(axis, axis)) = 1.0;
    // |+a>|-a>: rho = (1 + s_a)(1 - s_a)/4
    state.c(index_of_pair(axis, 3)) = -0.25;
    state.c(index_of_pair(3, axis)) = 0.25;
    state.c(index_of_pair(axis, axis)) = 0.25;
  }
  out.achieved = singlet_fraction(state);
  out.achieved_residual = stationarity_residual(lindblad_spec(p), state.density());
  return out;
}

}  // namespace lindgeo
