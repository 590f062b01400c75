#include "lindgeo/dissipator.hpp"

#include "lindgeo/errors.hpp"
#include "lindgeo/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lindgeo {

namespace {

double max_abs(const std::array<double, 3>& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

double scale_of(const CanonicalDissipator& d) { return std::max({1.0, max_abs(d.q), max_abs(d.t)}); }

// Eigenpairs of g with eigenvalues in ascending order.
Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> gks_eigen(const CanonicalDissipator& d) {
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd>(gks_matrix(d));
}

int numerical_rank(const Eigen::Vector3d& eigenvalues) {
  const double top = eigenvalues.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < 3; ++i) {
    if (eigenvalues(i) > tol::psd * top) ++rank;
  }
  return rank;
}

}  // namespace

GksMatrix gks_matrix(const CanonicalDissipator& d) {
  const cplx i(0.0, 1.0);
  const auto& [q1, q2, q3] = d.q;
  const auto& [t1, t2, t3] = d.t;
  GksMatrix g;
  g << q1, -i * t3, i * t2,
       i * t3, q2, -i * t1,
       -i * t2, i * t1, q3;
  return g / 8.0;
}

LindbladVerdict is_lindblad(const CanonicalDissipator& d) {
  const auto& q = d.q;
  const auto& t = d.t;
  LindbladVerdict v;
  v.q_min = std::min({q[0], q[1], q[2]});

  const double big_q = q[0] * q[1] * q[2];
  const double big_b = q[0] * t[0] * t[0] + q[1] * t[1] * t[1] + q[2] * t[2] * t[2];
  const double big_a = q[0] * q[1] + q[0] * q[2] + q[1] * q[2];
  const double t_sq = t[0] * t[0] + t[1] * t[1] + t[2] * t[2];
  v.margin = big_q - big_b;

  // A zero denominator forces the matching shift to vanish; the term is dropped.
  const double zero_shift = 1e-15 * scale_of(d);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double denom = q[(i + 1) % 3] * q[(i + 2) % 3];
    const double ti = t[static_cast<std::size_t>(i)];
    if (denom > 0.0) {
      sum += ti * ti / denom;
    } else if (std::abs(ti) > zero_shift) {
      sum = std::numeric_limits<double>::infinity();
    }
  }
  v.ellipsoid = sum;
  v.valid = v.q_min >= 0.0 && sum <= 1.0;
  v.boundary = std::abs(v.margin) <= tol::boundary && big_a - t_sq >= -tol::boundary &&
               v.q_min >= -tol::boundary;
  return v;
}

SpectrumReport gks_spectrum(const CanonicalDissipator& d) {
  const auto& q = d.q;
  const auto& t = d.t;
  SpectrumReport r;
  r.A = q[0] * q[1] + q[0] * q[2] + q[1] * q[2];
  r.B = q[0] * t[0] * t[0] + q[1] * t[1] * t[1] + q[2] * t[2] * t[2];
  r.C = q[0] + q[1] + q[2];
  r.Q = q[0] * q[1] * q[2];
  r.t2 = t[0] * t[0] + t[1] * t[1] + t[2] * t[2];
  r.charpoly = {512.0, -64.0 * r.C, 8.0 * (r.A - r.t2), -(r.Q - r.B)};

  const auto es = gks_eigen(d);
  const Eigen::Vector3d ev = es.eigenvalues();
  for (int i = 0; i < 3; ++i) r.eigenvalues[static_cast<std::size_t>(i)] = ev(i);
  r.rank = numerical_rank(ev);
  return r;
}

std::string to_string(DissipatorTag tag) {
  switch (tag) {
    case DissipatorTag::Invalid: return "invalid";
    case DissipatorTag::Zero: return "zero";
    case DissipatorTag::CaseI: return "case_i";
    case DissipatorTag::CaseII: return "case_ii";
    case DissipatorTag::Generic: return "generic";
  }
  return "unknown";
}

DissipatorClass classify(const CanonicalDissipator& d) {
  const LindbladVerdict verdict = is_lindblad(d);
  DissipatorClass cls;
  cls.boundary = verdict.boundary;
  cls.gks_rank = gks_spectrum(d).rank;

  const double zero = tol::lin * std::max(1.0, max_abs(d.q));
  cls.unital = max_abs(d.t) <= tol::lin * scale_of(d);
  if (!verdict.admissible()) {
    cls.tag = DissipatorTag::Invalid;
    return cls;
  }
  const auto zeros = std::count_if(d.q.begin(), d.q.end(), [&](double x) { return std::abs(x) <= zero; });
  switch (zeros) {
    case 0: cls.tag = DissipatorTag::Generic; break;
    case 1: cls.tag = DissipatorTag::CaseI; break;
    case 2: cls.tag = DissipatorTag::CaseII; break;
    default: cls.tag = cls.unital ? DissipatorTag::Zero : DissipatorTag::Invalid; break;
  }
  return cls;
}

std::vector<Eigen::Matrix2cd> extract_lindblad_operators(const CanonicalDissipator& d) {
  if (!is_lindblad(d).admissible()) {
    throw DomainError("dissipator is not of Lindblad form; no Lindblad operators exist");
  }
  const auto es = gks_eigen(d);
  const Eigen::Vector3d ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();

  std::vector<Eigen::Matrix2cd> ops;
  for (int j = 2; j >= 0; --j) {
    if (top == 0.0 || ev(j) <= tol::psd * top) continue;
    Eigen::Vector3cd u = es.eigenvectors().col(j);
    for (int k = 0; k < 3; ++k) {
      if (std::abs(u(k)) > 1e-12) {
        u *= std::conj(u(k)) / std::abs(u(k));
        break;
      }
    }
    Eigen::Matrix2cd l = Eigen::Matrix2cd::Zero();
    for (int k = 0; k < 3; ++k) l += u(k) * pauli(k);
    ops.push_back(std::sqrt(ev(j)) * l);
  }
  return ops;
}

LindbladSpec lindblad_spec(const CanonicalDissipator& d) {
  LindbladSpec spec{Operator::Zero(2, 2), {}};
  for (const auto& l : extract_lindblad_operators(d)) spec.jumps.emplace_back(l);
  return spec;
}

AffineGenerator canonical_generator(const CanonicalDissipator& d) {
  const auto& [q1, q2, q3] = d.q;
  AffineGenerator gen{Convention::Bloch1q, Eigen::Matrix3d::Zero(), Eigen::Vector3d::Zero()};
  gen.linear(0, 0) = -(q2 + q3) / 2.0;
  gen.linear(1, 1) = -(q1 + q3) / 2.0;
  gen.linear(2, 2) = -(q1 + q2) / 2.0;
  gen.shift << d.t[0], d.t[1], d.t[2];
  return gen;
}

}  // namespace lindgeo
