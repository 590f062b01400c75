#pragma once

// Canonical six-parameter one-qubit dissipator: GKS matrix, closed-form
// Lindblad test, spectral report, case classification and extraction of
// Lindblad operators.

#include "lindgeo/operator_core.hpp"

#include <array>
#include <string>
#include <vector>

namespace lindgeo {

/// Diagonal dissipator with contraction rates q and shift t.
///
/// Acting on the Bloch vector it is the affine map
///   c'_1 = -(q2+q3)/2 c_1 + t_1   (and cyclic).
struct CanonicalDissipator {
  std::array<double, 3> q{};
  std::array<double, 3> t{};
};

using GksMatrix = Eigen::Matrix3cd;

/// g = (1/8) [[q1, -i t3, i t2], [i t3, q2, -i t1], [-i t2, i t1, q3]].
GksMatrix gks_matrix(const CanonicalDissipator& d);

struct LindbladVerdict {
  bool valid = false;     // closed-form verdict, no tolerance
  bool boundary = false;  // |Q - B| within tol::boundary and otherwise admissible
  double q_min = 0.0;
  double margin = 0.0;    // Q - B
  double ellipsoid = 0.0; // t1^2/(q2 q3) + t2^2/(q1 q3) + t3^2/(q1 q2), zero terms dropped
                          // (+inf when a zero denominator meets a nonzero shift)

  /// Valid, or inside the boundary band.
  bool admissible() const { return valid || boundary; }
};

/// Closed-form Lindblad test: all q_i >= 0 and ellipsoid <= 1.
LindbladVerdict is_lindblad(const CanonicalDissipator& d);

struct SpectrumReport {
  double A = 0.0, B = 0.0, C = 0.0, Q = 0.0, t2 = 0.0;
  // Coefficients of p(x) = 512 x^3 - 64 C x^2 + 8 (A - t^2) x - (Q - B),
  // highest power first.
  std::array<double, 4> charpoly{};
  std::array<double, 3> eigenvalues{};  // ascending
  int rank = 0;
};

/// Invariants of the GKS matrix together with its numerical spectrum.
SpectrumReport gks_spectrum(const CanonicalDissipator& d);

enum class DissipatorTag { Invalid, Zero, CaseI, CaseII, Generic };

std::string to_string(DissipatorTag tag);

struct DissipatorClass {
  DissipatorTag tag = DissipatorTag::Invalid;
  int gks_rank = 0;
  bool unital = false;
  bool boundary = false;
};

DissipatorClass classify(const CanonicalDissipator& d);

/// L_j = sqrt(lambda_j) sum_k u_kj sigma_k over the nonzero eigenpairs of g,
/// largest eigenvalue first, each eigenvector phased so that its first
/// nonzero component is real positive. Throws DomainError for dissipators
/// that are not admissible.
std::vector<Eigen::Matrix2cd> extract_lindblad_operators(const CanonicalDissipator& d);

/// Same operators packaged as a one-qubit LindbladSpec with H = 0.
LindbladSpec lindblad_spec(const CanonicalDissipator& d);

/// Affine generator read directly off the canonical form (Bloch1q).
AffineGenerator canonical_generator(const CanonicalDissipator& d);

}  // namespace lindgeo
