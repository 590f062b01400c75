#pragma once

// Diagonal one-qubit channels generated by canonical dissipators, their
// complete-positivity test through the Choi matrix, membership in the
// tetrahedron and in the Lindblad set, maximal shift balls and Monte-Carlo
// volume fractions.

#include "lindgeo/dissipator.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lindgeo {

using Triple = std::array<double, 3>;

/// Bloch map r -> diag(lambda) r + v.
struct DiagonalChannel {
  Triple lambda{1.0, 1.0, 1.0};
  Triple v{};
};

/// exp(tau L) for the canonical generator. lambda_1 = exp(-tau (q2+q3)/2)
/// (cyclic) and v_i = tau t_i (lambda_i - 1) / ln(lambda_i), with the
/// lambda -> 1 limit taken by series.
DiagonalChannel generator_to_channel(const CanonicalDissipator& d, double tau = 1.0);

struct GeneratorRecovery {
  CanonicalDissipator dissipator;
  LindbladVerdict verdict;
};

/// Inverse of generator_to_channel. Throws DomainError when some lambda_i <= 0
/// (no real logarithm).
GeneratorRecovery channel_to_generator(const DiagonalChannel& ch, double tau = 1.0);

/// Choi matrix sum_ab |a><b| (x) Phi(|a><b|), trace 2.
Eigen::Matrix4cd choi_matrix(const DiagonalChannel& ch);

struct CpmVerdict {
  bool cpm = false;
  double min_choi_eigenvalue = 0.0;
};

CpmVerdict cpm_membership(const DiagonalChannel& ch);

struct UnitalMembership {
  bool in_tetrahedron = false;
  bool in_lindblad = false;
};

UnitalMembership set_membership_unital(const Triple& lambda);

/// Four corner inequalities 1 +- lambda_1 +- lambda_2 +- lambda_3 >= 0.
bool in_tetrahedron(const Triple& lambda);

/// Lindblad-reachable channel, including the images under rotations by pi
/// about a coordinate axis (two lambda signs flipped together with v).
bool in_lindblad_set(const DiagonalChannel& ch);

enum class ShiftSet { Lindblad, Cpm };

/// Largest s with (lambda, s u) inside the chosen set. `u` need not be
/// normalised; it is normalised internally. Throws PreconditionError when the
/// anchor lies outside the unital set and DomainError when the bisection
/// bracket [0, 2] fails.
double max_shift(const Triple& anchor, const Triple& u, ShiftSet set);

struct ShiftBallSample {
  Triple anchor{};
  Triple direction{};
  double s_max_lindblad = 0.0;
  double s_max_cpm = 0.0;
};

ShiftBallSample shift_ball_sample(const Triple& anchor, const Triple& direction);

enum class VolumeRegion { LindbladOctantAbs, RatioOctant1, RatioFull };

std::string to_string(VolumeRegion region);
VolumeRegion volume_region_from_string(const std::string& name);

struct VolumeEstimate {
  double fraction = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;       // points drawn
  std::uint64_t denominator = 0;   // points the fraction is taken over
  std::uint64_t seed = 0;
  VolumeRegion region = VolumeRegion::LindbladOctantAbs;
};

/// Uniform sampling of lambda in (0,1)^3 (octant regions) or (-1,1)^3.
/// Samples are split into fixed chunks with independent streams, so the
/// result does not depend on `threads`. Requires samples >= 1e4.
VolumeEstimate estimate_volume_fraction(VolumeRegion region, std::uint64_t samples, std::uint64_t seed,
                                        unsigned threads = 0);

enum class SurfaceKind { Unital, NonUnital };

struct SurfaceConfig {
  SurfaceKind kind = SurfaceKind::Unital;
  int grid = 48;                         // points per axis over [-1, 1]
  Triple v{};                            // channel shift for the non-unital sets
  std::optional<double> slice_lambda3;   // restrict to a lambda_3 cross-section
};

struct SurfacePoint {
  Triple lambda{};
  Triple v{};
  std::string set_tag;  // "lindblad" or "cpm"
};

/// Boundary points of the Lindblad set and of the CPM set on a regular grid:
/// a grid point is emitted when it belongs to a set and one of its axis
/// neighbours does not. Throws PreconditionError when grid < 8.
std::vector<SurfacePoint> sample_set_surfaces(const SurfaceConfig& config);

}  // namespace lindgeo
