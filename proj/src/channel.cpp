#include "lindgeo/channel.hpp"

#include "lindgeo/errors.hpp"
#include "lindgeo/parallel.hpp"
#include "lindgeo/random.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace lindgeo {

namespace {

constexpr double kSeriesThreshold = 1e-6;
constexpr double kCpmTolerance = 1e-10;
constexpr std::size_t kVolumeChunks = 256;

// (e^x - 1) / x, with its Taylor series near x = 0.
double expm1_ratio(double x) {
  if (std::abs(x) < kSeriesThreshold) return 1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0;
  return std::expm1(x) / x;
}

// ln(lambda) / (lambda - 1), the factor relating channel and generator shifts.
double shift_factor(double lambda) {
  const double x = std::log(lambda);
  return 1.0 / expm1_ratio(x);
}

bool unital_lindblad_first_octant(const Triple& l) {
  constexpr double slack = 1e-12;
  if (l[0] <= 0.0 || l[1] <= 0.0 || l[2] <= 0.0) return false;
  for (int j = 0; j < 3; ++j) {
    const double lhs = l[static_cast<std::size_t>(j)];
    const double rhs = l[static_cast<std::size_t>((j + 1) % 3)] * l[static_cast<std::size_t>((j + 2) % 3)];
    if (lhs < rhs * (1.0 - slack)) return false;
  }
  return true;
}

// Maps a channel with exactly two negative multipliers back to the first
// octant by a rotation by pi about the remaining axis. Returns false when the
// sign pattern cannot be reached this way (one or three negatives, or zeros).
bool fold_to_first_octant(Triple& lambda, Triple& v) {
  int negatives = 0;
  for (double x : lambda) {
    if (x == 0.0) return false;
    if (x < 0.0) ++negatives;
  }
  if (negatives == 0) return true;
  if (negatives != 2) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (lambda[i] < 0.0) {
      lambda[i] = -lambda[i];
      v[i] = -v[i];
    }
  }
  return true;
}

Triple normalized(const Triple& u) {
  const double n = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  if (!(n > 0.0)) throw PreconditionError("shift direction must be nonzero");
  return {u[0] / n, u[1] / n, u[2] / n};
}

double max_shift_lindblad(Triple anchor, Triple u) {
  if (!fold_to_first_octant(anchor, u) || !unital_lindblad_first_octant(anchor)) {
    throw PreconditionError("anchor lies outside the unital Lindblad set");
  }
  Triple q{};
  for (std::size_t i = 0; i < 3; ++i) {
    q[i] = std::log(anchor[i]) - std::log(anchor[(i + 1) % 3]) - std::log(anchor[(i + 2) % 3]);
    if (q[i] < 0.0) q[i] = 0.0;  // rounding on the q = 0 faces
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(u[i]) <= 1e-15) continue;
    const double denom = q[(i + 1) % 3] * q[(i + 2) % 3];
    if (denom <= 0.0) return 0.0;
    const double a = shift_factor(anchor[i]);
    sum += u[i] * u[i] * a * a / denom;
  }
  return 1.0 / std::sqrt(sum);
}

double min_choi_along(const Triple& anchor, const Triple& u, double s) {
  return cpm_membership(DiagonalChannel{anchor, {s * u[0], s * u[1], s * u[2]}}).min_choi_eigenvalue;
}

double max_shift_cpm(const Triple& anchor, const Triple& u) {
  if (!in_tetrahedron(anchor) || min_choi_along(anchor, u, 0.0) < -kCpmTolerance) {
    throw PreconditionError("anchor lies outside the unital CPM tetrahedron");
  }
  double lo = 0.0;
  double hi = 2.0;
  if (min_choi_along(anchor, u, hi) >= 0.0) {
    throw DomainError("cpm shift bisection: channel still completely positive at the bracket end");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (min_choi_along(anchor, u, mid) >= -1e-14) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

DiagonalChannel generator_to_channel(const CanonicalDissipator& d, double tau) {
  const AffineGenerator gen = canonical_generator(d);
  DiagonalChannel ch;
  for (int i = 0; i < 3; ++i) {
    const double x = tau * gen.linear(i, i);
    ch.lambda[static_cast<std::size_t>(i)] = std::exp(x);
    ch.v[static_cast<std::size_t>(i)] = tau * d.t[static_cast<std::size_t>(i)] * expm1_ratio(x);
  }
  return ch;
}

GeneratorRecovery channel_to_generator(const DiagonalChannel& ch, double tau) {
  for (double l : ch.lambda) {
    if (!(l > 0.0)) throw DomainError("channel multiplier is not positive; no real logarithm exists");
  }
  GeneratorRecovery out;
  const Triple logs{std::log(ch.lambda[0]), std::log(ch.lambda[1]), std::log(ch.lambda[2])};
  for (std::size_t i = 0; i < 3; ++i) {
    out.dissipator.q[i] = (logs[i] - logs[(i + 1) % 3] - logs[(i + 2) % 3]) / tau;
    out.dissipator.t[i] = ch.v[i] / (tau * expm1_ratio(logs[i]));
  }
  out.verdict = is_lindblad(out.dissipator);
  return out;
}

Eigen::Matrix4cd choi_matrix(const DiagonalChannel& ch) {
  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Eigen::Matrix2cd unit = Eigen::Matrix2cd::Zero();
      unit(a, b) = 1.0;
      // X = (tr X + sum_k tr(X s_k) s_k) / 2 and Phi(1) = 1 + v.s, Phi(s_k) = lambda_k s_k.
      Eigen::Matrix2cd image = unit.trace() * Eigen::Matrix2cd::Identity();
      for (int k = 0; k < 3; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        image += (unit.trace() * ch.v[ks] + ch.lambda[ks] * (unit * pauli(k)).trace()) * pauli(k);
      }
      choi += Eigen::kroneckerProduct(unit, (0.5 * image).eval()).eval();
    }
  }
  return choi;
}

CpmVerdict cpm_membership(const DiagonalChannel& ch) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(choi_matrix(ch), Eigen::EigenvaluesOnly);
  CpmVerdict out;
  out.min_choi_eigenvalue = es.eigenvalues()(0);
  out.cpm = out.min_choi_eigenvalue >= -kCpmTolerance;
  return out;
}

bool in_tetrahedron(const Triple& l) {
  constexpr double slack = 1e-12;
  return 1.0 + l[0] + l[1] + l[2] >= -slack && 1.0 + l[0] - l[1] - l[2] >= -slack &&
         1.0 - l[0] + l[1] - l[2] >= -slack && 1.0 - l[0] - l[1] + l[2] >= -slack;
}

UnitalMembership set_membership_unital(const Triple& lambda) {
  UnitalMembership out;
  out.in_tetrahedron = in_tetrahedron(lambda);
  Triple folded = lambda;
  Triple v{};
  out.in_lindblad = fold_to_first_octant(folded, v) && unital_lindblad_first_octant(folded);
  return out;
}

bool in_lindblad_set(const DiagonalChannel& ch) {
  Triple lambda = ch.lambda;
  Triple v = ch.v;
  if (!fold_to_first_octant(lambda, v)) return false;
  return channel_to_generator(DiagonalChannel{lambda, v}).verdict.admissible();
}

double max_shift(const Triple& anchor, const Triple& u, ShiftSet set) {
  const Triple dir = normalized(u);
  return set == ShiftSet::Lindblad ? max_shift_lindblad(anchor, dir) : max_shift_cpm(anchor, dir);
}

ShiftBallSample shift_ball_sample(const Triple& anchor, const Triple& direction) {
  ShiftBallSample s;
  s.anchor = anchor;
  s.direction = normalized(direction);
  s.s_max_lindblad = max_shift(anchor, s.direction, ShiftSet::Lindblad);
  s.s_max_cpm = max_shift(anchor, s.direction, ShiftSet::Cpm);
  return s;
}

std::string to_string(VolumeRegion region) {
  switch (region) {
    case VolumeRegion::LindbladOctantAbs: return "lindblad-octant-abs";
    case VolumeRegion::RatioOctant1: return "ratio-octant1";
    case VolumeRegion::RatioFull: return "ratio-full";
  }
  return "unknown";
}

VolumeRegion volume_region_from_string(const std::string& name) {
  for (auto r : {VolumeRegion::LindbladOctantAbs, VolumeRegion::RatioOctant1, VolumeRegion::RatioFull}) {
    if (name == to_string(r)) return r;
  }
  throw PreconditionError("unknown volume region '" + name + "'");
}

VolumeEstimate estimate_volume_fraction(VolumeRegion region, std::uint64_t samples, std::uint64_t seed,
                                        unsigned threads) {
  if (samples < 10000) throw PreconditionError("volume estimation needs at least 1e4 samples");

  struct Counts {
    std::uint64_t tetra = 0;
    std::uint64_t lindblad = 0;
  };
  std::vector<Counts> counts(kVolumeChunks);
  const bool full_cube = region == VolumeRegion::RatioFull;

  parallel_for(kVolumeChunks, threads, [&](std::size_t chunk) {
    auto rng = make_stream(seed, chunk);
    const std::uint64_t n = samples / kVolumeChunks + (chunk < samples % kVolumeChunks ? 1 : 0);
    Counts c;
    for (std::uint64_t i = 0; i < n; ++i) {
      Triple l{};
      for (double& x : l) x = full_cube ? uniform(rng, -1.0, 1.0) : uniform01(rng);
      const UnitalMembership m = set_membership_unital(l);
      c.tetra += m.in_tetrahedron ? 1 : 0;
      c.lindblad += m.in_lindblad ? 1 : 0;
    }
    counts[chunk] = c;
  });

  Counts total;
  for (const auto& c : counts) {
    total.tetra += c.tetra;
    total.lindblad += c.lindblad;
  }

  VolumeEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.region = region;
  est.denominator = region == VolumeRegion::LindbladOctantAbs ? samples : total.tetra;
  if (est.denominator > 0) {
    const double p = static_cast<double>(total.lindblad) / static_cast<double>(est.denominator);
    est.fraction = p;
    est.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(est.denominator));
  }
  return est;
}

std::vector<SurfacePoint> sample_set_surfaces(const SurfaceConfig& config) {
  if (config.grid < 8) throw PreconditionError("surface grid needs at least 8 points per axis");
  const int n = config.grid;
  const bool slice = config.slice_lambda3.has_value();
  const int nk = slice ? 1 : n;
  auto coord = [n](int i) { return -1.0 + 2.0 * i / (n - 1); };

  // membership[set][flat index], set 0 = lindblad, 1 = cpm
  std::vector<std::vector<char>> member(2, std::vector<char>(static_cast<std::size_t>(n * n * nk)));
  auto flat = [n](int i, int j, int k) { return static_cast<std::size_t>((k * n + j) * n + i); };
  auto lambda_at = [&](int i, int j, int k) {
    return Triple{coord(i), coord(j), slice ? *config.slice_lambda3 : coord(k)};
  };

  for (int k = 0; k < nk; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const Triple l = lambda_at(i, j, k);
        const std::size_t idx = flat(i, j, k);
        if (config.kind == SurfaceKind::Unital) {
          const UnitalMembership m = set_membership_unital(l);
          member[0][idx] = m.in_lindblad;
          member[1][idx] = m.in_tetrahedron;
        } else {
          const DiagonalChannel ch{l, config.v};
          member[0][idx] = in_lindblad_set(ch);
          member[1][idx] = cpm_membership(ch).cpm;
        }
      }
    }
  }

  static const char* tags[2] = {"lindblad", "cpm"};
  std::vector<SurfacePoint> out;
  for (int k = 0; k < nk; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        for (int set = 0; set < 2; ++set) {
          const auto& m = member[static_cast<std::size_t>(set)];
          if (!m[flat(i, j, k)]) continue;
          bool edge = i == 0 || j == 0 || i == n - 1 || j == n - 1 || (!slice && (k == 0 || k == n - 1));
          if (!edge) {
            edge = !m[flat(i - 1, j, k)] || !m[flat(i + 1, j, k)] || !m[flat(i, j - 1, k)] ||
                   !m[flat(i, j + 1, k)] || (!slice && (!m[flat(i, j, k - 1)] || !m[flat(i, j, k + 1)]));
          }
          if (edge) out.push_back(SurfacePoint{lambda_at(i, j, k), config.v, tags[set]});
        }
      }
    }
  }
  return out;
}

}  // namespace lindgeo
