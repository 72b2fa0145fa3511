#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "ulik/channel.hpp"
#include "ulik/gaussian.hpp"
#include "ulik/geometry.hpp"
#include "ulik/rng.hpp"

namespace ulik {

/// 10 log10(H) for H ~ exp(1), combined with a Gaussian S, is treated as
/// Gaussian with these offsets.
inline constexpr double kFadingMeanOffsetDb = -2.5;
inline constexpr double kFadingStdDb = 5.57;
/// Below this shadowing variance the surrogate is flagged as inaccurate.
inline constexpr double kSurrogateMinVariance = 36.0;
/// Berry-Esseen constant.
inline constexpr double kBerryEsseenC0 = 0.56;
inline constexpr double kDefaultTauThreshold = 0.01;

struct SurrogateResult {
  GaussianApprox g;
  bool accuracy_warning = false;  // set when the input variance is <= 36 dB^2
};

/// Gaussian G approximating S + 10 log10(H), S ~ N(s.mean, s.variance), H ~ exp(1).
SurrogateResult lognormal_exp_gaussian(const GaussianApprox& s);

/// Moments of the geometry term L(Z) = (eta-1) A + alpha log10(d_own^eta / d_victim)
/// for Z uniform on a region.
struct RegionMoments {
  double mu_l = 0.0;
  double var_l = 0.0;   // E (L - mu)^2
  double abs3_l = 0.0;  // E |L - mu|^3
  std::array<double, 3> std_errors{};  // of mu_l, var_l, abs3_l
  std::size_t sample_count = 0;
};

/// Geometry term for one UE position.
double geometry_term(Point ue, Point victim_bs, Point own_bs, const ChannelParams& params,
                     const PowerControl& pc);

/// Two-pass moments of a sample: mean first, then central moments around it.
RegionMoments moments_of(std::span<const double> values);

/// Monte Carlo moments of L over `region`. Central moments are taken about the
/// estimated mean over the same sample set. Throws kEmptyRegion from sampling
/// and kDegenerateGeometry if a sampled point coincides with either BS.
RegionMoments region_moments(const Region& region, Point victim_bs, Point own_bs,
                             const ChannelParams& params, const PowerControl& pc, std::size_t n,
                             const RngStream& rng, const SamplingOptions& options = {});

struct TauCertificate {
  double tau = 0.0;
  double threshold = kDefaultTauThreshold;
  bool passes = true;
};

/// tau = C0 E|L~|^3 / (var_l + g.variance)^{3/2}. Throws kZeroVariance when
/// the combined variance is zero.
TauCertificate tau(const RegionMoments& moments, const GaussianApprox& g,
                   double threshold = kDefaultTauThreshold);

/// Gaussian approximation of the interferer's dBm interference:
/// (p0 + mu_l + g.mean, var_l + g.variance).
GaussianApprox interferer_gaussian(double p0_dbm, const RegionMoments& moments,
                                   const GaussianApprox& g);

}  // namespace ulik
