#include "ulik/gaussian_approx.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ulik/error.hpp"
#include "ulik/parallel.hpp"

namespace ulik {

SurrogateResult lognormal_exp_gaussian(const GaussianApprox& s) {
  SurrogateResult out;
  out.g.mean = s.mean + kFadingMeanOffsetDb;
  out.g.variance = s.variance + kFadingStdDb * kFadingStdDb;
  out.accuracy_warning = s.variance <= kSurrogateMinVariance;
  return out;
}

double geometry_term(Point ue, Point victim_bs, Point own_bs, const ChannelParams& params,
                     const PowerControl& pc) {
  const double d_own = distance(ue, own_bs);
  const double d_victim = distance(ue, victim_bs);
  if (!(d_own > 0.0) || !(d_victim > 0.0))
    throw Error(Errc::kDegenerateGeometry, "UE position coincides with a base station");
  return (pc.eta - 1.0) * params.a_db +
         params.alpha * (pc.eta * std::log10(d_own) - std::log10(d_victim));
}

RegionMoments moments_of(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::kInvalidArgument, "moments need at least one value");
  const double n = static_cast<double>(values.size());

  const double pilot = values.front();
  double shifted = 0.0;
  for (double v : values) shifted += v - pilot;
  const double mu = pilot + shifted / n;

  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : values) {
    const double d = std::fabs(v - mu);
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;

  double v2 = 0.0;
  double v3 = 0.0;
  for (double v : values) {
    const double d = std::fabs(v - mu);
    v2 += (d * d - m2) * (d * d - m2);
    v3 += (d * d * d - m3) * (d * d * d - m3);
  }

  RegionMoments out;
  out.mu_l = mu;
  out.var_l = m2;
  out.abs3_l = m3;
  out.sample_count = values.size();
  if (values.size() > 1) {
    out.std_errors = {std::sqrt(m2 / (n - 1.0)), std::sqrt(v2 / (n - 1.0) / n),
                      std::sqrt(v3 / (n - 1.0) / n)};
  }
  return out;
}

RegionMoments region_moments(const Region& region, Point victim_bs, Point own_bs,
                             const ChannelParams& params, const PowerControl& pc, std::size_t n,
                             const RngStream& rng, const SamplingOptions& options) {
  if (n == 0) throw Error(Errc::kInvalidArgument, "region_moments needs at least one sample");
  const std::vector<Point> points = sample_uniform_parallel(region, rng, n, options);
  std::vector<double> values(n);
  const std::size_t streams = std::max<std::size_t>(options.streams, 1);
  parallel_for(streams, options.threads, [&](std::size_t k) {
    for (std::size_t i = k * n / streams, end = (k + 1) * n / streams; i < end; ++i)
      values[i] = geometry_term(points[i], victim_bs, own_bs, params, pc);
  });
  return moments_of(values);
}

TauCertificate tau(const RegionMoments& moments, const GaussianApprox& g, double threshold) {
  const double total = moments.var_l + g.variance;
  if (!(total > 0.0)) throw Error(Errc::kZeroVariance, "var_l + var_g must be positive");
  TauCertificate out;
  out.tau = kBerryEsseenC0 * moments.abs3_l / (total * std::sqrt(total));
  out.threshold = threshold;
  out.passes = out.tau <= threshold;
  return out;
}

GaussianApprox interferer_gaussian(double p0_dbm, const RegionMoments& moments,
                                   const GaussianApprox& g) {
  return {p0_dbm + moments.mu_l + g.mean, moments.var_l + g.variance};
}

}  // namespace ulik
