#include "ulik/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ulik/error.hpp"
#include "ulik/lognormal_sum.hpp"

namespace ulik {
namespace {

constexpr double kTailQuantileZ = 3.090232306167813;  // Phi^{-1}(0.999)

void check_lognormal(const LognormalDist& d, double v) {
  if (!(d.var_q > 0.0)) throw Error(Errc::kZeroVariance, "lognormal variance must be positive");
  if (!(v > 0.0)) throw Error(Errc::kNonpositiveValue, "lognormal argument must be positive");
}

}  // namespace

const char* domain_name(ValueDomain d) noexcept {
  return d == ValueDomain::kDbm ? "dBm" : "mW";
}

double pdf(const LognormalDist& d, double v_mw) {
  check_lognormal(d, v_mw);
  const double z = kZeta * std::log(v_mw) - d.mu_q;
  return kZeta / (v_mw * std::sqrt(2.0 * std::numbers::pi * d.var_q)) *
         std::exp(-z * z / (2.0 * d.var_q));
}

double cdf(const LognormalDist& d, double v_mw) {
  check_lognormal(d, v_mw);
  return gaussian_cdf({d.mu_q, d.var_q}, kZeta * std::log(v_mw));
}

double gaussian_cdf(const GaussianApprox& g, double x) {
  if (!(g.variance > 0.0)) return x >= g.mean ? 1.0 : 0.0;
  return 0.5 * std::erfc(-(x - g.mean) / std::sqrt(2.0 * g.variance));
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples, ValueDomain domain)
    : samples_(std::move(samples)), domain_(domain) {
  if (samples_.empty()) throw Error(Errc::kInvalidArgument, "empirical distribution is empty");
  for (double v : samples_)
    if (!std::isfinite(v)) throw Error(Errc::kInvalidArgument, "non-finite sample");
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::cdf(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::cdf_below(double x) const {
  const auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::kInvalidArgument, "quantile needs p in [0, 1]");
  const double h = p * static_cast<double>(samples_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, samples_.size() - 1);
  return samples_[lo] + (h - static_cast<double>(lo)) * (samples_[hi] - samples_[lo]);
}

double EmpiricalDistribution::mean() const {
  const double pilot = samples_.front();
  double sum = 0.0;
  for (double v : samples_) sum += v - pilot;
  return pilot + sum / static_cast<double>(samples_.size());
}

EmpiricalDistribution EmpiricalDistribution::to_milliwatt() const {
  if (domain_ == ValueDomain::kMilliwatt) return *this;
  std::vector<double> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(),
                 [](double x) { return std::pow(10.0, x / 10.0); });
  return {std::move(out), ValueDomain::kMilliwatt};
}

EmpiricalDistribution EmpiricalDistribution::to_dbm() const {
  if (domain_ == ValueDomain::kDbm) return *this;
  std::vector<double> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), [](double v) {
    if (!(v > 0.0)) throw Error(Errc::kNonpositiveValue, "cannot convert mW <= 0 to dBm");
    return 10.0 * std::log10(v);
  });
  return {std::move(out), ValueDomain::kDbm};
}

CdfFunction gaussian_cdf_function(const GaussianApprox& g) {
  CdfFunction f;
  f.domain = ValueDomain::kDbm;
  f.at = [g](double x) { return gaussian_cdf(g, x); };
  if (!(g.variance > 0.0)) f.below = [g](double x) { return x > g.mean ? 1.0 : 0.0; };
  return f;
}

CdfFunction lognormal_cdf_function(const LognormalDist& d) {
  CdfFunction f;
  f.domain = ValueDomain::kMilliwatt;
  f.at = [d](double v) { return v > 0.0 ? cdf(d, v) : 0.0; };
  return f;
}

double ks_distance(const EmpiricalDistribution& a, const CdfFunction& b) {
  if (a.domain() != b.domain)
    throw Error(Errc::kDomainMismatch, std::string("cannot compare ") + domain_name(a.domain()) +
                                           " samples with a " + domain_name(b.domain) + " CDF");
  const auto& x = a.samples();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double f_at = b.at(x[i]);
    const double f_below = b.below ? b.below(x[i]) : f_at;
    d = std::max(d, std::fabs(static_cast<double>(j) / n - f_at));
    d = std::max(d, std::fabs(static_cast<double>(i) / n - f_below));
    i = j;
  }
  return d;
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  if (a.domain() != b.domain())
    throw Error(Errc::kDomainMismatch, "cannot compare samples in different units");
  const auto& x = a.samples();
  const auto& y = b.samples();
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() || j < y.size()) {
    double v;
    if (j == y.size() || (i < x.size() && x[i] <= y[j])) {
      v = x[i];
    } else {
      v = y[j];
    }
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

std::vector<CdfPoint> cdf_curve(const std::optional<GaussianApprox>& analytic,
                                const EmpiricalDistribution* empirical, std::size_t points) {
  if (!analytic && empirical == nullptr)
    throw Error(Errc::kInvalidArgument, "CDF curve needs an analytic or empirical source");
  if (empirical != nullptr && empirical->domain() != ValueDomain::kDbm)
    throw Error(Errc::kDomainMismatch, "CDF curves are exported on a dBm grid");
  if (points < 2) throw Error(Errc::kInvalidArgument, "CDF curve needs at least 2 points");

  double lo = 0.0;
  double hi = 0.0;
  if (empirical != nullptr) {
    lo = empirical->quantile(0.001);
    hi = empirical->quantile(0.999);
  } else {
    const double sd = std::sqrt(analytic->variance);
    lo = analytic->mean - kTailQuantileZ * sd;
    hi = analytic->mean + kTailQuantileZ * sd;
  }

  std::vector<CdfPoint> curve(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(points - 1);
    CdfPoint& p = curve[k];
    p.value_dbm = k + 1 == points ? hi : lo + t * (hi - lo);
    if (analytic) p.analytic = gaussian_cdf(*analytic, p.value_dbm);
    if (empirical != nullptr) p.empirical = empirical->cdf(p.value_dbm);
  }
  return curve;
}

}  // namespace ulik
