#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ulik/gaussian.hpp"

namespace ulik {

/// Unit of a set of interference values.
enum class ValueDomain { kDbm, kMilliwatt };

const char* domain_name(ValueDomain d) noexcept;

/// Lognormal 10^{Q/10} mW with Q ~ N(mu_q, var_q) dBm.
struct LognormalDist {
  double mu_q = 0.0;
  double var_q = 1.0;  // must be > 0
};

/// Density per mW. Throws kNonpositiveValue for v <= 0, kZeroVariance for var_q <= 0.
double pdf(const LognormalDist& d, double v_mw);
/// Throws kNonpositiveValue for v <= 0, kZeroVariance for var_q <= 0.
double cdf(const LognormalDist& d, double v_mw);

/// P(X <= x) for X ~ N(g.mean, g.variance); a step at the mean when variance is 0.
double gaussian_cdf(const GaussianApprox& g, double x);

/// Sorted sample set tagged with its unit.
class EmpiricalDistribution {
 public:
  /// Throws kInvalidArgument for an empty or non-finite sample set.
  EmpiricalDistribution(std::vector<double> samples, ValueDomain domain);

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  ValueDomain domain() const { return domain_; }

  /// Fraction of samples <= x.
  double cdf(double x) const;
  /// Fraction of samples < x.
  double cdf_below(double x) const;
  /// Type-7 (linear interpolation) sample quantile, p in [0, 1].
  double quantile(double p) const;
  double mean() const;

  EmpiricalDistribution to_milliwatt() const;
  EmpiricalDistribution to_dbm() const;

 private:
  std::vector<double> samples_;
  ValueDomain domain_;
};

/// A CDF to compare against. `below` gives the left limit F(x-) and may be
/// left empty for continuous distributions.
struct CdfFunction {
  ValueDomain domain = ValueDomain::kDbm;
  std::function<double(double)> at;
  std::function<double(double)> below;
};

/// Gaussian CDF on dBm values.
CdfFunction gaussian_cdf_function(const GaussianApprox& g);
/// Lognormal CDF on mW values.
CdfFunction lognormal_cdf_function(const LognormalDist& d);

/// sup_x |F_a(x) - F_b(x)|, evaluated on both sides of every step of F_a.
/// Throws kDomainMismatch when the units differ.
double ks_distance(const EmpiricalDistribution& a, const CdfFunction& b);
/// Two-sample KS statistic.
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// One row of an exported CDF curve.
struct CdfPoint {
  double value_dbm = 0.0;
  std::optional<double> analytic;
  std::optional<double> empirical;
};

/// Evenly spaced dBm grid between the 0.1% and 99.9% empirical quantiles
/// (mean -/+ 3.09 sigma of `analytic` when no samples are given). At least one
/// of the two sources must be present; `empirical` must be in dBm.
std::vector<CdfPoint> cdf_curve(const std::optional<GaussianApprox>& analytic,
                                const EmpiricalDistribution* empirical,
                                std::size_t points = 1000);

}  // namespace ulik
