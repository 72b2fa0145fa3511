#pragma once

#include <array>
#include <numbers>
#include <span>
#include <vector>

#include "ulik/gaussian.hpp"

namespace ulik {

/// dB <-> natural-log scale factor: 10^{x/10} = exp(x / kZeta).
inline constexpr double kZeta = 10.0 / std::numbers::ln10;

/// Physicists' Gauss-Hermite rule for the weight exp(-x^2).
struct GaussHermiteRule {
  int order = 0;
  std::vector<double> abscissas;  // ascending
  std::vector<double> weights;
};

/// Nodes and weights for 2 <= m0 <= 64 (Golub-Welsch, Newton-polished).
/// Throws kUnsupportedOrder otherwise.
GaussHermiteRule gh_rule(int m0);

/// Quadrature MGF of 10^{X/10} (mW) for X ~ N(mu, var) dBm:
/// sum_m (w_m / sqrt(pi)) exp(-s exp((sqrt(2 var) a_m + mu) / zeta)).
double lognormal_mgf(double mu, double var, double s, const GaussHermiteRule& rule);

/// Natural log of lognormal_mgf, accurate both near 0 and for tiny MGF values.
double lognormal_log_mgf(double mu, double var, double s, const GaussHermiteRule& rule);

/// Units in which the design points s1, s2 are interpreted.
enum class DesignScale {
  /// s multiplies I / 10^{mu_Q/10}: the interference normalized by the fitted
  /// median. The fit is then exactly translation invariant in dB.
  kRelativeToFit,
  /// s multiplies I in mW.
  kAbsolute,
};

struct FitOptions {
  DesignScale scale = DesignScale::kRelativeToFit;
  int max_iterations = 100;
  double tolerance = 1e-8;         // convergence criterion on both residuals
  double target_residual = 1e-13;  // Newton keeps refining down to this
};

struct LognormalFit {
  double mu_q = 0.0;   // dBm
  double var_q = 0.0;  // dB^2
  std::array<double, 2> residuals{};  // log(MGF_fit) / log(product of MGFs) - 1 at s1, s2
  int iterations = 0;
  bool converged = false;
};

/// Fenton-Wilkinson fit: matches the linear-domain mean and variance of the sum.
GaussianApprox fenton_wilkinson(std::span<const GaussianApprox> components);

/// Fits N(mu_Q, var_Q) in dB so that the quadrature MGF of 10^{Q/10} equals
/// the product of component MGFs at s1 and s2. Damped Newton in
/// (mu_Q, ln sigma_Q) from a Fenton-Wilkinson start, with nested bisection as
/// fallback. Throws kInvalidDesignPoints unless 0 < s2 < s1 and
/// kInvalidArgument for an empty component list. A fit that misses the
/// tolerance is returned with converged = false.
LognormalFit fit_sum(std::span<const GaussianApprox> components, double s1, double s2,
                     const GaussHermiteRule& rule, const FitOptions& options = {});

}  // namespace ulik
