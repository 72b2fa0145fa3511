#include "ulik/lognormal_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <Eigen/Eigenvalues>

#include "ulik/error.hpp"

namespace ulik {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;
// Below this the fit is treated as a point mass (sigma_Q^2 = 0).
constexpr double kVarianceFloor = 1e-12;
constexpr double kMaxMuStep = 20.0;
constexpr double kMaxLogSigmaStep = 1.0;

double log_mgf(double mu, double var, double s, const GaussHermiteRule& rule) {
  const double spread = std::sqrt(2.0 * var);
  double sum_expm1 = 0.0;
  for (int m = 0; m < rule.order; ++m) {
    const double y = -s * std::exp((spread * rule.abscissas[m] + mu) / kZeta);
    sum_expm1 += rule.weights[m] * kInvSqrtPi * std::expm1(y);
  }
  if (sum_expm1 > -0.5) return std::log1p(sum_expm1);

  // Most mass sits where exp(-s x) is tiny; sum in the log domain instead.
  double peak = -kInf;
  for (int m = 0; m < rule.order; ++m) {
    const double y = -s * std::exp((spread * rule.abscissas[m] + mu) / kZeta);
    peak = std::max(peak, std::log(rule.weights[m] * kInvSqrtPi) + y);
  }
  if (peak == -kInf) return -kInf;
  double acc = 0.0;
  for (int m = 0; m < rule.order; ++m) {
    const double y = -s * std::exp((spread * rule.abscissas[m] + mu) / kZeta);
    acc += std::exp(std::log(rule.weights[m] * kInvSqrtPi) + y - peak);
  }
  return peak + std::log(acc);
}

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

using Residuals = std::array<double, 2>;

double norm(const Residuals& r) { return std::max(std::fabs(r[0]), std::fabs(r[1])); }

class FitProblem {
 public:
  FitProblem(std::vector<GaussianApprox> components, double s1, double s2,
             const GaussHermiteRule& rule, DesignScale scale)
      : components_(std::move(components)), s_{s1, s2}, rule_(rule), scale_(scale) {
    if (scale_ == DesignScale::kAbsolute) {
      for (int i = 0; i < 2; ++i) absolute_rhs_[i] = rhs(0.0, i);
    }
  }

  Residuals residuals(double mu, double var) const {
    Residuals r{};
    for (int i = 0; i < 2; ++i) {
      double lhs = 0.0;
      double target = 0.0;
      if (scale_ == DesignScale::kRelativeToFit) {
        lhs = log_mgf(0.0, var, s_[i], rule_);
        target = rhs(mu, i);
      } else {
        lhs = log_mgf(mu, var, s_[i], rule_);
        target = absolute_rhs_[i];
      }
      r[i] = target == 0.0 ? kInf : lhs / target - 1.0;
      if (!std::isfinite(r[i])) r[i] = lhs == target ? 0.0 : kInf;
    }
    return r;
  }

  /// Solves the first equation for mu at fixed variance. The first residual
  /// increases monotonically with mu in both design scales.
  double solve_mu(double var, double guess) const {
    auto f = [&](double mu) { return residuals(mu, var)[0]; };
    double lo = guess;
    double hi = guess;
    double step = 10.0;
    while (f(lo) > 0.0) {
      lo -= step;
      step *= 2.0;
      if (lo < -2000.0) return lo;
    }
    step = 10.0;
    while (f(hi) < 0.0) {
      hi += step;
      step *= 2.0;
      if (hi > 2000.0) return hi;
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return std::fabs(f(lo)) <= std::fabs(f(hi)) ? lo : hi;
  }

 private:
  double rhs(double mu_ref, int i) const {
    double sum = 0.0;
    for (const GaussianApprox& c : components_)
      sum += log_mgf(c.mean - mu_ref, c.variance, s_[i], rule_);
    return sum;
  }

  std::vector<GaussianApprox> components_;
  std::array<double, 2> s_;
  const GaussHermiteRule& rule_;
  DesignScale scale_;
  std::array<double, 2> absolute_rhs_{};
};

struct Candidate {
  double mu = 0.0;
  double var = 0.0;
  Residuals r{kInf, kInf};
};

void keep_best(Candidate& best, const Candidate& c) {
  if (norm(c.r) < norm(best.r)) best = c;
}

Candidate degenerate_fit(const FitProblem& problem, double guess) {
  Candidate c;
  c.var = 0.0;
  c.mu = problem.solve_mu(0.0, guess);
  c.r = problem.residuals(c.mu, 0.0);
  return c;
}

struct NewtonOutcome {
  Candidate best;
  int iterations = 0;
  bool hit_floor = false;
};

NewtonOutcome newton(const FitProblem& problem, double mu0, double var0,
                     const FitOptions& options) {
  NewtonOutcome out;
  double mu = mu0;
  double t = 0.5 * std::log(var0);
  auto eval = [&](double m, double lt) { return problem.residuals(m, std::exp(2.0 * lt)); };
  Residuals f = eval(mu, t);
  out.best = {mu, std::exp(2.0 * t), f};

  for (int it = 0; it < options.max_iterations; ++it) {
    if (norm(f) <= options.target_residual) break;
    ++out.iterations;

    const double h_mu = 1e-6 * std::max(1.0, std::fabs(mu));
    const double h_t = 1e-6;
    const Residuals fmp = eval(mu + h_mu, t);
    const Residuals fmm = eval(mu - h_mu, t);
    const Residuals ftp = eval(mu, t + h_t);
    const Residuals ftm = eval(mu, t - h_t);
    const double j00 = (fmp[0] - fmm[0]) / (2.0 * h_mu);
    const double j10 = (fmp[1] - fmm[1]) / (2.0 * h_mu);
    const double j01 = (ftp[0] - ftm[0]) / (2.0 * h_t);
    const double j11 = (ftp[1] - ftm[1]) / (2.0 * h_t);
    const double det = j00 * j11 - j01 * j10;
    if (!std::isfinite(det) || det == 0.0) break;

    double d_mu = -(j11 * f[0] - j01 * f[1]) / det;
    double d_t = -(-j10 * f[0] + j00 * f[1]) / det;
    const double scale =
        std::max({1.0, std::fabs(d_mu) / kMaxMuStep, std::fabs(d_t) / kMaxLogSigmaStep});
    d_mu /= scale;
    d_t /= scale;

    bool accepted = false;
    for (double lambda = 1.0; lambda >= 1e-8; lambda *= 0.5) {
      const double mu_n = mu + lambda * d_mu;
      const double t_n = t + lambda * d_t;
      const Residuals f_n = eval(mu_n, t_n);
      if (norm(f_n) < (1.0 - 1e-4 * lambda) * norm(f)) {
        mu = mu_n;
        t = t_n;
        f = f_n;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    keep_best(out.best, {mu, std::exp(2.0 * t), f});
    if (std::exp(2.0 * t) < kVarianceFloor) {
      out.hit_floor = true;
      break;
    }
  }
  return out;
}

/// Outer bisection on the variance with mu re-solved from the first equation.
Candidate nested_bisection(const FitProblem& problem, double mu_guess, int& iterations) {
  auto g = [&](double var, double& mu) {
    mu = problem.solve_mu(var, mu);
    return problem.residuals(mu, var);
  };
  Candidate best;
  double mu = mu_guess;
  double prev_var = 0.0;
  double prev_mu = mu;
  Residuals prev = g(0.0, prev_mu);
  keep_best(best, {prev_mu, 0.0, prev});
  for (int k = 0; k <= 100; ++k) {
    const double var = std::pow(10.0, -4.0 + 0.08 * k);  // 1e-4 .. 1e4 dB^2
    mu = prev_mu;
    const Residuals cur = g(var, mu);
    ++iterations;
    keep_best(best, {mu, var, cur});
    if ((cur[1] < 0.0) != (prev[1] < 0.0)) {
      double lo = prev_var;
      double hi = var;
      double lo_r = prev[1];
      for (int it = 0; it < 200; ++it) {
        const double mid = lo == 0.0 ? 0.5 * hi : std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi) break;
        double mu_mid = mu;
        const Residuals r = g(mid, mu_mid);
        ++iterations;
        keep_best(best, {mu_mid, mid, r});
        if ((r[1] < 0.0) == (lo_r < 0.0)) {
          lo = mid;
          lo_r = r[1];
        } else {
          hi = mid;
        }
      }
      return best;
    }
    prev = cur;
    prev_var = var;
    prev_mu = mu;
  }
  return best;
}

}  // namespace

GaussHermiteRule gh_rule(int m0) {
  if (m0 < 2 || m0 > 64)
    throw Error(Errc::kUnsupportedOrder,
                "Gauss-Hermite order must lie in [2, 64], got " + std::to_string(m0));
  const int n = m0;

  // Golub-Welsch: eigenvalues of the Jacobi matrix give the nodes.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  GaussHermiteRule rule;
  rule.order = n;
  rule.abscissas.resize(n);
  rule.weights.resize(n);
  const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  for (int i = 0; i < n; ++i) {
    double z = solver.eigenvalues()[i];
    double pp = 0.0;
    for (int it = 0; it < 10; ++it) {
      // Orthonormal Hermite recurrence.
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt(static_cast<double>(j - 1) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) <= 1e-15 * std::max(1.0, std::fabs(z))) break;
    }
    rule.abscissas[i] = z;
    rule.weights[i] = 2.0 / (pp * pp);
  }
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double a = 0.5 * (rule.abscissas[j] - rule.abscissas[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.abscissas[i] = -a;
    rule.abscissas[j] = a;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.abscissas[n / 2] = 0.0;
  return rule;
}

double lognormal_mgf(double mu, double var, double s, const GaussHermiteRule& rule) {
  return std::exp(log_mgf(mu, var, s, rule));
}

double lognormal_log_mgf(double mu, double var, double s, const GaussHermiteRule& rule) {
  return log_mgf(mu, var, s, rule);
}

GaussianApprox fenton_wilkinson(std::span<const GaussianApprox> components) {
  if (components.empty())
    throw Error(Errc::kInvalidArgument, "Fenton-Wilkinson needs at least one component");
  double log_mean = -kInf;
  double log_var = -kInf;
  for (const GaussianApprox& c : components) {
    const double a = c.mean / kZeta;
    const double b = c.variance / (kZeta * kZeta);
    log_mean = log_add(log_mean, a + 0.5 * b);
    if (b > 0.0) log_var = log_add(log_var, 2.0 * a + b + std::log(std::expm1(b)));
  }
  const double ratio = std::exp(log_var - 2.0 * log_mean);
  const double var_n = std::log1p(ratio);
  return {kZeta * (log_mean - 0.5 * var_n), kZeta * kZeta * var_n};
}

LognormalFit fit_sum(std::span<const GaussianApprox> components, double s1, double s2,
                     const GaussHermiteRule& rule, const FitOptions& options) {
  if (components.empty()) throw Error(Errc::kInvalidArgument, "fit_sum needs a component");
  if (!(s2 > 0.0) || !(s1 > s2) || !std::isfinite(s1))
    throw Error(Errc::kInvalidDesignPoints, "design points must satisfy 0 < s2 < s1");
  for (const GaussianApprox& c : components) {
    if (!std::isfinite(c.mean) || !(c.variance >= 0.0) || !std::isfinite(c.variance))
      throw Error(Errc::kInvalidArgument, "component mean/variance must be finite, variance >= 0");
  }

  std::vector<GaussianApprox> sorted(components.begin(), components.end());
  std::sort(sorted.begin(), sorted.end(), [](const GaussianApprox& a, const GaussianApprox& b) {
    return a.mean != b.mean ? a.mean < b.mean : a.variance < b.variance;
  });
  const FitProblem problem(sorted, s1, s2, rule, options.scale);
  const GaussianApprox start = fenton_wilkinson(sorted);

  LognormalFit fit;
  Candidate best;
  auto finish = [&]() {
    fit.mu_q = best.mu;
    fit.var_q = best.var;
    fit.residuals = best.r;
    fit.converged = norm(best.r) <= options.tolerance;
    return fit;
  };

  if (start.variance <= kVarianceFloor) {
    keep_best(best, degenerate_fit(problem, start.mean));
    if (norm(best.r) <= options.tolerance) return finish();
  }

  const NewtonOutcome n = newton(problem, start.mean, std::max(start.variance, 1e-2), options);
  fit.iterations += n.iterations;
  keep_best(best, n.best);
  if (n.hit_floor) keep_best(best, degenerate_fit(problem, n.best.mu));
  if (norm(best.r) <= options.tolerance) return finish();

  int bisection_iterations = 0;
  keep_best(best, nested_bisection(problem, best.mu, bisection_iterations));
  fit.iterations += bisection_iterations;
  return finish();
}

}  // namespace ulik
