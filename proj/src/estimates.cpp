#include "fvpreg/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fvpreg/errors.hpp"

namespace fvpreg {
namespace {

void check_time(double t, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ContractError("tau must be positive");
  if (!(t >= 0.0 && t <= tau)) throw ContractError("t must lie in [0, tau]");
}

double exp_checked(double log_value, const char* what) {
  if (log_value > kMaxExpArgument) throw OverflowError(std::string(what) + " exceeds the double range");
  return std::exp(log_value);
}

}  // namespace

double gronwall_bound(double c0, double c1, double t, double tau) {
  if (!(c0 > 0.0) || !(c1 > 0.0)) throw ContractError("Gronwall constants must be positive");
  check_time(t, tau);
  return c0 * std::exp((1.0 + c1) * (tau - t));
}

std::vector<double> gronwall_comparison(double c0, double c1, double tau, std::size_t n_steps) {
  if (!(c0 > 0.0) || !(c1 > 0.0)) throw ContractError("Gronwall constants must be positive");
  if (!(tau > 0.0)) throw ContractError("tau must be positive");
  if (n_steps < 1) throw ContractError("need at least one step");
  // In reversed time sigma = tau - t: U' = c1 (U + W), W' = U.
  const double h = tau / static_cast<double>(n_steps);
  const auto rhs = [c1](double u, double w, double& du, double& dw) {
    du = c1 * (u + w);
    dw = u;
  };
  std::vector<double> U(n_steps + 1);
  double u = c0;
  double w = 0.0;
  U[n_steps] = u;
  for (std::size_t k = n_steps; k-- > 0;) {
    double k1u, k1w, k2u, k2w, k3u, k3w, k4u, k4w;
    rhs(u, w, k1u, k1w);
    rhs(u + 0.5 * h * k1u, w + 0.5 * h * k1w, k2u, k2w);
    rhs(u + 0.5 * h * k2u, w + 0.5 * h * k2w, k3u, k3w);
    rhs(u + h * k3u, w + h * k3w, k4u, k4w);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    U[k] = u;
  }
  return U;
}

GronwallSweep gronwall_sweep(std::uint64_t seed, std::size_t cases, double tau,
                             std::size_t n_steps) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> expo(std::log(0.1), std::log(10.0));
  GronwallSweep r;
  r.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cases; ++k) {
    const double c0 = std::exp(expo(rng));
    const double c1 = std::exp(expo(rng));
    const auto U = gronwall_comparison(c0, c1, tau, n_steps);
    for (std::size_t i = 0; i < U.size(); ++i) {
      const double t = i == n_steps ? tau : tau * static_cast<double>(i) / static_cast<double>(n_steps);
      const double bound = gronwall_bound(c0, c1, t, tau);
      ++r.points_checked;
      if (U[i] > bound) ++r.violations;
      r.min_ratio = std::min(r.min_ratio, bound / U[i]);
    }
    ++r.cases;
  }
  return r;
}

double BoundInputs::kappa0() const {
  if (!(kappa >= 0.0)) throw ContractError("kappa must be non-negative");
  return std::max(kappa, 1.0);
}

double BoundInputs::lambda_N() const {
  if (!model) throw ContractError("bound inputs need a model");
  return model->eigenvalue(N);
}

GevreyParams norm_space(BoundRegime regime, const GevreyParams& gp, double tau) {
  if (regime == BoundRegime::gevrey_p) return {gp.p, tau};
  return {0.0, gp.q + tau};
}

double truncation_bound(const BoundInputs& b, BoundRegime regime) {
  check_time(b.t, b.tau);
  if (!(b.rho > 0.0)) throw ContractError("rho must be positive");
  const double lam = b.lambda_N();
  const double grow = b.kappa1() * (b.tau - b.t) + std::log(b.rho);
  double log_value = 0.0;
  if (regime == BoundRegime::gevrey_p) {
    if (!(b.gp.p > 0.0) || std::abs(b.gp.q - b.tau) > 1e-12 * b.tau)
      throw ContractError("the gevrey_p regime needs p > 0 and q = tau");
    log_value = grow - b.gp.p * std::log(lam) - lam * b.t;
  } else {
    if (b.gp.p != 0.0 || !(b.gp.q > 0.0))
      throw ContractError("the gevrey_q regime needs p = 0 and q > 0");
    log_value = grow - (b.gp.q + b.t) * lam;
  }
  return exp_checked(log_value, "truncation bound");
}

double noise_bound(const BoundInputs& b) {
  check_time(b.t, b.tau);
  if (!(b.delta >= 0.0)) throw ContractError("delta must be non-negative");
  if (b.delta == 0.0) return 0.0;
  const double s = b.tau - b.t;
  return exp_checked(std::log(b.delta) + b.lambda_N() * s + b.kappa1() * s, "noise bound");
}

double total_bound(const BoundInputs& b, BoundRegime regime) {
  const double v = truncation_bound(b, regime) + noise_bound(b);
  if (!std::isfinite(v)) throw OverflowError("total bound exceeds the double range");
  return v;
}

double certify_rho(const Trajectory& reference, const GevreyParams& space) {
  double m = 0.0;
  for (std::size_t i = 0; i < reference.grid().size(); ++i)
    m = std::max(m, gevrey_norm(reference.field(i), space));
  return 1.01 * m;
}

DominanceReport check_dominance(std::span<const DominanceSample> samples) {
  DominanceReport r;
  r.min_log_margin = std::numeric_limits<double>::infinity();
  r.max_log_margin = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    ++r.checked;
    if (!s.dominated()) r.violations.push_back(s);
    const double margin = s.measured > 0.0 ? std::log((s.total + s.slack) / s.measured)
                                           : std::numeric_limits<double>::infinity();
    r.min_log_margin = std::min(r.min_log_margin, margin);
    r.max_log_margin = std::max(r.max_log_margin, margin);
  }
  return r;
}

}  // namespace fvpreg
