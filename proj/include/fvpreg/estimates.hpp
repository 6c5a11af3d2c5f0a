#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fvpreg/spectral.hpp"
#include "fvpreg/trajectory.hpp"

namespace fvpreg {

/// c0 e^{(1+c1)(tau-t)}. ContractError unless c0, c1 > 0 and 0 <= t <= tau.
double gronwall_bound(double c0, double c1, double t, double tau);

/// U on a uniform n_steps grid over [0,tau] for the equality case
/// U(t) = c0 + c1 int_t^tau (U(s) + int_s^tau U) ds, integrated backward from
/// tau with classical RK4 on U' = -c1 (U + W), W' = -U.
std::vector<double> gronwall_comparison(double c0, double c1, double tau, std::size_t n_steps);

struct GronwallSweep {
  std::size_t cases = 0;
  std::size_t points_checked = 0;
  std::size_t violations = 0;
  /// min over all points of bound / U.
  double min_ratio = 0.0;
};

/// Random (c0, c1), log-uniform on [0.1, 10]^2 from a seeded mt19937_64;
/// checks gronwall_comparison against gronwall_bound at every grid point.
GronwallSweep gronwall_sweep(std::uint64_t seed, std::size_t cases, double tau,
                             std::size_t n_steps);

/// gevrey_p: u bounded in G_{p,tau}, p > 0 (gp.q must equal tau).
/// gevrey_q: u bounded in G_{0,q+tau}, q > 0 (gp.p must be 0, gp.q = q).
enum class BoundRegime { gevrey_p, gevrey_q };

struct BoundInputs {
  ModelPtr model;
  /// Lipschitz constant of F; the bounds use kappa0 = max(kappa, 1).
  double kappa = 0.0;
  /// Budget with ||u||_{L^inf(0,tau; G)} <= rho.
  double rho = 1.0;
  GevreyParams gp;
  std::size_t N = 1;
  double delta = 0.0;
  double t = 0.0;
  double tau = 1.0;

  double kappa0() const;
  double kappa1() const { return 1.0 + kappa0(); }
  double lambda_N() const;
};

/// Gevrey space whose norm rho must bound for the given regime.
GevreyParams norm_space(BoundRegime regime, const GevreyParams& gp, double tau);

/// e^{kappa1(tau-t)} rho lambda_N^{-p} e^{-lambda_N t}   (gevrey_p)
/// e^{kappa1(tau-t)} rho e^{-(q+t) lambda_N}             (gevrey_q)
/// ContractError when gp does not fit the regime, OverflowError when the
/// value is not representable.
double truncation_bound(const BoundInputs& b, BoundRegime regime);

/// delta e^{lambda_N (tau-t)} e^{kappa1 (tau-t)}.
double noise_bound(const BoundInputs& b);

double total_bound(const BoundInputs& b, BoundRegime regime);

/// 1.01 times the largest Gevrey norm over the trajectory's grid points.
double certify_rho(const Trajectory& reference, const GevreyParams& space);

struct DominanceSample {
  std::size_t N = 0;
  double delta = 0.0;
  double t = 0.0;
  double measured = 0.0;
  double truncation = 0.0;
  double noise = 0.0;
  double total = 0.0;
  /// Quadrature allowance added to the bound.
  double slack = 0.0;

  bool dominated() const { return measured <= total + slack; }
};

struct DominanceReport {
  std::size_t checked = 0;
  std::vector<DominanceSample> violations;
  /// min over samples of ln((total + slack) / measured); +inf if every
  /// measured error is 0.
  double min_log_margin = 0.0;
  double max_log_margin = 0.0;

  bool passed() const { return violations.empty(); }
};

DominanceReport check_dominance(std::span<const DominanceSample> samples);

}  // namespace fvpreg
