#pragma once

#include <cstddef>
#include <vector>

#include "fvpreg/regularizer.hpp"
#include "fvpreg/spectral.hpp"
#include "fvpreg/trajectory.hpp"

namespace fvpreg {

/// Roots of r^2 + (lambda - c) r + 1 = 0 for the linear source F(t,u) = c u.
struct LinearModeRoots {
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  double c = 0.0;
};

/// beta = -(b + sign(b) sqrt(b^2 - 4)) / 2 with b = lambda - c, alpha = 1/beta.
/// UnsupportedRegimeError when (lambda - c)^2 <= 4.
LinearModeRoots mode_roots(double lambda, double c);

/// u_n(t) = (alpha e^{-alpha(tau-t)} - beta e^{-beta(tau-t)}) / (alpha - beta),
/// the mode-n coefficient of the solution with final data phi_n.
double closed_form_coefficient(const LinearModeRoots& r, double tau, double t);

enum class Provenance { closed_form, self_convergent };

struct ReferenceSolution {
  Trajectory trajectory;
  SpectralField final_data;
  Provenance provenance = Provenance::closed_form;
  /// Estimated sup-norm error of the trajectory (0 for closed forms).
  double error_estimate = 0.0;
};

/// Exact single-mode solution for F(t,u) = c u and g = phi_n, sampled on grid.
ReferenceSolution closed_form_solution(const ModelPtr& model, std::size_t n, double c,
                                       const TimeGrid& grid);

/// The ill-posedness example (c = 1): data h^n = phi_n / |beta_n| and the
/// solution v^n it produces.
struct IllposedPair {
  std::size_t n = 0;
  double tau = 0.0;
  LinearModeRoots roots;
  /// ||h^n|| = 1/|beta_n|.
  double data_norm = 0.0;

  /// ||v^n(t)|| from the closed form.
  double solution_norm(double t) const;
  /// e^{|beta_n|(tau-t)} / |beta_n|.
  double lower_bound(double t) const;
};

IllposedPair illposed_pair(const ModelPtr& model, std::size_t n, double tau);

/// Reference for sources without a closed form: solves the exact-data
/// instance on every ladder config (same N, each n_steps an integer multiple
/// of the previous one) and accepts the finest solve only when successive
/// sup-norm differences shrink by at least 3 per halving of the step.
/// Differences already at the rounding floor are exempt from the ratio test.
/// ContractError for fewer than 3 configs or a malformed ladder,
/// ReferenceRejectedError when convergence is not observed.
ReferenceSolution self_convergent_reference(const FvpInstance& instance,
                                            const std::vector<SolverConfig>& ladder);

}  // namespace fvpreg
