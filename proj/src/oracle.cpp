#include "fvpreg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fvpreg/errors.hpp"

namespace fvpreg {

LinearModeRoots mode_roots(double lambda, double c) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || !std::isfinite(c))
    throw ContractError("mode_roots needs a positive finite lambda and finite c");
  const double b = lambda - c;
  const double disc = b * b - 4.0;
  if (!(disc > 0.0))
    throw UnsupportedRegimeError("(lambda - c)^2 <= 4: the mode roots are not real and distinct");
  const double beta = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  return {1.0 / beta, beta, lambda, c};
}

double closed_form_coefficient(const LinearModeRoots& r, double tau, double t) {
  const double s = tau - t;
  const double a = r.alpha * std::exp(-r.alpha * s);
  const double b = r.beta * std::exp(-r.beta * s);
  const double u = (a - b) / (r.alpha - r.beta);
  if (!std::isfinite(u)) throw OverflowError("closed-form coefficient leaves the double range");
  return u;
}

ReferenceSolution closed_form_solution(const ModelPtr& model, std::size_t n, double c,
                                       const TimeGrid& grid) {
  if (!model) throw ContractError("closed form needs a model");
  const LinearModeRoots r = mode_roots(model->eigenvalue(n), c);
  Trajectory traj(grid, model);
  for (std::size_t i = 0; i < grid.size(); ++i)
    traj.state(i)[n - 1] = i == grid.n_steps() ? 1.0 : closed_form_coefficient(r, grid.tau(), grid.time(i));
  return {std::move(traj), SpectralField::basis(model, n), Provenance::closed_form, 0.0};
}

double IllposedPair::solution_norm(double t) const {
  return std::abs(closed_form_coefficient(roots, tau, t)) / std::abs(roots.beta);
}

double IllposedPair::lower_bound(double t) const {
  const double b = std::abs(roots.beta);
  return std::exp(b * (tau - t)) / b;
}

IllposedPair illposed_pair(const ModelPtr& model, std::size_t n, double tau) {
  if (!model) throw ContractError("ill-posedness example needs a model");
  if (!(tau > 0.0)) throw ContractError("tau must be positive");
  IllposedPair p;
  p.n = n;
  p.tau = tau;
  p.roots = mode_roots(model->eigenvalue(n), 1.0);
  p.data_norm = 1.0 / std::abs(p.roots.beta);
  return p;
}

namespace {

// sup over the coarse grid of ||fine(t_i) - coarse(t_i)||.
double coarse_distance(const Trajectory& coarse, const Trajectory& fine) {
  const std::size_t stride = fine.grid().n_steps() / coarse.grid().n_steps();
  double d = 0.0;
  for (std::size_t i = 0; i < coarse.grid().size(); ++i) {
    const auto a = coarse.state(i);
    const auto b = fine.state(i * stride);
    double scale = 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) scale = std::max(scale, std::abs(a[j] - b[j]));
    if (scale > 0.0)
      for (std::size_t j = 0; j < a.size(); ++j) {
        const double r = (a[j] - b[j]) / scale;
        sum += r * r;
      }
    d = std::max(d, scale * std::sqrt(sum));
  }
  return d;
}

}  // namespace

ReferenceSolution self_convergent_reference(const FvpInstance& instance,
                                            const std::vector<SolverConfig>& ladder) {
  if (ladder.size() < 3) throw ContractError("a refinement ladder needs at least 3 configs");
  if (!instance.exact_data) throw ContractError("self-convergent reference needs exact data");
  if (instance.delta != 0.0) throw ContractError("self-convergent reference needs delta = 0");
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    if (ladder[k].truncation != ladder[0].truncation)
      throw ContractError("ladder configs must share the truncation level");
    if (ladder[k].n_steps <= ladder[k - 1].n_steps ||
        ladder[k].n_steps % ladder[k - 1].n_steps != 0)
      throw ContractError("ladder resolutions must increase by integer factors");
  }

  const FinalData data(*instance.exact_data);
  std::vector<Trajectory> solves;
  solves.reserve(ladder.size());
  for (const auto& cfg : ladder) {
    try {
      solves.push_back(picard_solve(instance, cfg, data).solution);
    } catch (const NonConvergenceError& e) {
      throw ReferenceRejectedError("ladder rung n_steps = " + std::to_string(cfg.n_steps) +
                                   " did not converge: " + e.what());
    }
  }

  std::vector<double> diffs;
  for (std::size_t k = 1; k < solves.size(); ++k)
    diffs.push_back(coarse_distance(solves[k - 1], solves[k]));

  const double floor = 1e-12 * (1.0 + solves.back().sup_norm());
  double last_ratio = 0.0;
  for (std::size_t k = 1; k < diffs.size(); ++k) {
    if (diffs[k] <= floor) continue;
    const double r = static_cast<double>(ladder[k + 1].n_steps / ladder[k].n_steps);
    const double observed = diffs[k - 1] / diffs[k];
    if (!(observed >= 0.75 * r * r))
      throw ReferenceRejectedError("refinement ladder shrinks by " + std::to_string(observed) +
                                   " at level " + std::to_string(k + 1) + ", expected at least " +
                                   std::to_string(0.75 * r * r));
    last_ratio = observed;
  }

  double estimate = diffs.back();
  if (diffs.back() <= floor)
    estimate = std::max(diffs.back(), floor);
  else if (last_ratio > 1.0)
    estimate = diffs.back() / (last_ratio - 1.0);

  return {std::move(solves.back()), *instance.exact_data, Provenance::self_convergent, estimate};
}

}  // namespace fvpreg
