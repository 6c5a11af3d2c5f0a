#include "fvpreg/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "fvpreg/errors.hpp"
#include "fvpreg/kernel.hpp"

namespace fvpreg {
namespace {

// Precomputed pieces of T for one (instance, config, data) triple, plus the
// scratch buffers one application needs.
class FixedPointMap {
 public:
  FixedPointMap(const FvpInstance& instance, const SolverConfig& cfg, const FinalData& data)
      : instance_(instance),
        grid_(instance.grid(cfg)),
        N_(cfg.truncation),
        leading_(data_term(instance, cfg, data)),
        source_values_(grid_, instance.model),
        series_(grid_.size()),
        integrand_(grid_.size()),
        kernel_(grid_.size()) {}

  const TimeGrid& grid() const { return grid_; }
  const Trajectory& leading() const { return leading_; }

  void apply(const Trajectory& v, Trajectory& out) {
    require_same_model(v.model(), *instance_.model);
    if (!(v.grid() == grid_)) throw ContractError("trajectory is not on the solver grid");
    const bool has_source = instance_.source.kind() != SourceFunction::Kind::zero;
    if (has_source)
      for (std::size_t i = 0; i < grid_.size(); ++i)
        instance_.source.apply(grid_.time(i), v.state(i), source_values_.state(i));

    const std::size_t M = v.mode_count();
    const auto lambda = instance_.model->eigenvalues();
    const auto vin = v.raw();
    const auto fin = source_values_.raw();
    auto dst = out.raw();
    for (std::size_t j = 0; j < N_; ++j) {
      for (std::size_t i = 0; i < grid_.size(); ++i) series_[i] = vin[i * M + j];
      kernel_integrals(0.0, grid_, series_, kernel_);
      for (std::size_t i = 0; i < grid_.size(); ++i)
        integrand_[i] = (has_source ? fin[i * M + j] : 0.0) + kernel_[i];
      kernel_integrals(lambda[j], grid_, integrand_, kernel_);
      const auto lead = leading_.raw();
      for (std::size_t i = 0; i < grid_.size(); ++i) dst[i * M + j] = lead[i * M + j] - kernel_[i];
    }
    for (std::size_t i = 0; i < grid_.size(); ++i)
      for (std::size_t j = N_; j < M; ++j) dst[i * M + j] = 0.0;
  }

 private:
  const FvpInstance& instance_;
  TimeGrid grid_;
  std::size_t N_;
  Trajectory leading_;
  Trajectory source_values_;
  std::vector<double> series_;
  std::vector<double> integrand_;
  std::vector<double> kernel_;
};

void check_solve_inputs(const FvpInstance& instance, const SolverConfig& cfg,
                        const FinalData& data) {
  if (!instance.model) throw ContractError("instance has no eigen-model");
  cfg.validate(*instance.model);
  require_same_model(*instance.model, data.model());
  const double top = instance.model->eigenvalue(cfg.truncation) * instance.tau;
  if (top > kMaxExpArgument)
    throw OverflowError("e^{lambda_N tau} leaves the double range for N = " +
                            std::to_string(cfg.truncation),
                        cfg.truncation);
}

// Flattened view of the first N modes, the only ones T can make non-zero.
Eigen::VectorXd pack(const Trajectory& v, std::size_t N) {
  const std::size_t M = v.mode_count();
  const std::size_t rows = v.grid().size();
  Eigen::VectorXd x(static_cast<Eigen::Index>(rows * N));
  const auto raw = v.raw();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < N; ++j) x[static_cast<Eigen::Index>(i * N + j)] = raw[i * M + j];
  return x;
}

void unpack(const Eigen::VectorXd& x, std::size_t N, Trajectory& v) {
  const std::size_t M = v.mode_count();
  auto raw = v.raw();
  std::fill(raw.begin(), raw.end(), 0.0);
  for (std::size_t i = 0; i < v.grid().size(); ++i)
    for (std::size_t j = 0; j < N; ++j) raw[i * M + j] = x[static_cast<Eigen::Index>(i * N + j)];
}

PicardResult iterate(const FvpInstance& instance, const SolverConfig& cfg, FixedPointMap& map,
                     Trajectory current) {
  PicardResult result{current, 0, 0.0, {}, 0.0};
  result.apriori_contraction_index = apriori_contraction_index(
      instance.source.kappa(), instance.model->eigenvalue(cfg.truncation), instance.tau);

  Trajectory next(map.grid(), instance.model);
  const bool anderson = cfg.acceleration.kind == Acceleration::Kind::anderson;
  std::deque<Eigen::VectorXd> dF;
  std::deque<Eigen::VectorXd> dG;
  Eigen::VectorXd prev_f;
  Eigen::VectorXd prev_g;

  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    try {
      map.apply(current, next);
    } catch (const OverflowError&) {
      // The inputs were checked up front, so this is the iterate blowing up.
      throw NonConvergenceError("Picard iteration diverged at iteration " + std::to_string(k + 1),
                                result.increments, std::numeric_limits<double>::infinity());
    }
    if (anderson) {
      const Eigen::VectorXd g = pack(next, cfg.truncation);
      const Eigen::VectorXd f = g - pack(current, cfg.truncation);
      if (k > 0) {
        dF.push_back(f - prev_f);
        dG.push_back(g - prev_g);
        if (dF.size() > cfg.acceleration.depth) {
          dF.pop_front();
          dG.pop_front();
        }
      }
      prev_f = f;
      prev_g = g;
      if (!dF.empty()) {
        Eigen::MatrixXd F(f.size(), static_cast<Eigen::Index>(dF.size()));
        Eigen::MatrixXd G(g.size(), static_cast<Eigen::Index>(dG.size()));
        for (std::size_t c = 0; c < dF.size(); ++c) {
          F.col(static_cast<Eigen::Index>(c)) = dF[c];
          G.col(static_cast<Eigen::Index>(c)) = dG[c];
        }
        const Eigen::VectorXd gamma = F.colPivHouseholderQr().solve(f);
        if (gamma.allFinite()) unpack(g - G * gamma, cfg.truncation, next);
      }
    }

    const double inc = sup_distance(next, current);
    result.increments.push_back(inc);
    result.iterations = k + 1;
    std::swap(current, next);
    if (!std::isfinite(inc))
      throw NonConvergenceError("Picard iteration diverged at iteration " + std::to_string(k + 1),
                                result.increments, std::numeric_limits<double>::infinity());
    if (inc <= cfg.picard_tol * (1.0 + current.sup_norm())) {
      map.apply(current, next);
      result.residual = sup_distance(current, next);
      result.solution = std::move(current);
      return result;
    }
  }
  map.apply(current, next);
  throw NonConvergenceError("Picard iteration reached max_iters = " + std::to_string(cfg.max_iters),
                            result.increments, sup_distance(current, next));
}

}  // namespace

void SolverConfig::validate(const EigenModel& model) const {
  if (truncation < 1 || truncation > model.mode_count())
    throw ContractError("truncation level N = " + std::to_string(truncation) + " outside 1.." +
                        std::to_string(model.mode_count()));
  if (!(picard_tol > 0.0)) throw ContractError("picard_tol must be positive");
  if (max_iters < 1) throw ContractError("max_iters must be positive");
  if (n_steps < 3) throw ContractError("the time grid needs at least 3 steps");
  if (acceleration.kind == Acceleration::Kind::anderson && acceleration.depth == 0)
    throw ContractError("Anderson acceleration needs depth >= 1");
}

SpectralField apply_S_N(double t, const SpectralField& psi, std::size_t N) {
  const auto& model = psi.model();
  if (N < 1 || N > model.mode_count())
    throw ContractError("truncation level N = " + std::to_string(N) + " outside 1.." +
                        std::to_string(model.mode_count()));
  if (!(t >= 0.0) || !std::isfinite(t)) throw ContractError("S_N needs a finite t >= 0");
  SpectralField out(psi.model_ptr());
  const auto lambda = model.eigenvalues();
  const auto c = psi.coeffs();
  auto o = out.coeffs();
  for (std::size_t j = 0; j < N; ++j) {
    const double x = lambda[j] * t;
    if (x > kMaxExpArgument)
      throw OverflowError("e^{lambda_j t} overflows for mode " + std::to_string(j + 1), j + 1);
    o[j] = std::exp(x) * c[j];
  }
  return out;
}

Trajectory data_term(const FvpInstance& instance, const SolverConfig& cfg, const FinalData& data) {
  check_solve_inputs(instance, cfg, data);
  const TimeGrid grid = instance.grid(cfg);
  Trajectory out(grid, instance.model);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double back = grid.tau() - grid.time(i);
    SpectralField s = apply_S_N(back, data.base(), cfg.truncation);
    if (data.perturbation()) s += apply_S_N(back, *data.perturbation(), cfg.truncation);
    out.set_state(i, s);
  }
  return out;
}

Trajectory apply_T(const Trajectory& v, const FvpInstance& instance, const SolverConfig& cfg,
                   const FinalData& data) {
  FixedPointMap map(instance, cfg, data);
  Trajectory out(map.grid(), instance.model);
  map.apply(v, out);
  return out;
}

PicardResult picard_solve(const FvpInstance& instance, const SolverConfig& cfg,
                          const FinalData& data) {
  FixedPointMap map(instance, cfg, data);
  return iterate(instance, cfg, map, map.leading());
}

PicardResult picard_solve(const FvpInstance& instance, const SolverConfig& cfg,
                          const FinalData& data, const Trajectory& initial) {
  FixedPointMap map(instance, cfg, data);
  require_same_model(initial.model(), *instance.model);
  if (!(initial.grid() == map.grid()))
    throw ContractError("initial trajectory is not on the solver grid");
  return iterate(instance, cfg, map, initial);
}

double residual(const Trajectory& v, const FvpInstance& instance, const SolverConfig& cfg,
                const FinalData& data) {
  return sup_distance(v, apply_T(v, instance, cfg, data));
}

double apriori_contraction_index(double kappa, double lambda_N, double tau) {
  const double log_a =
      std::log(std::max(kappa, 1.0)) + lambda_N * tau + std::log1p(tau) + std::log(tau);
  // m log a - log m! is concave in m, so the first negative value is found by
  // doubling past it and bisecting back.
  const auto f = [log_a](double m) { return m * log_a - std::lgamma(m + 1.0); };
  if (f(1.0) < 0.0) return 1.0;
  double hi = 2.0;
  while (f(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  double lo = hi / 2.0;  // f(lo) >= 0
  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace fvpreg
