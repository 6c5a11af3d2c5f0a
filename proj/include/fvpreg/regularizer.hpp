#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fvpreg/final_data.hpp"
#include "fvpreg/source.hpp"
#include "fvpreg/spectral.hpp"
#include "fvpreg/trajectory.hpp"

namespace fvpreg {

struct Acceleration {
  enum class Kind { plain, anderson };
  Kind kind = Kind::plain;
  std::size_t depth = 0;

  static Acceleration plain() { return {}; }
  static Acceleration anderson(std::size_t depth) { return {Kind::anderson, depth}; }
};

struct SolverConfig {
  /// Truncation level N (number of retained eigenmodes).
  std::size_t truncation = 1;
  std::size_t n_steps = 1000;
  /// Relative stopping tolerance on the sup-norm Picard increment.
  double picard_tol = 1e-11;
  std::size_t max_iters = 500;
  Acceleration acceleration{};

  /// Throws ContractError for N outside 1..M, non-positive tolerance, fewer
  /// than 3 grid steps or an Anderson depth of 0.
  void validate(const EigenModel& model) const;
};

/// The final value problem u_t - Laplace u = F(t,u) + int_t^tau u ds,
/// u(tau) = g, over one eigen-model.
struct FvpInstance {
  double tau = 1.0;
  ModelPtr model;
  SourceFunction source = SourceFunction::zero();
  std::optional<SpectralField> exact_data;
  std::optional<FinalData> noisy_data;
  double delta = 0.0;

  TimeGrid grid(const SolverConfig& cfg) const { return {tau, cfg.n_steps}; }
};

/// S_N(t) psi: mode j scaled by e^{lambda_j t} for j <= N, zero beyond.
/// OverflowError naming the first mode whose growth factor is unrepresentable.
SpectralField apply_S_N(double t, const SpectralField& psi, std::size_t N);

/// t -> S_N(tau - t) data on the solver grid.
Trajectory data_term(const FvpInstance& instance, const SolverConfig& cfg, const FinalData& data);

/// One application of the fixed-point map
///   (T v)(t) = S_N(tau-t) data - int_t^tau S_N(s-t) F(s, v(s)) ds
///              - int_t^tau S_N(s-t) int_s^tau v(xi) dxi ds.
Trajectory apply_T(const Trajectory& v, const FvpInstance& instance, const SolverConfig& cfg,
                   const FinalData& data);

struct PicardResult {
  Trajectory solution;
  std::size_t iterations = 0;
  /// ||v - T v|| in the discrete sup norm.
  double residual = 0.0;
  /// Sup-norm increments ||v_{k+1} - v_k||, one per iteration.
  std::vector<double> increments;
  /// First m with (kappa0 e^{lambda_N tau} (1+tau) tau)^m / m! < 1.
  double apriori_contraction_index = 0.0;
};

/// Picard iteration v_{k+1} = T v_k from v_0(t) = S_N(tau-t) data until
/// ||v_{k+1} - v_k|| <= picard_tol (1 + ||v_{k+1}||). NonConvergenceError
/// when max_iters is reached first.
PicardResult picard_solve(const FvpInstance& instance, const SolverConfig& cfg,
                          const FinalData& data);

/// Same, starting from a caller-supplied trajectory.
PicardResult picard_solve(const FvpInstance& instance, const SolverConfig& cfg,
                          const FinalData& data, const Trajectory& initial);

/// ||v - T v|| over the grid.
double residual(const Trajectory& v, const FvpInstance& instance, const SolverConfig& cfg,
                const FinalData& data);

/// Smallest m for which the factorial contraction factor of T^m drops below
/// one. Returns +inf when m exceeds 1e300.
double apriori_contraction_index(double kappa, double lambda_N, double tau);

}  // namespace fvpreg
