#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fvpreg/estimates.hpp"
#include "fvpreg/noise.hpp"
#include "fvpreg/param_choice.hpp"
#include "fvpreg/regularizer.hpp"

namespace fvpreg {

struct ModelSpec {
  /// "unit_interval" or "eigenvalues".
  std::string kind = "unit_interval";
  std::size_t modes = 64;
  int dimension = 1;
  std::vector<double> eigenvalues;
  double e1 = 0.0;
  double e2 = 0.0;
};

struct SourceSpec {
  /// "zero", "linear" or "sine".
  std::string kind = "linear";
  double c = 1.0;
};

struct ReferenceSpec {
  /// "closed_form" (zero/linear sources) or "self_convergent".
  std::string kind = "closed_form";
  std::size_t mode = 1;
  double amplitude = 1.0;
  /// Grid resolutions of the self-convergent ladder.
  std::vector<std::size_t> ladder{500, 1000, 2000};
};

struct NoiseLadder {
  /// Strictly decreasing noise levels.
  std::vector<double> deltas;
  NoiseDirection direction = NoiseDirection::worst_case_mode;
  /// Seeded trials per delta (seeds seed, seed+1, ...); forced to 1 for
  /// worst_case_mode.
  std::size_t trials = 3;
  std::uint64_t seed = 0;
};

struct ChoiceSpec {
  ChoiceRegime regime = ChoiceRegime::holder_rule;
  /// p for the log rule, q for the Hoelder rule.
  double index = 0.5;
  /// nullopt: certify from the reference.
  std::optional<double> rho;
  /// When non-empty these levels are used instead of the rule.
  std::vector<std::size_t> fixed_truncations;
};

struct ExperimentConfig {
  double tau = 1.0;
  ModelSpec model;
  SourceSpec source;
  ReferenceSpec reference;
  NoiseLadder noise;
  SolverConfig solver;
  ChoiceSpec choice;
  std::vector<double> times{0.0};
  std::size_t threads = 1;
};

/// Parses the JSON document; unknown keys, wrong types and inconsistent
/// values raise ConfigError.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct ExperimentRow {
  double t = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::size_t N = 0;
  double measured_error = 0.0;
  double truncation_bound = 0.0;
  double noise_bound = 0.0;
  double total_bound = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  double slack = 0.0;
  /// Rule output before flooring (0 for fixed truncations).
  double raw_N = 0.0;
  bool clamped = false;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  /// 95% confidence interval of the slope.
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of ln(error) on ln(delta). ContractError for
/// fewer than 4 points or non-positive values.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

struct RateSummary {
  double t = 0.0;
  /// Fixed truncation level, or 0 when the rule chose N.
  std::size_t fixed_N = 0;
  /// Worst error over trials at each delta, ladder order.
  std::vector<std::pair<double, double>> points;
  std::optional<RateFit> fit;
  /// e1(q+t) / (e1(q+t) + e2(tau-t)) under the Hoelder rule.
  std::optional<double> theory_slope;
  bool non_increasing = false;

  bool insufficient_ladder() const { return points.size() < 4; }
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  std::vector<RateSummary> rates;
  DominanceReport dominance;
  double rho = 0.0;
  BoundRegime regime = BoundRegime::gevrey_q;

  /// t,delta,seed,N,measured_error,truncation_bound,noise_bound,total_bound,iterations,residual
  std::string csv() const;
  std::string summary() const;
};

/// Runs every (t, delta, N, trial) cell. NonConvergenceError names the cell;
/// ConfigError for configurations outside the desk-scale range
/// (lambda_N tau > 700) or with delta >= rho.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace fvpreg
