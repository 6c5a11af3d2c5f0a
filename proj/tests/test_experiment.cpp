#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "fvpreg/errors.hpp"
#include "fvpreg/experiment.hpp"

using namespace fvpreg;

namespace {

const char* kSmall = R"({
  "tau": 1.0,
  "model": {"kind": "unit_interval", "modes": 8},
  "source": {"kind": "linear", "c": 1.0},
  "reference": {"kind": "closed_form", "mode": 2},
  "noise": {"deltas": [1e-4, 1e-6, 1e-8]},
  "solver": {"n_steps": 200},
  "choice": {"regime": "holder", "q": 0.5, "rho": "auto", "fixed_truncations": [1, 2, 3]},
  "times": [0.0, 0.5]
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST(Config, ParsesDefaultsAndValues) {
  const auto c = parse_experiment_config(kSmall);
  EXPECT_EQ(c.model.modes, 8u);
  EXPECT_EQ(c.reference.mode, 2u);
  EXPECT_EQ(c.noise.deltas.size(), 3u);
  EXPECT_EQ(c.solver.n_steps, 200u);
  EXPECT_FALSE(c.choice.rho.has_value());
  EXPECT_EQ(c.choice.fixed_truncations.size(), 3u);
  EXPECT_EQ(c.threads, 1u);
}

TEST(Config, RejectsUnknownKeys) {
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "\"tau\"", "\"taux\"")), ConfigError);
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "\"c\": 1.0", "\"c\": 1.0, \"kappa\": 2")),
               ConfigError);
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "\"q\": 0.5", "\"p\": 0.5")), ConfigError);
}

TEST(Config, RejectsInconsistentValues) {
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "1e-6, 1e-8", "1e-8, 1e-6")), ConfigError);
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "1e-6, 1e-8", "1e-6, 1e-6")), ConfigError);
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "[0.0, 0.5]", "[0.0, 0.503]")), ConfigError);
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "[0.0, 0.5]", "[0.0, 1.5]")), ConfigError);
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "200", "201")), ConfigError);
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "\"auto\"", "\"maybe\"")), ConfigError);
  EXPECT_THROW(parse_experiment_config(replace(kSmall, "\"closed_form\"", "\"guess\"")), ConfigError);
  EXPECT_THROW(parse_experiment_config("{\"tau\": 1.0"), ConfigError);
  EXPECT_THROW(parse_experiment_config("{\"tau\": 1.0}"), ConfigError);
}

TEST(RateFit, RecoversKnownSlopes) {
  for (double slope : {1.0, 0.5}) {
    std::vector<std::pair<double, double>> pts;
    for (int k = 2; k <= 12; k += 2) {
      const double d = std::pow(10.0, -k);
      pts.emplace_back(d, 3.0 * std::pow(d, slope));
    }
    const auto f = fit_rate(pts);
    EXPECT_NEAR(f.slope, slope, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(3.0), 1e-10);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    EXPECT_LE(f.ci_low, f.slope);
    EXPECT_GE(f.ci_high, f.slope);
    EXPECT_EQ(f.points, 6u);
  }
}

TEST(RateFit, ConfidenceIntervalCoversNoisySlope) {
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < 8; ++k) {
    const double d = std::pow(10.0, -4.0 - k);
    pts.emplace_back(d, std::pow(d, 0.4) * (k % 2 ? 1.3 : 0.8));
  }
  const auto f = fit_rate(pts);
  EXPECT_LT(f.ci_low, 0.4);
  EXPECT_GT(f.ci_high, 0.4);
  EXPECT_LT(f.r2, 1.0);
}

TEST(RateFit, Preconditions) {
  std::vector<std::pair<double, double>> three{{1e-2, 1.0}, {1e-3, 0.5}, {1e-4, 0.2}};
  EXPECT_THROW(fit_rate(three), ContractError);
  std::vector<std::pair<double, double>> bad{{1e-2, 1.0}, {1e-3, 0.0}, {1e-4, 0.2}, {1e-5, 0.1}};
  EXPECT_THROW(fit_rate(bad), ContractError);
}

TEST(Experiment, RowsAndDominance) {
  const auto rep = run_experiment(parse_experiment_config(kSmall));
  EXPECT_EQ(rep.rows.size(), 2u * 3u * 3u);
  EXPECT_TRUE(rep.dominance.passed());
  EXPECT_EQ(rep.dominance.checked, rep.rows.size());
  EXPECT_GT(rep.rho, 0.0);
  for (const auto& r : rep.rows) {
    EXPECT_GT(r.measured_error, 0.0);
    EXPECT_LE(r.measured_error, r.total_bound + r.slack);
    EXPECT_NEAR(r.total_bound, r.truncation_bound + r.noise_bound, 1e-12 * r.total_bound);
  }
  // One rate summary per (t, fixed N); three levels are too few to fit.
  EXPECT_EQ(rep.rates.size(), 6u);
  for (const auto& s : rep.rates) {
    EXPECT_TRUE(s.insufficient_ladder());
    EXPECT_FALSE(s.fit.has_value());
  }
  const std::string csv = rep.csv();
  EXPECT_EQ(csv.rfind("t,delta,seed,N,measured_error,truncation_bound,noise_bound,total_bound,"
                      "iterations,residual\n",
                      0),
            0u);
}

TEST(Experiment, SingleLevelLadderIsFlagged) {
  auto c = parse_experiment_config(replace(kSmall, "[1e-4, 1e-6, 1e-8]", "[1e-6]"));
  const auto rep = run_experiment(c);
  for (const auto& s : rep.rates) EXPECT_TRUE(s.insufficient_ladder());
  EXPECT_NE(rep.summary().find("insufficient"), std::string::npos);
}

TEST(Experiment, CsvIsIndependentOfThreadCount) {
  auto c = parse_experiment_config(
      replace(replace(kSmall, "\"closed_form\", \"mode\": 2", "\"closed_form\", \"mode\": 1"),
              "{\"deltas\": [1e-4, 1e-6, 1e-8]}",
              "{\"deltas\": [1e-4, 1e-6, 1e-8], \"direction\": \"seeded_random\", \"trials\": 2, "
              "\"seed\": 11}"));
  c.threads = 1;
  const auto a = run_experiment(c).csv();
  c.threads = 3;
  const auto b = run_experiment(c).csv();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, run_experiment(c).csv());
}

TEST(Experiment, HolderRuleChoosesN) {
  auto c = parse_experiment_config(replace(kSmall, ", \"fixed_truncations\": [1, 2, 3]", ""));
  const auto rep = run_experiment(c);
  EXPECT_EQ(rep.rows.size(), 2u * 3u);
  for (const auto& r : rep.rows) {
    EXPECT_GT(r.raw_N, 0.0);
    EXPECT_EQ(r.N, std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(r.raw_N))));
  }
  ASSERT_EQ(rep.rates.size(), 2u);
  ASSERT_TRUE(rep.rates[0].theory_slope.has_value());
  EXPECT_NEAR(*rep.rates[0].theory_slope, 0.5 / 1.5, 1e-15);
  EXPECT_NEAR(*rep.rates[1].theory_slope, 1.0 / 1.5, 1e-15);
}

TEST(Experiment, SineSourceWithSelfConvergentReference) {
  const char* cfg = R"({
    "tau": 1.0,
    "model": {"kind": "unit_interval", "modes": 8},
    "source": {"kind": "sine"},
    "reference": {"kind": "self_convergent", "mode": 1, "amplitude": 1e-4, "ladder": [100, 200, 400]},
    "noise": {"deltas": [1e-3, 1e-4, 1e-5, 1e-6, 1e-7], "direction": "worst_case_mode"},
    "solver": {"n_steps": 100},
    "choice": {"regime": "holder", "q": 0.5, "fixed_truncations": [1]},
    "times": [0.0]
  })";
  const auto rep = run_experiment(parse_experiment_config(cfg));
  ASSERT_EQ(rep.rows.size(), 5u);
  EXPECT_TRUE(rep.dominance.passed());
  for (std::size_t k = 1; k < rep.rows.size(); ++k)
    EXPECT_LT(rep.rows[k].measured_error, rep.rows[k - 1].measured_error);
  ASSERT_EQ(rep.rates.size(), 1u);
  ASSERT_TRUE(rep.rates[0].fit.has_value());
  EXPECT_TRUE(rep.rates[0].non_increasing);
}

TEST(Experiment, RejectsOutOfRangeCells) {
  auto c = parse_experiment_config(replace(kSmall, "[1, 2, 3]", "[9]"));
  c.model.modes = 16;
  EXPECT_THROW(run_experiment(c), ConfigError);
  c = parse_experiment_config(replace(kSmall, "\"auto\"", "1e-5"));
  EXPECT_THROW(run_experiment(c), ConfigError);
  c = parse_experiment_config(replace(kSmall, "\"mode\": 2", "\"mode\": 12"));
  EXPECT_THROW(run_experiment(c), ConfigError);
}
