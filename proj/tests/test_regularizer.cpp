#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fvpreg/errors.hpp"
#include "fvpreg/noise.hpp"
#include "fvpreg/oracle.hpp"
#include "fvpreg/regularizer.hpp"

using namespace fvpreg;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

FvpInstance linear_instance(const ModelPtr& m, double c) {
  FvpInstance inst;
  inst.tau = 1.0;
  inst.model = m;
  inst.source = c == 0.0 ? SourceFunction::zero() : SourceFunction::linear(c);
  inst.exact_data = SpectralField::basis(m, 1);
  return inst;
}

SolverConfig config(std::size_t N, std::size_t steps) {
  SolverConfig cfg;
  cfg.truncation = N;
  cfg.n_steps = steps;
  return cfg;
}

}  // namespace

TEST(ApplySN, ProjectionAtTimeZero) {
  auto m = EigenModel::unit_interval(8);
  const SpectralField psi(m, {1.0, -2.0, 3.0, 4.0, 5.0});
  const SpectralField out = apply_S_N(0.0, psi, 3);
  EXPECT_EQ(out, SpectralField(m, {1.0, -2.0, 3.0}));
}

TEST(ApplySN, BasisScalingAndCutoff) {
  auto m = EigenModel::unit_interval(8);
  const SpectralField out = apply_S_N(0.3, SpectralField::basis(m, 3), 3);
  EXPECT_EQ(out.coeff(3), std::exp(9.0 * kPi2 * 0.3));
  EXPECT_EQ(l2_norm(apply_S_N(0.3, SpectralField::basis(m, 4), 3)), 0.0);
}

TEST(ApplySN, OverflowNamesMode) {
  auto m = EigenModel::unit_interval(16);
  try {
    apply_S_N(1.0, SpectralField::basis(m, 1), 10);
    FAIL() << "expected overflow";
  } catch (const OverflowError& e) {
    EXPECT_EQ(e.mode(), 9u);  // 81 pi^2 > 709.78
  }
  EXPECT_THROW(apply_S_N(0.1, SpectralField::basis(m, 1), 0), ContractError);
  EXPECT_THROW(apply_S_N(0.1, SpectralField::basis(m, 1), 17), ContractError);
}

TEST(ApplySN, OperatorNormBoundIsSharp) {
  auto m = EigenModel::unit_interval(32);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> tt(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> nn(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> c(32);
    for (double& x : c) x = u(rng);
    const SpectralField psi(m, c);
    const double t = tt(rng);
    const std::size_t N = nn(rng);
    const double bound = std::exp(m->eigenvalue(N) * t);
    EXPECT_LE(l2_norm(apply_S_N(t, psi, N)), bound * l2_norm(psi) * (1.0 + 1e-14));
    const double eq = l2_norm(apply_S_N(t, SpectralField::basis(m, N), N));
    EXPECT_NEAR(eq, bound, 1e-12 * bound);
  }
}

TEST(ApplyT, FinalTimeIsProjectedData) {
  auto m = EigenModel::unit_interval(8);
  auto inst = linear_instance(m, 1.0);
  const SpectralField data(m, {0.5, 0.25, -1.0, 2.0});
  const auto cfg = config(3, 40);
  Trajectory v(inst.grid(cfg), m);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& x : v.raw()) x = u(rng);
  const Trajectory out = apply_T(v, inst, cfg, FinalData(data));
  EXPECT_EQ(out.field(40), SpectralField(m, {0.5, 0.25, -1.0}));
}

TEST(ApplyT, ZeroSourceZeroTrajectory) {
  auto m = EigenModel::unit_interval(8);
  auto inst = linear_instance(m, 0.0);
  const auto cfg = config(4, 50);
  const FinalData data(SpectralField(m, {1.0, 0.5, 0.25, 0.125, 7.0}));
  const Trajectory zero(inst.grid(cfg), m);
  const Trajectory out = apply_T(zero, inst, cfg, data);
  EXPECT_EQ(out, data_term(inst, cfg, data));
  for (std::size_t i = 0; i < out.grid().size(); ++i) {
    const double back = 1.0 - out.grid().time(i);
    EXPECT_EQ(out.field(i), apply_S_N(back, data.base(), 4));
  }
}

TEST(ApplyT, ClosedFormDefectConverges) {
  auto m = EigenModel::unit_interval(8);
  auto inst = linear_instance(m, 1.0);
  double prev = 0.0;
  for (std::size_t n : {50ul, 100ul, 200ul, 400ul}) {
    const TimeGrid g(1.0, n);
    const auto ref = closed_form_solution(m, 1, 1.0, g);
    const double r = residual(ref.trajectory, inst, config(2, n), FinalData(ref.final_data));
    if (prev > 0.0) EXPECT_GE(prev / r, 3.5) << n;
    prev = r;
  }
}

TEST(Picard, LinearSourceMatchesClosedForm) {
  auto m = EigenModel::unit_interval(16);
  auto inst = linear_instance(m, 1.0);
  const auto cfg = config(4, 4000);
  const auto r = picard_solve(inst, cfg, FinalData(*inst.exact_data));
  const auto ref = closed_form_solution(m, 1, 1.0, inst.grid(cfg));
  EXPECT_LE(sup_distance(r.solution, ref.trajectory), 1e-8);
  EXPECT_LE(r.residual, cfg.picard_tol * (1.0 + r.solution.sup_norm()));
  EXPECT_NEAR(r.solution.state(0)[0], 6428.6363086352111037, 1e-8);
}

TEST(Picard, ZeroSourceMatchesClosedForm) {
  auto m = EigenModel::unit_interval(16);
  auto inst = linear_instance(m, 0.0);
  const auto cfg = config(2, 4000);
  const auto r = picard_solve(inst, cfg, FinalData(*inst.exact_data));
  const auto ref = closed_form_solution(m, 1, 0.0, inst.grid(cfg));
  EXPECT_LE(sup_distance(r.solution, ref.trajectory), 1e-8);
  EXPECT_NEAR(r.solution.state(0)[0], 17637.068473737732565, 1e-8);
}

TEST(Picard, ZeroNoiseIsBitwiseIdentical) {
  auto m = EigenModel::unit_interval(16);
  auto inst = linear_instance(m, 1.0);
  const auto cfg = config(3, 300);
  const auto exact = picard_solve(inst, cfg, FinalData(*inst.exact_data));
  const auto noisy = picard_solve(inst, cfg, add_noise(*inst.exact_data, 0.0, {NoiseDirection::seeded_random, 3, 9}));
  EXPECT_EQ(exact.solution, noisy.solution);
  EXPECT_EQ(exact.iterations, noisy.iterations);
}

TEST(Picard, DifferentStartsSameFixedPoint) {
  auto m = EigenModel::unit_interval(16);
  auto inst = linear_instance(m, 1.0);
  inst.source = SourceFunction::sine();
  const auto cfg = config(3, 300);
  const FinalData data(SpectralField(m, {1.0, 0.5, 0.2}));
  const auto a = picard_solve(inst, cfg, data);
  const auto b = picard_solve(inst, cfg, data, Trajectory(inst.grid(cfg), m));
  EXPECT_LE(sup_distance(a.solution, b.solution), 10.0 * cfg.picard_tol * (1.0 + a.solution.sup_norm()));
}

TEST(Picard, ModesBeyondNStayZero) {
  auto m = EigenModel::unit_interval(8);
  auto inst = linear_instance(m, 1.0);
  inst.source = SourceFunction::sine();
  const auto cfg = config(2, 100);
  const auto r = picard_solve(inst, cfg, FinalData(SpectralField(m, {1.0, 1.0, 1.0, 1.0})));
  for (std::size_t i = 0; i < r.solution.grid().size(); ++i)
    for (std::size_t j = 2; j < 8; ++j) EXPECT_EQ(r.solution.state(i)[j], 0.0);
}

TEST(Picard, IncrementsEventuallyContract) {
  auto m = EigenModel::unit_interval(8);
  auto inst = linear_instance(m, 1.0);
  inst.source = SourceFunction::sine();
  const auto r = picard_solve(inst, config(3, 200), FinalData(SpectralField(m, {2.0, 1.0, 0.5})));
  const auto& inc = r.increments;
  ASSERT_GE(inc.size(), 4u);
  const std::size_t w = 3;
  const double mean_log_ratio = std::log(inc.back() / inc[inc.size() - 1 - w]) / static_cast<double>(w);
  EXPECT_LT(mean_log_ratio, 0.0);
}

TEST(Picard, LinearInDataForZeroSource) {
  auto m = EigenModel::unit_interval(8);
  auto inst = linear_instance(m, 0.0);
  const auto cfg = config(3, 200);
  const SpectralField g1(m, {1.0, 0.0, 0.3});
  const SpectralField g2(m, {0.0, 0.7, -0.2});
  const double a = 2.5, b = -1.5;
  const auto s1 = picard_solve(inst, cfg, FinalData(g1)).solution;
  const auto s2 = picard_solve(inst, cfg, FinalData(g2)).solution;
  const auto s = picard_solve(inst, cfg, FinalData(a * g1 + b * g2)).solution;
  Trajectory combo(s.grid(), m);
  for (std::size_t k = 0; k < combo.raw().size(); ++k) combo.raw()[k] = a * s1.raw()[k] + b * s2.raw()[k];
  EXPECT_LE(sup_distance(s, combo), 1e-9 * (1.0 + s.sup_norm()));
}

TEST(Picard, ResidualOfTrivialProblemIsZero) {
  auto m = EigenModel::unit_interval(4);
  auto inst = linear_instance(m, 0.0);
  const auto cfg = config(2, 20);
  EXPECT_EQ(residual(Trajectory(inst.grid(cfg), m), inst, cfg, FinalData(SpectralField(m))), 0.0);
}

TEST(Picard, NonConvergenceCarriesHistory) {
  auto m = EigenModel::unit_interval(8);
  auto inst = linear_instance(m, 1.0);
  auto cfg = config(4, 200);
  cfg.max_iters = 2;
  try {
    picard_solve(inst, cfg, FinalData(*inst.exact_data));
    FAIL() << "expected non-convergence";
  } catch (const NonConvergenceError& e) {
    EXPECT_EQ(e.history().size(), 2u);
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(Picard, AndersonReachesTheSameFixedPoint) {
  auto m = EigenModel::unit_interval(8);
  auto inst = linear_instance(m, 1.0);
  inst.source = SourceFunction::sine();
  auto cfg = config(3, 300);
  const FinalData data(SpectralField(m, {1.0, -0.5, 0.25}));
  const auto plain = picard_solve(inst, cfg, data);
  cfg.acceleration = Acceleration::anderson(4);
  const auto acc = picard_solve(inst, cfg, data);
  EXPECT_LE(sup_distance(plain.solution, acc.solution), 1e-9 * (1.0 + plain.solution.sup_norm()));
  EXPECT_LE(acc.iterations, plain.iterations);
}

TEST(SolverConfig, Validation) {
  auto m = EigenModel::unit_interval(8);
  auto inst = linear_instance(m, 1.0);
  const FinalData data(*inst.exact_data);
  auto bad = config(0, 100);
  EXPECT_THROW(picard_solve(inst, bad, data), ContractError);
  bad = config(9, 100);
  EXPECT_THROW(picard_solve(inst, bad, data), ContractError);
  bad = config(2, 2);
  EXPECT_THROW(picard_solve(inst, bad, data), ContractError);
  bad = config(2, 100);
  bad.picard_tol = 0.0;
  EXPECT_THROW(picard_solve(inst, bad, data), ContractError);
  bad = config(2, 100);
  bad.acceleration = Acceleration::anderson(0);
  EXPECT_THROW(picard_solve(inst, bad, data), ContractError);
}

TEST(ContractionIndex, FirstFactorBelowOne) {
  const double kappa = 1.0, lam = kPi2, tau = 1.0;
  const double m = apriori_contraction_index(kappa, lam, tau);
  const double log_a = lam * tau + std::log(2.0);
  EXPECT_LT(m * log_a - std::lgamma(m + 1.0), 0.0);
  EXPECT_GE((m - 1.0) * log_a - std::lgamma(m), 0.0);
  EXPECT_EQ(apriori_contraction_index(0.0, 0.01, 0.1), 1.0);
}

TEST(Source, LipschitzBySampling) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (const auto& f : {SourceFunction::zero(), SourceFunction::linear(-2.5), SourceFunction::sine()}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> a(16), b(16), fa(16), fb(16), d(16), fd(16);
      for (std::size_t j = 0; j < 16; ++j) {
        a[j] = u(rng);
        b[j] = u(rng);
        d[j] = a[j] - b[j];
      }
      f.apply(0.3, a, fa);
      f.apply(0.3, b, fb);
      for (std::size_t j = 0; j < 16; ++j) fd[j] = fa[j] - fb[j];
      EXPECT_LE(l2_norm(fd), f.kappa() * l2_norm(d) * (1.0 + 1e-14));
    }
  }
}
