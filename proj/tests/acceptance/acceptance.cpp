// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fail.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fvpreg/errors.hpp"
#include "fvpreg/estimates.hpp"
#include "fvpreg/experiment.hpp"
#include "fvpreg/noise.hpp"
#include "fvpreg/oracle.hpp"
#include "fvpreg/param_choice.hpp"
#include "fvpreg/regularizer.hpp"

using namespace fvpreg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

FvpInstance linear_instance(const ModelPtr& m, double c, std::size_t mode) {
  FvpInstance inst;
  inst.model = m;
  inst.source = c == 0.0 ? SourceFunction::zero() : SourceFunction::linear(c);
  inst.exact_data = SpectralField::basis(m, mode);
  return inst;
}

SolverConfig solver(std::size_t N, std::size_t n_steps) {
  SolverConfig cfg;
  cfg.truncation = N;
  cfg.n_steps = n_steps;
  return cfg;
}

Outcome closed_form_equivalence() {
  auto m = EigenModel::unit_interval(16);
  double worst = 0.0;
  for (double c : {1.0, 0.0}) {
    const auto inst = linear_instance(m, c, 1);
    const auto cfg = solver(4, 4000);
    const auto r = picard_solve(inst, cfg, FinalData(*inst.exact_data));
    const auto ref = closed_form_solution(m, 1, c, inst.grid(cfg));
    worst = std::max(worst, sup_distance(r.solution, ref.trajectory));
  }
  return {worst <= 1e-8, fmt("sup error %.3g (tol 1e-8)", worst)};
}

Outcome illposedness() {
  using big = boost::multiprecision::cpp_bin_float_50;
  auto m = EigenModel::unit_interval(8);
  const double tau = 1.0;
  double prev_data = INFINITY, worst_rel = 0.0;
  bool ok = true;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto p = illposed_pair(m, n, tau);
    ok = ok && p.data_norm < prev_data;
    prev_data = p.data_norm;
    const double sol = p.solution_norm(0.0);
    ok = ok && sol >= p.lower_bound(0.0);

    const big pi = boost::math::constants::pi<big>();
    const big b = big(n * n) * pi * pi - 1;
    const big beta = -(b + sqrt(b * b - 4)) / 2;
    const big alpha = 1 / beta;
    const big u0 = (alpha * exp(-alpha * tau) - beta * exp(-beta * tau)) / (alpha - beta);
    const big exact_sol = abs(u0) / abs(beta);
    const big exact_data = 1 / abs(beta);
    worst_rel = std::max(worst_rel, static_cast<double>(abs((big(sol) - exact_sol) / exact_sol)));
    worst_rel = std::max(worst_rel, static_cast<double>(abs((big(p.data_norm) - exact_data) / exact_data)));
  }
  ok = ok && worst_rel <= 1e-10;
  return {ok, fmt("max relative deviation from 50-digit values %.3g", worst_rel)};
}

Outcome gronwall() {
  const auto r = gronwall_sweep(1, 100, 1.0, 1000);
  return {r.violations == 0 && r.cases == 100,
          std::to_string(r.points_checked) + " points, " + std::to_string(r.violations) +
              " violations, min bound/U " + fmt("%.6f", r.min_ratio)};
}

Outcome operator_norm() {
  auto m = EigenModel::unit_interval(16);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ut(0.0, 1.0), uc(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> un(1, 8);
  std::size_t violations = 0;
  double worst_eq = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = ut(rng);
    const std::size_t N = un(rng);
    std::vector<double> c(16);
    for (double& x : c) x = uc(rng);
    const SpectralField psi(m, c);
    const double lhs = l2_norm(apply_S_N(t, psi, N));
    const double bound = std::exp(m->eigenvalue(N) * t) * l2_norm(psi);
    if (lhs > bound * (1 + 1e-14)) ++violations;
    const double eq = l2_norm(apply_S_N(t, SpectralField::basis(m, N), N));
    worst_eq = std::max(worst_eq, std::abs(eq - std::exp(m->eigenvalue(N) * t)) /
                                      std::exp(m->eigenvalue(N) * t));
  }
  return {violations == 0 && worst_eq <= 1e-12,
          std::to_string(violations) + " violations, equality gap " + fmt("%.3g", worst_eq)};
}

Outcome dominance() {
  const auto rep = run_experiment(parse_experiment_config(R"({
    "tau": 1.0,
    "model": {"kind": "unit_interval", "modes": 16},
    "source": {"kind": "linear", "c": 1.0},
    "reference": {"kind": "closed_form", "mode": 2},
    "noise": {"deltas": [1e-4, 1e-6, 1e-8, 1e-10, 1e-12], "direction": "worst_case_mode"},
    "solver": {"n_steps": 1000},
    "choice": {"regime": "holder", "q": 0.5, "rho": "auto", "fixed_truncations": [1, 2, 3, 4]},
    "times": [0.0, 0.5]
  })"));
  return {rep.dominance.passed() && rep.dominance.checked == 40,
          std::to_string(rep.dominance.checked) + " cells, " +
              std::to_string(rep.dominance.violations.size()) + " violations, min log margin " +
              fmt("%.3g", rep.dominance.min_log_margin)};
}

Outcome holder_rate() {
  std::string deltas;
  for (int k = 0; k < 8; ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.17g", k ? ", " : "", std::pow(10.0, -4.0 - 8.0 * k / 7.0));
    deltas += buf;
  }
  const auto rep = run_experiment(parse_experiment_config(R"({
    "tau": 1.0,
    "model": {"kind": "unit_interval", "modes": 16},
    "source": {"kind": "linear", "c": 1.0},
    "reference": {"kind": "closed_form", "mode": 1},
    "noise": {"deltas": [)" + deltas + R"(], "direction": "worst_case_mode"},
    "solver": {"n_steps": 4000},
    "choice": {"regime": "holder", "q": 0.5, "rho": "auto"},
    "times": [0.0]
  })"));
  const auto& s = rep.rates.at(0);
  const double target = 0.5 / 1.5;
  const double slope = s.fit ? s.fit->slope : NAN;
  std::string Ns;
  for (const auto& r : rep.rows) Ns += std::to_string(r.N);
  const bool ok = s.fit && std::abs(slope - target) <= 0.2 && s.non_increasing;
  return {ok, fmt("slope %.3f", slope) + fmt(" vs %.3f", target) +
                  (s.non_increasing ? ", errors non-increasing" : ", errors not monotone") +
                  ", N along ladder " + Ns};
}

Outcome quadrature_order() {
  auto m = EigenModel::unit_interval(8);
  const auto inst = linear_instance(m, 1.0, 1);
  std::vector<double> r;
  for (std::size_t n : {50ul, 100ul, 200ul, 400ul}) {
    const auto ref = closed_form_solution(m, 1, 1.0, TimeGrid(1.0, n));
    r.push_back(residual(ref.trajectory, inst, solver(2, n), FinalData(ref.final_data)));
  }
  double worst = INFINITY;
  for (std::size_t k = 1; k < r.size(); ++k) worst = std::min(worst, r[k - 1] / r[k]);
  return {worst >= 3.5, fmt("smallest reduction per halving %.2f", worst)};
}

Outcome determinism() {
  auto m = EigenModel::unit_interval(64);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ue(0.0, 14.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double delta = std::pow(10.0, -ue(rng));
    const auto fd = add_noise(SpectralField::basis(m, 1), delta,
                              {NoiseDirection::seeded_random, 1, rng()});
    worst = std::max(worst, std::abs(l2_norm(*fd.perturbation()) - delta) / delta);
  }
  auto cfg = parse_experiment_config(R"({
    "model": {"kind": "unit_interval", "modes": 16},
    "reference": {"kind": "closed_form", "mode": 1},
    "noise": {"deltas": [1e-4, 1e-6, 1e-8], "direction": "seeded_random", "trials": 3, "seed": 42},
    "solver": {"n_steps": 200},
    "choice": {"regime": "holder", "q": 0.5, "fixed_truncations": [1, 2]},
    "times": [0.0, 0.5]
  })");
  const std::string a = run_experiment(cfg).csv();
  cfg.threads = 4;
  const std::string b = run_experiment(cfg).csv();
  const bool same = a == b;
  return {worst <= 1e-15 && same,
          fmt("max noise-norm deviation %.3g", worst) + (same ? ", CSVs identical" : ", CSVs differ")};
}

Outcome zeta_inversion() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ub(0.2, 3.0), uc(0.0, 2.0), ud(0.5, 4.0), ue(5.0, 100.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double b = ub(rng), c = uc(rng), d = ud(rng), s = std::exp(-ue(rng));
    const auto inv = zeta_inverse(s, b, c, d);
    worst = std::max(worst, std::abs(zeta(inv.bisection, b, c, d) - s) / s);
  }
  bool monotone = true;
  double last_gap = 0.0;
  for (const auto& [b, c, d] : std::vector<std::array<double, 3>>{{1, 1, 1}, {2, 1, 1}, {0.5, 2, 3}}) {
    double prev = INFINITY;
    for (int k : {8, 12, 16, 20, 24, 28, 30}) {
      const auto inv = zeta_inverse(std::pow(10.0, -k), b, c, d);
      const double gap = std::abs(inv.asymptotic / inv.bisection - 1.0);
      monotone = monotone && gap < prev;
      prev = gap;
    }
    last_gap = std::max(last_gap, prev);
  }
  return {worst <= 1e-12 && monotone,
          fmt("max relative residual %.3g", worst) + (monotone ? ", ratio gap shrinks" : ", ratio gap not monotone") +
              fmt(" (largest at 1e-30: %.3g)", last_gap)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed-form equivalence", closed_form_equivalence},
      {"ill-posedness table", illposedness},
      {"Gronwall sweep", gronwall},
      {"operator norm of S_N", operator_norm},
      {"bound dominance", dominance},
      {"Hoelder rate exponent", holder_rate},
      {"quadrature order", quadrature_order},
      {"determinism and noise norm", determinism},
      {"zeta inverse", zeta_inversion},
  };
  int failed = 0;
  int k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", k, name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
