// Command-line front end. Talks to the library through the C API only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fvpreg/fvpreg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitDominance = 4;

int exit_code(fvpreg_status s) {
  switch (s) {
    case FVPREG_OK:
      return kExitOk;
    case FVPREG_ERR_CONFIG:
    case FVPREG_ERR_CONTRACT:
    case FVPREG_ERR_RANGE:
    case FVPREG_ERR_OVERFLOW:
    case FVPREG_ERR_UNSUPPORTED:
    case FVPREG_ERR_NOISE_TOO_LARGE:
      return kExitConfig;
    case FVPREG_ERR_NONCONVERGENCE:
      return kExitNonConvergence;
    case FVPREG_ERR_DOMINANCE:
      return kExitDominance;
    default:
      return kExitFailure;
  }
}

int report_failure(fvpreg_status s) {
  std::cerr << "error: " << fvpreg_last_error() << '\n';
  return exit_code(s);
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RAII holders for the opaque handles.
struct Model {
  fvpreg_model* h = nullptr;
  ~Model() { fvpreg_model_destroy(h); }
};
struct Traj {
  fvpreg_trajectory* h = nullptr;
  ~Traj() { fvpreg_trajectory_destroy(h); }
};
struct Report {
  fvpreg_report* h = nullptr;
  ~Report() { fvpreg_report_destroy(h); }
};

struct SolveArgs {
  double tau = 1.0;
  std::string source = "linear";
  double c = 1.0;
  std::size_t modes = 64;
  std::size_t mode = 1;
  double amplitude = 1.0;
  std::size_t N = 1;
  std::size_t steps = 1000;
  double tol = 1e-11;
  std::size_t max_iters = 500;
  std::size_t anderson = 0;
  double delta = 0.0;
  std::string noise = "worst_case_mode";
  std::uint64_t seed = 0;
  std::string out;
  std::size_t every = 1;
};

int run_solve(const SolveArgs& a) {
  Model m;
  if (auto s = fvpreg_model_unit_interval(a.modes, &m.h)) return report_failure(s);
  const std::size_t M = fvpreg_model_mode_count(m.h);
  if (a.mode < 1 || a.mode > M) {
    std::cerr << "error: --mode must lie in 1.." << M << '\n';
    return kExitConfig;
  }
  if (a.every < 1) {
    std::cerr << "error: --every must be >= 1\n";
    return kExitConfig;
  }
  fvpreg_problem p{a.tau, FVPREG_SOURCE_LINEAR, a.c};
  if (a.source == "zero") p.source = FVPREG_SOURCE_ZERO;
  if (a.source == "sine") p.source = FVPREG_SOURCE_SINE;

  fvpreg_solver_config cfg;
  fvpreg_solver_config_init(&cfg);
  cfg.truncation = a.N;
  cfg.n_steps = a.steps;
  cfg.picard_tol = a.tol;
  cfg.max_iters = a.max_iters;
  cfg.anderson_depth = a.anderson;

  std::vector<double> g(M, 0.0);
  g[a.mode - 1] = a.amplitude;
  std::vector<double> e(M, 0.0);
  const bool noisy = a.delta > 0.0;
  if (noisy) {
    const auto dir = a.noise == "seeded_random" ? FVPREG_NOISE_SEEDED_RANDOM
                                                : FVPREG_NOISE_WORST_CASE_MODE;
    if (auto s = fvpreg_make_noise(m.h, dir, a.N, a.seed, a.delta, e.data(), M))
      return report_failure(s);
  }

  Traj tr;
  if (auto s = fvpreg_solve(m.h, &p, &cfg, g.data(), noisy ? e.data() : nullptr, M, &tr.h))
    return report_failure(s);

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) {
      std::cerr << "error: cannot write " << a.out << '\n';
      return kExitConfig;
    }
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  os << "t,norm";
  for (std::size_t j = 1; j <= a.N; ++j) os << ",c" << j;
  os << '\n';
  std::vector<double> state(M);
  const std::size_t count = fvpreg_trajectory_time_count(tr.h);
  for (std::size_t i = 0; i < count; ++i) {
    if (i % a.every != 0 && i + 1 != count) continue;
    double t = 0.0;
    double norm = 0.0;
    fvpreg_trajectory_time(tr.h, i, &t);
    fvpreg_trajectory_norm(tr.h, i, &norm);
    fvpreg_trajectory_state(tr.h, i, state.data(), M);
    os << g17(t) << ',' << g17(norm);
    for (std::size_t j = 0; j < a.N; ++j) os << ',' << g17(state[j]);
    os << '\n';
  }
  std::cerr << "iterations " << fvpreg_trajectory_iterations(tr.h) << ", residual "
            << g17(fvpreg_trajectory_residual(tr.h)) << ", a-priori contraction index "
            << g17(fvpreg_trajectory_contraction_index(tr.h)) << '\n';
  return kExitOk;
}

int run_illposed(std::size_t n_max, double tau, double t) {
  Model m;
  if (auto s = fvpreg_model_unit_interval(std::max<std::size_t>(n_max, 1), &m.h))
    return report_failure(s);
  std::cout << "n,beta,data_norm,solution_norm,lower_bound\n";
  for (std::size_t n = 1; n <= n_max; ++n) {
    fvpreg_illposed_row row;
    if (auto s = fvpreg_illposed_row_at(m.h, n, tau, t, &row)) return report_failure(s);
    std::cout << n << ',' << g17(row.beta) << ',' << g17(row.data_norm) << ','
              << g17(row.solution_norm) << ',' << g17(row.lower_bound) << '\n';
  }
  return kExitOk;
}

int run_choose(const std::string& rule, double index, double rho, double delta, double t,
               double tau, std::size_t modes) {
  Model m;
  if (auto s = fvpreg_model_unit_interval(modes, &m.h)) return report_failure(s);
  fvpreg_choice_inputs in{rule == "log" ? FVPREG_RULE_LOG : FVPREG_RULE_HOLDER, index, rho, delta,
                          t, tau};
  fvpreg_choice_result r;
  if (auto s = fvpreg_choose_n(m.h, &in, &r)) return report_failure(s);
  std::cout << "N " << r.N << "\nraw " << g17(r.raw) << "\nclamped " << (r.clamped ? "yes" : "no")
            << '\n';
  return kExitOk;
}

int run_experiment(const std::string& path, const std::string& csv_out) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << '\n';
    return kExitConfig;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  Report rep;
  if (auto s = fvpreg_experiment_run(ss.str().c_str(), &rep.h)) return report_failure(s);
  if (csv_out.empty()) {
    std::cout << fvpreg_report_csv(rep.h);
    std::cerr << fvpreg_report_summary(rep.h);
  } else {
    std::ofstream out(csv_out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << csv_out << '\n';
      return kExitConfig;
    }
    out << fvpreg_report_csv(rep.h);
    std::cout << fvpreg_report_summary(rep.h);
  }
  return fvpreg_report_violations(rep.h) > 0 ? kExitDominance : kExitOk;
}

int run_gronwall(std::uint64_t seed, std::size_t cases, double tau, std::size_t steps) {
  fvpreg_gronwall_result r;
  if (auto s = fvpreg_gronwall_sweep(seed, cases, tau, steps, &r)) return report_failure(s);
  std::cout << "cases " << r.cases << "\npoints " << r.points_checked << "\nviolations "
            << r.violations << "\nmin bound/U " << g17(r.min_ratio) << '\n';
  return r.violations > 0 ? kExitDominance : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated-Fourier regularization for a backward heat equation with memory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fvpreg_version()));

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Regularized solve; trajectory CSV on stdout");
  solve->add_option("--tau", sa.tau, "Final time")->check(CLI::PositiveNumber);
  solve->add_option("--source", sa.source, "Source term")
      ->check(CLI::IsMember({"zero", "linear", "sine"}));
  solve->add_option("--c", sa.c, "Coefficient of the linear source");
  solve->add_option("--modes", sa.modes, "Number of eigenmodes")->check(CLI::PositiveNumber);
  solve->add_option("--mode", sa.mode, "Final data is amplitude * phi_mode");
  solve->add_option("--amplitude", sa.amplitude, "Amplitude of the final data");
  solve->add_option("-N,--truncation", sa.N, "Truncation level");
  solve->add_option("--steps", sa.steps, "Time steps");
  solve->add_option("--tol", sa.tol, "Relative Picard tolerance");
  solve->add_option("--max-iters", sa.max_iters, "Picard iteration cap");
  solve->add_option("--anderson", sa.anderson, "Anderson depth (0 = plain Picard)");
  solve->add_option("--delta", sa.delta, "Noise level")->check(CLI::NonNegativeNumber);
  solve->add_option("--noise", sa.noise, "Noise direction")
      ->check(CLI::IsMember({"worst_case_mode", "seeded_random"}));
  solve->add_option("--seed", sa.seed, "Seed for seeded_random noise");
  solve->add_option("--every", sa.every, "Print every k-th time point");
  solve->add_option("-o,--out", sa.out, "Write the CSV here instead of stdout");

  std::size_t n_max = 8;
  double ill_tau = 1.0;
  double ill_t = 0.0;
  auto* ill = app.add_subcommand("demo-illposed", "Data and solution norms of the blow-up sequence");
  ill->add_option("--n-max", n_max, "Largest mode");
  ill->add_option("--tau", ill_tau, "Final time")->check(CLI::PositiveNumber);
  ill->add_option("--t", ill_t, "Time at which the solution norm is reported");

  std::string rule = "holder";
  double index = -1.0;
  double rho = 1.0;
  double delta = 1e-6;
  double ch_t = 0.0;
  double ch_tau = 1.0;
  std::size_t ch_modes = 64;
  auto* choose = app.add_subcommand("choose-n", "Truncation level from an a-priori rule");
  choose->add_option("--rule", rule, "holder or log")->check(CLI::IsMember({"holder", "log"}));
  choose->add_option("--index", index, "q for holder, p for log (default 0.5 / 1)");
  choose->add_option("--rho", rho, "Gevrey-norm budget")->check(CLI::PositiveNumber);
  choose->add_option("--delta", delta, "Noise level")->check(CLI::PositiveNumber);
  choose->add_option("--t", ch_t, "Evaluation time");
  choose->add_option("--tau", ch_tau, "Final time")->check(CLI::PositiveNumber);
  choose->add_option("--modes", ch_modes, "Number of eigenmodes")->check(CLI::PositiveNumber);

  std::string config;
  std::string csv_out;
  auto* exp = app.add_subcommand("experiment", "Noise-ladder experiment from a JSON config");
  exp->add_option("config", config, "Config file")->required();
  exp->add_option("--csv", csv_out, "Write the CSV here; summary goes to stdout");

  std::uint64_t g_seed = 1;
  std::size_t g_cases = 100;
  double g_tau = 1.0;
  std::size_t g_steps = 1000;
  auto* gron = app.add_subcommand("gronwall-check", "Randomized Gronwall bound sweep");
  gron->add_option("--seed", g_seed, "Seed");
  gron->add_option("--cases", g_cases, "Number of random (c0, c1)");
  gron->add_option("--tau", g_tau, "Final time")->check(CLI::PositiveNumber);
  gron->add_option("--steps", g_steps, "RK4 steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*solve) return run_solve(sa);
  if (*ill) return run_illposed(n_max, ill_tau, ill_t);
  if (*choose) {
    if (index < 0.0) index = rule == "log" ? 1.0 : 0.5;
    return run_choose(rule, index, rho, delta, ch_t, ch_tau, ch_modes);
  }
  if (*exp) return run_experiment(config, csv_out);
  if (*gron) return run_gronwall(g_seed, g_cases, g_tau, g_steps);
  return kExitFailure;
}
