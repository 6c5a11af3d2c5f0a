#include "fvpreg/fvpreg.h"

#include <exception>
#include <new>
#include <optional>
#include <string>

#include "fvpreg/errors.hpp"
#include "fvpreg/estimates.hpp"
#include "fvpreg/experiment.hpp"
#include "fvpreg/noise.hpp"
#include "fvpreg/oracle.hpp"
#include "fvpreg/param_choice.hpp"
#include "fvpreg/regularizer.hpp"

struct fvpreg_model {
  fvpreg::ModelPtr model;
};

struct fvpreg_trajectory {
  fvpreg::Trajectory trajectory;
  std::size_t iterations = 0;
  double residual = 0.0;
  double contraction_index = 0.0;
};

struct fvpreg_report {
  fvpreg::ExperimentReport report;
  std::string csv;
  std::string summary;
};

namespace {

thread_local std::string last_error;

fvpreg_status fail(fvpreg_status s, const char* what) {
  last_error = what;
  return s;
}

template <class Fn>
fvpreg_status guarded(Fn fn) {
  last_error.clear();
  try {
    fn();
    return FVPREG_OK;
  } catch (const fvpreg::ConfigError& e) {
    return fail(FVPREG_ERR_CONFIG, e.what());
  } catch (const fvpreg::NonConvergenceError& e) {
    return fail(FVPREG_ERR_NONCONVERGENCE, e.what());
  } catch (const fvpreg::ContractError& e) {
    return fail(FVPREG_ERR_CONTRACT, e.what());
  } catch (const fvpreg::RangeError& e) {
    return fail(FVPREG_ERR_RANGE, e.what());
  } catch (const fvpreg::OverflowError& e) {
    return fail(FVPREG_ERR_OVERFLOW, e.what());
  } catch (const fvpreg::UnsupportedDomainError& e) {
    return fail(FVPREG_ERR_UNSUPPORTED, e.what());
  } catch (const fvpreg::UnsupportedRegimeError& e) {
    return fail(FVPREG_ERR_UNSUPPORTED, e.what());
  } catch (const fvpreg::NoRootError& e) {
    return fail(FVPREG_ERR_NO_ROOT, e.what());
  } catch (const fvpreg::NoiseTooLargeError& e) {
    return fail(FVPREG_ERR_NOISE_TOO_LARGE, e.what());
  } catch (const fvpreg::ReferenceRejectedError& e) {
    return fail(FVPREG_ERR_REFERENCE_REJECTED, e.what());
  } catch (const fvpreg::ModelMismatchError& e) {
    return fail(FVPREG_ERR_MODEL_MISMATCH, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FVPREG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FVPREG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FVPREG_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw fvpreg::ContractError(what);
}

fvpreg::SourceFunction make_source(const fvpreg_problem& p) {
  switch (p.source) {
    case FVPREG_SOURCE_ZERO:
      return fvpreg::SourceFunction::zero();
    case FVPREG_SOURCE_LINEAR:
      return fvpreg::SourceFunction::linear(p.source_c);
    case FVPREG_SOURCE_SINE:
      return fvpreg::SourceFunction::sine();
  }
  throw fvpreg::ContractError("unknown source kind");
}

fvpreg::SolverConfig make_config(const fvpreg_solver_config& c) {
  fvpreg::SolverConfig cfg;
  cfg.truncation = c.truncation;
  cfg.n_steps = c.n_steps;
  cfg.picard_tol = c.picard_tol;
  cfg.max_iters = c.max_iters;
  if (c.anderson_depth > 0) cfg.acceleration = fvpreg::Acceleration::anderson(c.anderson_depth);
  return cfg;
}

fvpreg::SpectralField make_field(const fvpreg::ModelPtr& model, const double* values,
                                 std::size_t count) {
  require(values != nullptr || count == 0, "coefficient pointer is null");
  return fvpreg::SpectralField(model, std::vector<double>(values, values + count));
}

}  // namespace

extern "C" {

const char* fvpreg_last_error(void) { return last_error.c_str(); }

const char* fvpreg_version(void) { return "0.1.0"; }

fvpreg_status fvpreg_model_unit_interval(size_t modes, fvpreg_model** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new fvpreg_model{fvpreg::EigenModel::unit_interval(modes)};
  });
}

fvpreg_status fvpreg_model_from_eigenvalues(int dimension, const double* lambda, size_t count,
                                            double e1, double e2, fvpreg_model** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    require(lambda != nullptr || count == 0, "eigenvalue pointer is null");
    *out = new fvpreg_model{fvpreg::EigenModel::from_eigenvalues(
        dimension, std::vector<double>(lambda, lambda + count), e1, e2)};
  });
}

size_t fvpreg_model_mode_count(const fvpreg_model* model) {
  return model ? model->model->mode_count() : 0;
}

fvpreg_status fvpreg_model_eigenvalue(const fvpreg_model* model, size_t j, double* out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "null argument");
    *out = model->model->eigenvalue(j);
  });
}

void fvpreg_model_destroy(fvpreg_model* model) { delete model; }

void fvpreg_solver_config_init(fvpreg_solver_config* cfg) {
  if (!cfg) return;
  const fvpreg::SolverConfig d;
  cfg->truncation = d.truncation;
  cfg->n_steps = d.n_steps;
  cfg->picard_tol = d.picard_tol;
  cfg->max_iters = d.max_iters;
  cfg->anderson_depth = 0;
}

fvpreg_status fvpreg_solve(const fvpreg_model* model, const fvpreg_problem* problem,
                           const fvpreg_solver_config* cfg, const double* data,
                           const double* perturbation, size_t count, fvpreg_trajectory** out) {
  return guarded([&] {
    require(model && problem && cfg && out, "null argument");
    fvpreg::FvpInstance inst;
    inst.tau = problem->tau;
    inst.model = model->model;
    inst.source = make_source(*problem);
    const fvpreg::SpectralField g = make_field(model->model, data, count);
    const fvpreg::FinalData fd = perturbation
                                     ? fvpreg::FinalData(g, make_field(model->model, perturbation, count))
                                     : fvpreg::FinalData(g);
    fvpreg::PicardResult r = fvpreg::picard_solve(inst, make_config(*cfg), fd);
    *out = new fvpreg_trajectory{std::move(r.solution), r.iterations, r.residual,
                                 r.apriori_contraction_index};
  });
}

fvpreg_status fvpreg_closed_form(const fvpreg_model* model, size_t n, double c, double tau,
                                 size_t n_steps, fvpreg_trajectory** out) {
  return guarded([&] {
    require(model && out, "null argument");
    auto ref = fvpreg::closed_form_solution(model->model, n, c, fvpreg::TimeGrid(tau, n_steps));
    *out = new fvpreg_trajectory{std::move(ref.trajectory), 0, 0.0, 0.0};
  });
}

size_t fvpreg_trajectory_time_count(const fvpreg_trajectory* tr) {
  return tr ? tr->trajectory.grid().size() : 0;
}

size_t fvpreg_trajectory_mode_count(const fvpreg_trajectory* tr) {
  return tr ? tr->trajectory.mode_count() : 0;
}

fvpreg_status fvpreg_trajectory_time(const fvpreg_trajectory* tr, size_t i, double* t) {
  return guarded([&] {
    require(tr && t, "null argument");
    *t = tr->trajectory.grid().time(i);
  });
}

fvpreg_status fvpreg_trajectory_state(const fvpreg_trajectory* tr, size_t i, double* out,
                                      size_t count) {
  return guarded([&] {
    require(tr && (out || count == 0), "null argument");
    const auto s = tr->trajectory.state(i);
    for (std::size_t j = 0; j < count && j < s.size(); ++j) out[j] = s[j];
  });
}

fvpreg_status fvpreg_trajectory_norm(const fvpreg_trajectory* tr, size_t i, double* out) {
  return guarded([&] {
    require(tr && out, "null argument");
    *out = tr->trajectory.norm_at(i);
  });
}

size_t fvpreg_trajectory_iterations(const fvpreg_trajectory* tr) { return tr ? tr->iterations : 0; }

double fvpreg_trajectory_residual(const fvpreg_trajectory* tr) { return tr ? tr->residual : 0.0; }

double fvpreg_trajectory_contraction_index(const fvpreg_trajectory* tr) {
  return tr ? tr->contraction_index : 0.0;
}

void fvpreg_trajectory_destroy(fvpreg_trajectory* tr) { delete tr; }

fvpreg_status fvpreg_make_noise(const fvpreg_model* model, fvpreg_noise_direction direction,
                                size_t mode, uint64_t seed, double delta, double* out,
                                size_t count) {
  return guarded([&] {
    require(model && out, "null argument");
    require(count == model->model->mode_count(), "output length must equal the mode count");
    fvpreg::NoiseSpec spec;
    spec.direction = direction == FVPREG_NOISE_SEEDED_RANDOM
                         ? fvpreg::NoiseDirection::seeded_random
                         : fvpreg::NoiseDirection::worst_case_mode;
    spec.mode = mode;
    spec.seed = seed;
    const fvpreg::SpectralField zero(model->model);
    const fvpreg::FinalData fd = fvpreg::add_noise(zero, delta, spec);
    for (std::size_t j = 0; j < count; ++j)
      out[j] = fd.perturbation() ? fd.perturbation()->coeffs()[j] : 0.0;
  });
}

fvpreg_status fvpreg_illposed_row_at(const fvpreg_model* model, size_t n, double tau, double t,
                                     fvpreg_illposed_row* out) {
  return guarded([&] {
    require(model && out, "null argument");
    require(t >= 0.0 && t <= tau, "t must lie in [0, tau]");
    const auto p = fvpreg::illposed_pair(model->model, n, tau);
    *out = {n, p.roots.beta, p.data_norm, p.solution_norm(t), p.lower_bound(t)};
  });
}

fvpreg_status fvpreg_choose_n(const fvpreg_model* model, const fvpreg_choice_inputs* in,
                              fvpreg_choice_result* out) {
  return guarded([&] {
    require(model && in && out, "null argument");
    const auto regime = in->rule == FVPREG_RULE_LOG ? fvpreg::ChoiceRegime::log_rule
                                                    : fvpreg::ChoiceRegime::holder_rule;
    const auto ci = fvpreg::ChoiceInputs::for_model(*model->model, regime, in->index, in->rho,
                                                    in->delta, in->t, in->tau);
    const auto r = fvpreg::choose_N(ci);
    *out = {r.N, r.raw, r.clamped ? 1 : 0};
  });
}

fvpreg_status fvpreg_gronwall_sweep(uint64_t seed, size_t cases, double tau, size_t n_steps,
                                    fvpreg_gronwall_result* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto r = fvpreg::gronwall_sweep(seed, cases, tau, n_steps);
    *out = {r.cases, r.points_checked, r.violations, r.min_ratio};
  });
}

fvpreg_status fvpreg_experiment_run(const char* json, fvpreg_report** out) {
  return guarded([&] {
    require(json && out, "null argument");
    auto rep = fvpreg::run_experiment(fvpreg::parse_experiment_config(json));
    auto* h = new fvpreg_report{std::move(rep), {}, {}};
    h->csv = h->report.csv();
    h->summary = h->report.summary();
    *out = h;
  });
}

const char* fvpreg_report_csv(const fvpreg_report* report) {
  return report ? report->csv.c_str() : "";
}

const char* fvpreg_report_summary(const fvpreg_report* report) {
  return report ? report->summary.c_str() : "";
}

size_t fvpreg_report_violations(const fvpreg_report* report) {
  return report ? report->report.dominance.violations.size() : 0;
}

void fvpreg_report_destroy(fvpreg_report* report) { delete report; }

}  // extern "C"
