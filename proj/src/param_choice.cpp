#include "fvpreg/param_choice.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fvpreg/errors.hpp"

namespace fvpreg {
namespace {

void check_common(const ChoiceInputs& in) {
  if (!(in.delta > 0.0)) throw ContractError("delta must be positive");
  if (!(in.rho > 0.0)) throw ContractError("rho must be positive");
  if (!(in.delta < in.rho)) throw ContractError("the rules need delta < rho");
  if (!(in.tau > 0.0)) throw ContractError("tau must be positive");
  if (!(in.t >= 0.0 && in.t <= in.tau)) throw ContractError("t must lie in [0, tau]");
  if (in.d < 1) throw ContractError("dimension must be positive");
  if (!(in.e1 > 0.0) || !(in.e2 > 0.0)) throw ContractError("e1 and e2 must be positive");
}

ChoiceResult finish(double base, int d) {
  ChoiceResult r;
  r.raw = std::pow(base, 0.5 * d);
  const double fl = std::floor(std::min(r.raw, 1e15));
  r.clamped = fl < 1.0;
  r.N = r.clamped ? 1 : static_cast<std::size_t>(fl);
  return r;
}

double log_zeta(double y, double b, double c, double d) {
  return b * std::log(y) - c * std::log(d * -std::log(y));
}

}  // namespace

ChoiceInputs ChoiceInputs::for_model(const EigenModel& model, ChoiceRegime regime, double index,
                                     double rho, double delta, double t, double tau) {
  ChoiceInputs in;
  in.regime = regime;
  (regime == ChoiceRegime::log_rule ? in.p : in.q) = index;
  in.rho = rho;
  in.delta = delta;
  in.t = t;
  in.tau = tau;
  in.d = model.dimension();
  in.e1 = model.e1();
  in.e2 = model.e2();
  return in;
}

ChoiceResult choose_N_log(const ChoiceInputs& in) {
  check_common(in);
  if (!(in.p >= 0.0)) throw ContractError("p must be non-negative");
  const double eta = in.eta();
  const double L = std::log(in.rho / in.delta) / eta;
  const double base = L - (in.p / eta) * std::log(L);
  if (!(base > 0.0))
    throw NoiseTooLargeError("delta = " + std::to_string(in.delta) +
                             " is too large for the logarithmic rule");
  return finish(base, in.d);
}

ChoiceResult choose_N_holder(const ChoiceInputs& in) {
  check_common(in);
  if (!(in.q >= 0.0)) throw ContractError("q must be non-negative");
  const double denom = in.e1 * (in.q + in.t) + in.e2 * (in.tau - in.t);
  return finish(std::log(in.rho / in.delta) / denom, in.d);
}

ChoiceResult choose_N(const ChoiceInputs& in) {
  return in.regime == ChoiceRegime::log_rule ? choose_N_log(in) : choose_N_holder(in);
}

double zeta(double s, double b, double c, double d) {
  if (!(s > 0.0 && s < 1.0)) throw ContractError("zeta is defined for 0 < s < 1");
  return std::exp(log_zeta(s, b, c, d));
}

ZetaInverse zeta_inverse(double s, double b, double c, double d, double a) {
  if (!(a > 0.0 && a < 1.0)) throw ContractError("the bracket end a must lie in (0, 1)");
  if (!(b > 0.0) || !(d > 0.0) || !(c >= 0.0)) throw ContractError("need b, d > 0 and c >= 0");
  if (!(s > 0.0)) throw ContractError("s must be positive");

  const double target = std::log(s);
  double hi = std::log(a);
  if (log_zeta(a, b, c, d) < target)
    throw NoRootError("s = " + std::to_string(s) + " exceeds zeta(a)");
  double lo = hi;
  constexpr double kLowest = -700.0;
  while (log_zeta(std::exp(lo), b, c, d) > target) {
    hi = lo;
    lo = std::max(2.0 * lo, kLowest);
    if (lo == kLowest && log_zeta(std::exp(lo), b, c, d) > target)
      throw NoRootError("zeta does not reach s = " + std::to_string(s) + " above e^-700");
  }
  // log zeta is increasing in log y; bisect on log y.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (log_zeta(std::exp(mid), b, c, d) < target ? lo : hi) = mid;
  }
  ZetaInverse r;
  r.bisection = std::exp(0.5 * (lo + hi));
  r.asymptotic = std::pow(s, 1.0 / b) * std::pow((d / b) * std::log(1.0 / s), c / b);
  return r;
}

}  // namespace fvpreg
