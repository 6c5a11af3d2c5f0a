#pragma once

#include <cstddef>

#include "fvpreg/spectral.hpp"

namespace fvpreg {

enum class ChoiceRegime { log_rule, holder_rule };

struct ChoiceInputs {
  ChoiceRegime regime = ChoiceRegime::holder_rule;
  /// Power index of the log rule.
  double p = 0.0;
  /// Exponential index of the Hoelder rule.
  double q = 0.0;
  double rho = 1.0;
  double delta = 0.0;
  double t = 0.0;
  double tau = 1.0;
  int d = 1;
  double e1 = 1.0;
  double e2 = 1.0;

  /// e1 t + e2 (tau - t).
  double eta() const { return e1 * t + e2 * (tau - t); }

  /// Copies d, e1 and e2 from the model.
  static ChoiceInputs for_model(const EigenModel& model, ChoiceRegime regime, double index,
                                double rho, double delta, double t, double tau);
};

struct ChoiceResult {
  std::size_t N = 1;
  /// r before flooring.
  double raw = 0.0;
  /// The floor was 0 and N was raised to 1.
  bool clamped = false;
};

/// r = (L/eta - (p/eta) ln(L/eta))^{d/2} with L = ln(rho/delta).
/// NoiseTooLargeError when the bracket is not positive.
ChoiceResult choose_N_log(const ChoiceInputs& in);

/// r = (L / (e1 (q+t) + e2 (tau-t)))^{d/2}.
ChoiceResult choose_N_holder(const ChoiceInputs& in);

/// Dispatches on in.regime.
ChoiceResult choose_N(const ChoiceInputs& in);

/// zeta(s) = s^b (d ln(1/s))^{-c} for 0 < s < 1.
double zeta(double s, double b, double c, double d);

struct ZetaInverse {
  /// Root of zeta(y) = s on (0, a], bisected in log space.
  double bisection = 0.0;
  /// s^{1/b} ((d/b) ln(1/s))^{c/b}.
  double asymptotic = 0.0;
};

/// NoRootError when s is not attained on (0, a]; ContractError unless
/// 0 < a < 1, b, d > 0 and c >= 0.
ZetaInverse zeta_inverse(double s, double b, double c, double d, double a = 0.5);

}  // namespace fvpreg
