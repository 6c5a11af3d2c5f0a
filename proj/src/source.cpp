#include "fvpreg/source.hpp"

#include <algorithm>
#include <cmath>

#include "fvpreg/errors.hpp"

namespace fvpreg {

SourceFunction::SourceFunction(Kind kind, double c, double kappa, std::string name, Callback fn)
    : kind_(kind), c_(c), kappa_(kappa), name_(std::move(name)), fn_(std::move(fn)) {}

SourceFunction SourceFunction::zero() { return {Kind::zero, 0.0, 0.0, "zero"}; }

SourceFunction SourceFunction::linear(double c) {
  if (!std::isfinite(c)) throw ContractError("linear source coefficient must be finite");
  return {Kind::linear, c, std::abs(c), "linear"};
}

SourceFunction SourceFunction::sine() { return {Kind::sine, 0.0, 1.0, "sine"}; }

SourceFunction SourceFunction::custom(std::string name, double kappa, Callback fn) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ContractError("Lipschitz constant must be non-negative");
  if (!fn) throw ContractError("custom source needs a callback");
  return {Kind::custom, 0.0, kappa, std::move(name), std::move(fn)};
}

void SourceFunction::apply(double t, std::span<const double> u, std::span<double> out) const {
  if (out.size() != u.size()) throw ContractError("source output size mismatch");
  switch (kind_) {
    case Kind::zero:
      std::ranges::fill(out, 0.0);
      break;
    case Kind::linear:
      for (std::size_t j = 0; j < u.size(); ++j) out[j] = c_ * u[j];
      break;
    case Kind::sine:
      for (std::size_t j = 0; j < u.size(); ++j) out[j] = std::sin(u[j]);
      break;
    case Kind::custom:
      fn_(t, u, out);
      break;
  }
}

}  // namespace fvpreg
