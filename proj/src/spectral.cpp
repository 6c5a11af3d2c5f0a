#include "fvpreg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fvpreg/errors.hpp"

namespace fvpreg {

EigenModel::EigenModel(int dimension, std::vector<double> eigenvalues, double e1, double e2,
                       bool unit_interval)
    : dimension_(dimension),
      lambda_(std::move(eigenvalues)),
      e1_(e1),
      e2_(e2),
      unit_interval_(unit_interval) {}

ModelPtr EigenModel::unit_interval(std::size_t mode_count) {
  if (mode_count == 0) throw ContractError("eigen-model needs at least one mode");
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  std::vector<double> lambda(mode_count);
  for (std::size_t j = 1; j <= mode_count; ++j) {
    const auto jj = static_cast<double>(j * j);
    lambda[j - 1] = jj * pi2;
  }
  return ModelPtr(new EigenModel(1, std::move(lambda), pi2, pi2, true));
}

ModelPtr EigenModel::from_eigenvalues(int dimension, std::vector<double> eigenvalues, double e1,
                                      double e2) {
  if (dimension < 1) throw ContractError("dimension must be positive");
  if (eigenvalues.empty()) throw ContractError("eigen-model needs at least one mode");
  if (!(e1 > 0.0) || !(e2 >= e1)) throw ContractError("growth bounds need 0 < e1 <= e2");
  for (std::size_t j = 1; j <= eigenvalues.size(); ++j) {
    const double lam = eigenvalues[j - 1];
    if (!std::isfinite(lam) || !(lam > 0.0))
      throw ContractError("eigenvalue " + std::to_string(j) + " is not positive and finite");
    if (j > 1 && lam < eigenvalues[j - 2])
      throw ContractError("eigenvalues must be non-decreasing (mode " + std::to_string(j) + ")");
    const double growth = std::pow(static_cast<double>(j), 2.0 / dimension);
    const double slack = 1e-12 * lam;
    if (lam < e1 * growth - slack || lam > e2 * growth + slack)
      throw ContractError("eigenvalue " + std::to_string(j) +
                          " violates e1 j^{2/d} <= lambda_j <= e2 j^{2/d}");
  }
  return ModelPtr(new EigenModel(dimension, std::move(eigenvalues), e1, e2, false));
}

double EigenModel::eigenvalue(std::size_t j) const {
  if (j < 1 || j > lambda_.size())
    throw RangeError("mode index " + std::to_string(j) + " outside 1.." +
                     std::to_string(lambda_.size()));
  return lambda_[j - 1];
}

bool EigenModel::same_as(const EigenModel& other) const noexcept {
  if (this == &other) return true;
  return dimension_ == other.dimension_ && lambda_ == other.lambda_;
}

void require_same_model(const EigenModel& a, const EigenModel& b) {
  if (!a.same_as(b)) throw ModelMismatchError("fields belong to different eigen-models");
}

SpectralField::SpectralField(ModelPtr model) : model_(std::move(model)) {
  if (!model_) throw ContractError("spectral field needs a model");
  coeffs_.assign(model_->mode_count(), 0.0);
}

SpectralField::SpectralField(ModelPtr model, std::vector<double> coeffs)
    : model_(std::move(model)), coeffs_(std::move(coeffs)) {
  if (!model_) throw ContractError("spectral field needs a model");
  if (coeffs_.size() > model_->mode_count())
    throw RangeError("coefficient vector longer than the model's mode count");
  coeffs_.resize(model_->mode_count(), 0.0);
}

SpectralField SpectralField::basis(ModelPtr model, std::size_t j) {
  SpectralField f(std::move(model));
  if (j < 1 || j > f.size()) throw RangeError("basis index " + std::to_string(j) + " out of range");
  f.coeffs_[j - 1] = 1.0;
  return f;
}

double SpectralField::coeff(std::size_t j) const {
  if (j < 1 || j > coeffs_.size()) throw RangeError("mode index " + std::to_string(j) + " out of range");
  return coeffs_[j - 1];
}

SpectralField& SpectralField::operator+=(const SpectralField& rhs) {
  require_same_model(*model_, *rhs.model_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& rhs) {
  require_same_model(*model_, *rhs.model_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) noexcept {
  for (double& c : coeffs_) c *= s;
  return *this;
}

bool operator==(const SpectralField& a, const SpectralField& b) {
  return a.model_->same_as(*b.model_) && a.coeffs_ == b.coeffs_;
}

double l2_norm(std::span<const double> coeffs) {
  // Scaled accumulation so that huge or tiny coefficients do not over/underflow.
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (double c : coeffs) {
    const double r = c / scale;
    sum += r * r;
  }
  return scale * std::sqrt(sum);
}

double l2_norm(const SpectralField& psi) { return l2_norm(psi.coeffs()); }

double gevrey_norm(const SpectralField& psi, const GevreyParams& gp) {
  if (gp.p < 0.0 || gp.q < 0.0) throw ContractError("Gevrey parameters must be non-negative");
  const auto lambda = psi.model().eigenvalues();
  const auto c = psi.coeffs();

  // Work with log(lambda^p e^{q lambda} |c|) so the weights never overflow on
  // their own; only a genuinely unrepresentable term is reported.
  std::vector<double> log_terms;
  log_terms.reserve(c.size());
  double log_max = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0.0) continue;
    const double lt = gp.p * std::log(lambda[j]) + gp.q * lambda[j] + std::log(std::abs(c[j]));
    if (lt > kMaxExpArgument)
      throw OverflowError("Gevrey weight of mode " + std::to_string(j + 1) +
                              " exceeds the double range",
                          j + 1);
    log_terms.push_back(lt);
    log_max = std::max(log_max, lt);
  }
  if (log_terms.empty()) return 0.0;
  double sum = 0.0;
  for (double lt : log_terms) sum += std::exp(2.0 * (lt - log_max));
  const double log_norm = log_max + 0.5 * std::log(sum);
  if (log_norm > kMaxExpArgument)
    throw OverflowError("Gevrey norm exceeds the double range");
  return std::exp(log_norm);
}

double basis_function(std::size_t j, double x) {
  return std::numbers::sqrt2 * std::sin(static_cast<double>(j) * std::numbers::pi * x);
}

std::vector<double> evaluate_on_grid(const SpectralField& psi, std::span<const double> x_points) {
  if (!psi.model().is_unit_interval())
    throw UnsupportedDomainError("spatial evaluation is only available on the unit interval");
  std::vector<double> out;
  out.reserve(x_points.size());
  const auto c = psi.coeffs();
  for (double x : x_points) {
    if (!(x >= 0.0 && x <= 1.0)) throw ContractError("evaluation point outside [0,1]");
    // Dirichlet boundary is exact, not sin(pi) ~ 1e-16.
    if (x == 0.0 || x == 1.0) {
      out.push_back(0.0);
      continue;
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0.0) sum += c[j] * basis_function(j + 1, x);
    out.push_back(sum);
  }
  return out;
}

}  // namespace fvpreg
