#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fvpreg {

/// Largest x with exp(x) finite in double precision.
inline constexpr double kMaxExpArgument = 709.782712893384;

/// Dirichlet eigenvalue model: a finite, non-decreasing sequence of positive
/// eigenvalues together with growth constants e1, e2 such that
/// e1 j^{2/d} <= lambda_j <= e2 j^{2/d} for every stored j.
///
/// The built-in model is the unit interval, lambda_j = j^2 pi^2 with
/// eigenfunctions sqrt(2) sin(j pi x). Custom models carry eigenvalues only;
/// spatial evaluation is unavailable for them.
class EigenModel {
 public:
  /// Omega = (0,1), lambda_j = j^2 pi^2, e1 = e2 = pi^2.
  static std::shared_ptr<const EigenModel> unit_interval(std::size_t mode_count = 64);

  /// User-supplied eigenvalues for a d-dimensional domain. Throws
  /// ContractError if the sequence is not positive and non-decreasing or
  /// violates the e1/e2 growth bounds.
  static std::shared_ptr<const EigenModel> from_eigenvalues(int dimension,
                                                           std::vector<double> eigenvalues,
                                                           double e1, double e2);

  int dimension() const noexcept { return dimension_; }
  std::size_t mode_count() const noexcept { return lambda_.size(); }

  /// lambda_j for 1 <= j <= mode_count(); RangeError otherwise.
  double eigenvalue(std::size_t j) const;
  std::span<const double> eigenvalues() const noexcept { return lambda_; }

  double e1() const noexcept { return e1_; }
  double e2() const noexcept { return e2_; }
  bool is_unit_interval() const noexcept { return unit_interval_; }

  /// Value equality: same dimension and identical eigenvalue sequence.
  bool same_as(const EigenModel& other) const noexcept;

 private:
  EigenModel(int dimension, std::vector<double> eigenvalues, double e1, double e2,
             bool unit_interval);

  int dimension_;
  std::vector<double> lambda_;
  double e1_;
  double e2_;
  bool unit_interval_;
};

using ModelPtr = std::shared_ptr<const EigenModel>;

/// Weights of the Gevrey space G_{p,q}: norm^2 = sum lambda_j^{2p} e^{2 q lambda_j} c_j^2.
struct GevreyParams {
  double p = 0.0;
  double q = 0.0;
};

/// Coefficients <psi, phi_j>, j = 1..M, of an L^2 function against the
/// orthonormal eigenbasis of one EigenModel. Storage is 0-based: coeffs()[j-1]
/// holds mode j.
class SpectralField {
 public:
  explicit SpectralField(ModelPtr model);
  /// Shorter coefficient vectors are zero-padded to mode_count().
  SpectralField(ModelPtr model, std::vector<double> coeffs);

  /// phi_j itself.
  static SpectralField basis(ModelPtr model, std::size_t j);

  const EigenModel& model() const noexcept { return *model_; }
  const ModelPtr& model_ptr() const noexcept { return model_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs() noexcept { return coeffs_; }

  /// 1-based mode access.
  double coeff(std::size_t j) const;

  SpectralField& operator+=(const SpectralField& rhs);
  SpectralField& operator-=(const SpectralField& rhs);
  SpectralField& operator*=(double s) noexcept;

  friend SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
  friend SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
  friend SpectralField operator*(double s, SpectralField f) { return f *= s; }

  /// Bitwise coefficient equality over the same model.
  friend bool operator==(const SpectralField& a, const SpectralField& b);

 private:
  ModelPtr model_;
  std::vector<double> coeffs_;
};

/// Throws ModelMismatchError unless both models describe the same basis.
void require_same_model(const EigenModel& a, const EigenModel& b);

/// sqrt(sum c_j^2), Parseval over the orthonormal basis.
double l2_norm(const SpectralField& psi);
double l2_norm(std::span<const double> coeffs);

/// Gevrey norm. Throws OverflowError (naming the mode) when a term with
/// c_j != 0 leaves the double range; never returns infinity.
double gevrey_norm(const SpectralField& psi, const GevreyParams& gp);

/// phi_j(x) = sqrt(2) sin(j pi x) on the unit interval.
double basis_function(std::size_t j, double x);

/// sum_j c_j phi_j(x) at every x. Unit-interval model only
/// (UnsupportedDomainError otherwise); x outside [0,1] is a ContractError.
std::vector<double> evaluate_on_grid(const SpectralField& psi, std::span<const double> x_points);

}  // namespace fvpreg
