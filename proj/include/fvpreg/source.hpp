#pragma once

#include <functional>
#include <span>
#include <string>

namespace fvpreg {

/// Source term F(t, u) acting on coefficient vectors, Lipschitz in u with
/// constant kappa (in the L^2 / l^2 norm).
class SourceFunction {
 public:
  enum class Kind { zero, linear, sine, custom };

  /// Signature of user-supplied sources: out = F(t, u), both of length M.
  using Callback = std::function<void(double t, std::span<const double> u, std::span<double> out)>;

  static SourceFunction zero();
  /// F(t,u) = c u, kappa = |c|.
  static SourceFunction linear(double c);
  /// Coefficient-wise u_j -> sin(u_j), kappa = 1.
  static SourceFunction sine();
  /// The caller vouches for the Lipschitz constant.
  static SourceFunction custom(std::string name, double kappa, Callback fn);

  Kind kind() const noexcept { return kind_; }
  double kappa() const noexcept { return kappa_; }
  /// Only meaningful for Kind::linear.
  double coefficient() const noexcept { return c_; }
  const std::string& name() const noexcept { return name_; }
  bool is_linear() const noexcept { return kind_ == Kind::zero || kind_ == Kind::linear; }

  void apply(double t, std::span<const double> u, std::span<double> out) const;

 private:
  SourceFunction(Kind kind, double c, double kappa, std::string name, Callback fn = {});

  Kind kind_;
  double c_;
  double kappa_;
  std::string name_;
  Callback fn_;
};

}  // namespace fvpreg
