#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fvpreg/spectral.hpp"

namespace fvpreg {

/// Uniform grid t_i = i tau / n_steps on [0, tau].
class TimeGrid {
 public:
  TimeGrid(double tau, std::size_t n_steps);

  double tau() const noexcept { return tau_; }
  std::size_t n_steps() const noexcept { return n_steps_; }
  std::size_t size() const noexcept { return n_steps_ + 1; }
  double step() const noexcept { return tau_ / static_cast<double>(n_steps_); }

  /// t_i; the last point is tau exactly.
  double time(std::size_t i) const;

  /// Index of the grid point equal to t (within a relative 1e-9 of the step),
  /// or nullopt when t is not a grid point.
  std::optional<std::size_t> index_of(double t) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double tau_;
  std::size_t n_steps_;
};

/// One SpectralField per grid point, stored time-major. Between grid points
/// the trajectory is interpreted through the same local interpolant the
/// kernel quadrature uses.
class Trajectory {
 public:
  Trajectory(TimeGrid grid, ModelPtr model);

  const TimeGrid& grid() const noexcept { return grid_; }
  const EigenModel& model() const noexcept { return *model_; }
  const ModelPtr& model_ptr() const noexcept { return model_; }
  std::size_t mode_count() const noexcept { return modes_; }

  std::span<const double> state(std::size_t i) const;
  std::span<double> state(std::size_t i);
  SpectralField field(std::size_t i) const;
  void set_state(std::size_t i, const SpectralField& f);

  /// Coefficient of mode j (1-based) at every grid point.
  std::vector<double> mode_series(std::size_t j) const;

  double norm_at(std::size_t i) const;
  /// max_i ||v(t_i)||, the discrete C([0,tau]; L^2) norm.
  double sup_norm() const;

  std::span<const double> raw() const noexcept { return data_; }
  std::span<double> raw() noexcept { return data_; }

  friend bool operator==(const Trajectory& a, const Trajectory& b);

 private:
  TimeGrid grid_;
  ModelPtr model_;
  std::size_t modes_;
  std::vector<double> data_;
};

/// sup over the common grid of ||a(t_i) - b(t_i)||.
double sup_distance(const Trajectory& a, const Trajectory& b);

/// ||a(t_i) - b(t_i)|| at one grid index.
double distance_at(const Trajectory& a, const Trajectory& b, std::size_t i);

}  // namespace fvpreg
