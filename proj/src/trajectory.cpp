#include "fvpreg/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fvpreg/errors.hpp"

namespace fvpreg {

TimeGrid::TimeGrid(double tau, std::size_t n_steps) : tau_(tau), n_steps_(n_steps) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ContractError("final time tau must be positive");
  if (n_steps < 1) throw ContractError("time grid needs at least one step");
}

double TimeGrid::time(std::size_t i) const {
  if (i > n_steps_) throw RangeError("grid index " + std::to_string(i) + " out of range");
  if (i == n_steps_) return tau_;
  return tau_ * static_cast<double>(i) / static_cast<double>(n_steps_);
}

std::optional<std::size_t> TimeGrid::index_of(double t) const {
  if (!(t >= -1e-12 * tau_ && t <= tau_ * (1.0 + 1e-12))) return std::nullopt;
  const double pos = t / step();
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) > 1e-9) return std::nullopt;
  return static_cast<std::size_t>(std::clamp(nearest, 0.0, static_cast<double>(n_steps_)));
}

Trajectory::Trajectory(TimeGrid grid, ModelPtr model)
    : grid_(grid), model_(std::move(model)) {
  if (!model_) throw ContractError("trajectory needs a model");
  modes_ = model_->mode_count();
  data_.assign(grid_.size() * modes_, 0.0);
}

std::span<const double> Trajectory::state(std::size_t i) const {
  if (i >= grid_.size()) throw RangeError("grid index out of range");
  return std::span<const double>(data_).subspan(i * modes_, modes_);
}

std::span<double> Trajectory::state(std::size_t i) {
  if (i >= grid_.size()) throw RangeError("grid index out of range");
  return std::span<double>(data_).subspan(i * modes_, modes_);
}

SpectralField Trajectory::field(std::size_t i) const {
  const auto s = state(i);
  return SpectralField(model_, std::vector<double>(s.begin(), s.end()));
}

void Trajectory::set_state(std::size_t i, const SpectralField& f) {
  require_same_model(*model_, f.model());
  std::ranges::copy(f.coeffs(), state(i).begin());
}

std::vector<double> Trajectory::mode_series(std::size_t j) const {
  if (j < 1 || j > modes_) throw RangeError("mode index out of range");
  std::vector<double> out(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * modes_ + (j - 1)];
  return out;
}

double Trajectory::norm_at(std::size_t i) const { return l2_norm(state(i)); }

double Trajectory::sup_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) m = std::max(m, norm_at(i));
  return m;
}

bool operator==(const Trajectory& a, const Trajectory& b) {
  return a.grid_ == b.grid_ && a.model_->same_as(*b.model_) && a.data_ == b.data_;
}

double distance_at(const Trajectory& a, const Trajectory& b, std::size_t i) {
  require_same_model(a.model(), b.model());
  if (!(a.grid() == b.grid())) throw ContractError("trajectories live on different grids");
  const auto sa = a.state(i);
  const auto sb = b.state(i);
  std::vector<double> diff(sa.size());
  for (std::size_t k = 0; k < sa.size(); ++k) diff[k] = sa[k] - sb[k];
  return l2_norm(diff);
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.grid().size(); ++i) m = std::max(m, distance_at(a, b, i));
  return m;
}

}  // namespace fvpreg
