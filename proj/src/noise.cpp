#include "fvpreg/noise.hpp"

#include <cmath>
#include <random>

#include "fvpreg/errors.hpp"

namespace fvpreg {

SpectralField noise_direction(const ModelPtr& model, const NoiseSpec& spec) {
  if (!model) throw ContractError("noise direction needs a model");
  if (spec.direction == NoiseDirection::worst_case_mode) return SpectralField::basis(model, spec.mode);

  std::mt19937_64 rng(spec.seed);
  std::vector<double> c(model->mode_count());
  double norm = 0.0;
  while (norm == 0.0) {
    for (double& x : c) x = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
    norm = l2_norm(c);
  }
  for (double& x : c) x /= norm;
  return SpectralField(model, std::move(c));
}

FinalData add_noise(const SpectralField& g, double delta, const NoiseSpec& spec) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ContractError("delta must be finite and >= 0");
  if (delta == 0.0) return FinalData(g);
  SpectralField e = noise_direction(g.model_ptr(), spec);
  require_same_model(g.model(), e.model());
  e *= delta;
  return FinalData(g, std::move(e));
}

}  // namespace fvpreg
