#include "fvpreg/final_data.hpp"

#include "fvpreg/errors.hpp"

namespace fvpreg {

FinalData::FinalData(SpectralField exact) : base_(std::move(exact)) {}

FinalData::FinalData(SpectralField base, SpectralField perturbation)
    : base_(std::move(base)), perturbation_(std::move(perturbation)) {
  require_same_model(base_.model(), perturbation_->model());
}

SpectralField FinalData::combined() const {
  if (!perturbation_) return base_;
  return base_ + *perturbation_;
}

double FinalData::noise_norm() const { return perturbation_ ? l2_norm(*perturbation_) : 0.0; }

}  // namespace fvpreg
