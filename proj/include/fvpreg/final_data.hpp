#pragma once

#include <optional>

#include "fvpreg/spectral.hpp"

namespace fvpreg {

/// Final-time data g^delta held as the exact part plus an optional additive
/// perturbation. Keeping the two apart means ||g^delta - g|| is exactly the
/// perturbation norm even when delta is far below the rounding level of g,
/// and the solver applies S_N to each part separately.
class FinalData {
 public:
  FinalData(SpectralField exact);  // NOLINT(google-explicit-constructor)
  FinalData(SpectralField base, SpectralField perturbation);

  const SpectralField& base() const noexcept { return base_; }
  const std::optional<SpectralField>& perturbation() const noexcept { return perturbation_; }
  const EigenModel& model() const noexcept { return base_.model(); }
  const ModelPtr& model_ptr() const noexcept { return base_.model_ptr(); }

  /// base + perturbation, rounded to one field.
  SpectralField combined() const;

  /// ||g^delta - g||, i.e. the perturbation norm (0 without perturbation).
  double noise_norm() const;

 private:
  SpectralField base_;
  std::optional<SpectralField> perturbation_;
};

}  // namespace fvpreg
