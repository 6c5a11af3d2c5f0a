#pragma once

#include <cstddef>
#include <cstdint>

#include "fvpreg/final_data.hpp"
#include "fvpreg/spectral.hpp"

namespace fvpreg {

enum class NoiseDirection { worst_case_mode, seeded_random };

struct NoiseSpec {
  NoiseDirection direction = NoiseDirection::worst_case_mode;
  /// Mode used by worst_case_mode (normally the truncation level N).
  std::size_t mode = 1;
  std::uint64_t seed = 0;
};

/// Unit-norm direction e: phi_mode, or mt19937_64 draws in [-1, 1) over all
/// M modes, normalized.
SpectralField noise_direction(const ModelPtr& model, const NoiseSpec& spec);

/// g^delta = g + delta e, with the perturbation kept separate so that
/// ||g^delta - g|| = delta to rounding. delta = 0 returns g untouched.
FinalData add_noise(const SpectralField& g, double delta, const NoiseSpec& spec);

}  // namespace fvpreg
