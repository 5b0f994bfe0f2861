#pragma once

#include <cstdint>
#include <limits>
#include <span>

#include "papr_shaper/ofdm.hpp"

namespace papr {

/// Passing this as ebn0_db bypasses the noise entirely.
inline constexpr double kNoiselessEbN0 = std::numeric_limits<double>::infinity();

/// Stable 64-bit mix (splitmix64 finalizer over both words).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Adds circular complex Gaussian noise calibrated against the energy of `w`:
///   Eb = sum |w[i]|^2 dt / frame_bits,  N0 = Eb 10^(-ebn0_db / 10),
/// with variance N0 / (2 dt) per real dimension. Deterministic in `seed`.
/// Throws Precondition for frame_bits == 0, DegenerateSignal for zero energy.
SampledWaveform awgn(const SampledWaveform& w, double ebn0_db, std::size_t frame_bits,
                     std::uint64_t seed);

/// In-place form used by the simulation loop.
void add_awgn(std::span<cplx> samples, double dt, double ebn0_db, std::size_t frame_bits,
              std::uint64_t seed);

}  // namespace papr
