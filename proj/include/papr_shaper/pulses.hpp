#pragma once

// Subcarrier pulse shapes on a one-symbol sampling grid. Time is normalized
// so that the symbol duration T is the natural unit; frequencies are in 1/T.

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace papr {

enum class PulseFamily { Rect, SinePower, TaperedFlatTop, TruncatedSinc };

std::string_view family_name(PulseFamily family);
std::optional<PulseFamily> parse_family(std::string_view name);

/// Shape parameters are read only by the family that uses them:
/// shape_n by SinePower, taper_alpha by TaperedFlatTop, bandwidth_factor by
/// TruncatedSinc. The others are ignored.
struct PulseDescriptor {
  PulseFamily family = PulseFamily::Rect;
  unsigned shape_n = 0;           // sin^n(pi t / T); n = 0 is Rect
  double taper_alpha = 0.5;       // fraction of T spent in the two tapers
  double bandwidth_factor = 2.0;  // sinc bandwidth W in units of 1/T
  bool normalize_energy = false;

  friend bool operator==(const PulseDescriptor&, const PulseDescriptor&) = default;
};

/// Left-closed grid t_i = i * T / S, i = 0..S-1.
struct SamplingGrid {
  double symbol_duration = 1.0;
  std::size_t samples_per_symbol = 0;

  double dt() const { return symbol_duration / static_cast<double>(samples_per_symbol); }
  double time(std::size_t i) const { return static_cast<double>(i) * dt(); }
};

struct SampledPulse {
  std::vector<double> samples;
  double dt = 0.0;
  PulseDescriptor descriptor;

  double duration() const { return dt * static_cast<double>(samples.size()); }
};

/// Samples `desc` on `grid` and energy-normalizes it when the descriptor
/// asks for it. Throws InvalidDescriptor on out-of-range or non-finite
/// parameters, and on an invalid grid.
SampledPulse sample_pulse(const PulseDescriptor& desc, const SamplingGrid& grid);

/// sum p[i]^2 * dt
double pulse_energy(const SampledPulse& p);

/// Unit-energy copy of `p`. Throws DegeneratePulse for a zero pulse.
SampledPulse normalize_pulse(const SampledPulse& p);

struct SpectrumCurve {
  std::vector<double> freq;                   // units of 1/T
  std::vector<std::complex<double>> pulse;    // P(f)
  std::vector<std::complex<double>> squared;  // transform of p^2
};

/// Direct evaluation of P(f) = sum p[i] e^{-j 2 pi f t_i} dt (and of the
/// same transform for p^2) at n_points uniform frequencies on [0, f_max].
SpectrumCurve pulse_spectrum(const SampledPulse& p, double f_max, std::size_t n_points);

/// sum_i w[i] e^{-j 2 pi f t_i} dt for a real sequence spanning one symbol,
/// f in units of 1/T.
std::complex<double> real_transform(const std::vector<double>& w, double dt, double f);

/// Uniform grid of n_points frequencies over [0, f_max], endpoints included.
std::vector<double> frequency_grid(double f_max, std::size_t n_points);

}  // namespace papr
