#include "papr_shaper/pulses.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "papr_shaper/error.hpp"

namespace papr {
namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

void validate(const PulseDescriptor& d, const SamplingGrid& g) {
  if (!std::isfinite(g.symbol_duration) || g.symbol_duration <= 0.0)
    throw Error(ErrorKind::InvalidDescriptor, "symbol duration must be finite and > 0");
  if (g.samples_per_symbol == 0)
    throw Error(ErrorKind::InvalidDescriptor, "samples_per_symbol must be > 0");
  switch (d.family) {
    case PulseFamily::TaperedFlatTop:
      if (!std::isfinite(d.taper_alpha) || d.taper_alpha < 0.0 || d.taper_alpha > 1.0)
        throw Error(ErrorKind::InvalidDescriptor, "taper_alpha must lie in [0, 1]");
      break;
    case PulseFamily::TruncatedSinc:
      if (!std::isfinite(d.bandwidth_factor) || d.bandwidth_factor <= 0.0)
        throw Error(ErrorKind::InvalidDescriptor, "bandwidth_factor must be finite and > 0");
      break;
    case PulseFamily::Rect:
    case PulseFamily::SinePower:
      break;
  }
}

double taper_value(double t, double T, double alpha) {
  const double edge = 0.5 * alpha * T;
  if (edge <= 0.0) return 1.0;
  const double from_edge = std::min(t, T - t);
  if (from_edge >= edge) return 1.0;
  return 0.5 * (1.0 - std::cos(kPi * from_edge / edge));
}

}  // namespace

std::string_view family_name(PulseFamily family) {
  switch (family) {
    case PulseFamily::Rect: return "rect";
    case PulseFamily::SinePower: return "sine";
    case PulseFamily::TaperedFlatTop: return "taper";
    case PulseFamily::TruncatedSinc: return "sinc";
  }
  return "unknown";
}

std::optional<PulseFamily> parse_family(std::string_view name) {
  if (name == "rect") return PulseFamily::Rect;
  if (name == "sine") return PulseFamily::SinePower;
  if (name == "taper") return PulseFamily::TaperedFlatTop;
  if (name == "sinc") return PulseFamily::TruncatedSinc;
  return std::nullopt;
}

SampledPulse sample_pulse(const PulseDescriptor& desc, const SamplingGrid& grid) {
  validate(desc, grid);
  const std::size_t S = grid.samples_per_symbol;
  const double T = grid.symbol_duration;

  SampledPulse out;
  out.dt = grid.dt();
  out.descriptor = desc;
  out.samples.resize(S);
  for (std::size_t i = 0; i < S; ++i) {
    double v = 1.0;
    switch (desc.family) {
      case PulseFamily::Rect:
        break;
      case PulseFamily::SinePower:
        // sin(pi i / S) evaluated from the index keeps the mirror pairs
        // i, S - i bit-identical.
        v = desc.shape_n == 0
                ? 1.0
                : std::pow(std::sin(kPi * static_cast<double>(std::min(i, S - i)) /
                                    static_cast<double>(S)),
                           static_cast<double>(desc.shape_n));
        break;
      case PulseFamily::TaperedFlatTop:
        v = taper_value(T * static_cast<double>(std::min(i, S - i)) / static_cast<double>(S),
                        T, desc.taper_alpha);
        break;
      case PulseFamily::TruncatedSinc:
        // t - T/2 from the index so that p[i] == p[S - i] exactly.
        v = sinc(desc.bandwidth_factor * (2.0 * static_cast<double>(i) - static_cast<double>(S)) /
                 static_cast<double>(S));
        break;
    }
    out.samples[i] = v;
  }
  if (desc.normalize_energy) return normalize_pulse(out);
  return out;
}

double pulse_energy(const SampledPulse& p) {
  double e = 0.0;
  for (double v : p.samples) e += v * v;
  return e * p.dt;
}

SampledPulse normalize_pulse(const SampledPulse& p) {
  const double e = pulse_energy(p);
  if (!(e > 0.0) || !std::isfinite(e))
    throw Error(ErrorKind::DegeneratePulse, "cannot normalize a zero-energy pulse");
  SampledPulse out = p;
  const double scale = 1.0 / std::sqrt(e);
  for (double& v : out.samples) v *= scale;
  return out;
}

std::vector<double> frequency_grid(double f_max, std::size_t n_points) {
  std::vector<double> f(n_points, 0.0);
  if (n_points < 2) return f;
  const double step = f_max / static_cast<double>(n_points - 1);
  for (std::size_t j = 0; j < n_points; ++j) f[j] = step * static_cast<double>(j);
  f.back() = f_max;
  return f;
}

std::complex<double> real_transform(const std::vector<double>& w, double dt, double f) {
  // Phasor recurrence would drift over long grids; evaluate each term.
  const double n = static_cast<double>(w.size());
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double phase = -2.0 * kPi * f * static_cast<double>(i) / n;
    re += w[i] * std::cos(phase);
    im += w[i] * std::sin(phase);
  }
  return {re * dt, im * dt};
}

SpectrumCurve pulse_spectrum(const SampledPulse& p, double f_max, std::size_t n_points) {
  if (!(f_max > 0.0) || !std::isfinite(f_max))
    throw Error(ErrorKind::Precondition, "f_max must be finite and > 0");
  if (n_points == 0) throw Error(ErrorKind::Precondition, "n_points must be > 0");

  std::vector<double> sq(p.samples.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = p.samples[i] * p.samples[i];

  SpectrumCurve c;
  c.freq = frequency_grid(f_max, n_points);
  c.pulse.reserve(n_points);
  c.squared.reserve(n_points);
  for (double f : c.freq) {
    c.pulse.push_back(real_transform(p.samples, p.dt, f));
    c.squared.push_back(real_transform(sq, p.dt, f));
  }
  return c;
}

}  // namespace papr
