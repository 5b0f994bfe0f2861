#include <cmath>
#include <limits>
#include <numbers>

#include "papr_shaper/analysis.hpp"

namespace papr {

XcorrCurve xcorr_curve(const PulseDescriptor& desc, const SamplingGrid& grid, double f_max,
                       std::size_t n_points) {
  if (!(f_max >= 1.0) || !std::isfinite(f_max))
    throw Error(ErrorKind::Precondition, "xcorr curve needs f_max >= 1/T");
  if (n_points < 2) throw Error(ErrorKind::Precondition, "xcorr curve needs n_points >= 2");

  const SampledPulse p = sample_pulse(desc, grid);
  const double energy = pulse_energy(p);
  if (!(energy > 0.0)) throw Error(ErrorKind::DegeneratePulse, "zero-energy pulse");

  std::vector<double> sq(p.samples.size());
  double moment = 0.0;
  for (std::size_t i = 0; i < sq.size(); ++i) {
    sq[i] = p.samples[i] * p.samples[i];
    moment += sq[i] * static_cast<double>(i);
  }

  XcorrCurve c;
  c.center = moment / (energy / p.dt) / static_cast<double>(sq.size());
  c.freq = frequency_grid(f_max, n_points);
  c.rho.reserve(n_points);
  for (double f : c.freq) c.rho.push_back(real_transform(sq, p.dt, f) / energy);
  return c;
}

namespace {

double zero_phase(const XcorrCurve& c, std::size_t j) {
  const double phase = 2.0 * std::numbers::pi * c.freq[j] * c.center;
  return (c.rho[j] * cplx(std::cos(phase), std::sin(phase))).real();
}

double lerp_crossing(double f0, double v0, double f1, double v1, double level) {
  if (v1 == v0) return f1;
  return f0 + (level - v0) / (v1 - v0) * (f1 - f0);
}

}  // namespace

PulseMetrics pulse_metrics(const XcorrCurve& curve) {
  const std::size_t n = curve.freq.size();
  if (n < 2 || curve.rho.size() != n)
    throw Error(ErrorKind::Precondition, "xcorr curve is malformed");
  const double span = curve.freq.back() - curve.freq.front();
  if (static_cast<double>(n - 1) < kMinPointsPerUnit * span * (1.0 - 1e-12))
    throw Error(ErrorKind::Precondition, "xcorr curve needs >= 64 points per 1/T");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  PulseMetrics m{nan, nan, nan, std::nullopt};

  for (std::size_t j = 1; j < n; ++j) {
    const double p1 = std::norm(curve.rho[j]);
    if (p1 <= 0.5) {
      m.cutoff_3db =
          lerp_crossing(curve.freq[j - 1], std::norm(curve.rho[j - 1]), curve.freq[j], p1, 0.5);
      break;
    }
  }

  std::size_t null_index = n;
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs(curve.rho[j]) <= kNullThreshold) {
      m.cutoff_first_null = curve.freq[j];
      null_index = j;
      break;
    }
    const double a0 = zero_phase(curve, j - 1);
    const double a1 = zero_phase(curve, j);
    if ((a0 < 0.0) != (a1 < 0.0)) {
      m.cutoff_first_null = lerp_crossing(curve.freq[j - 1], a0, curve.freq[j], a1, 0.0);
      null_index = j;
      break;
    }
  }

  // Integer frequencies present on the grid, scanned from the top down.
  const auto top = static_cast<long>(std::floor(curve.freq.back() + 1e-9));
  const double step = span / static_cast<double>(n - 1);
  int band = -1;
  bool aligned = true;
  for (long k = top; k >= 1; --k) {
    const double pos = (static_cast<double>(k) - curve.freq.front()) / step;
    const auto j = static_cast<std::size_t>(std::llround(pos));
    if (j >= n || std::abs(curve.freq[j] - static_cast<double>(k)) > 1e-9 * static_cast<double>(k)) {
      aligned = false;
      break;
    }
    if (std::abs(curve.rho[j]) >= kNullThreshold) break;
    band = static_cast<int>(k);
  }
  if (aligned && band > 0) m.orthogonality_band = band;

  if (null_index == n)
    throw MetricsOutOfRangeError("no crosscorrelation null below f_max", m);

  double side = 0.0;
  for (std::size_t j = null_index + 1; j < n; ++j) side = std::max(side, std::norm(curve.rho[j]));
  m.peak_sidelobe_db = side > 0.0 ? 10.0 * std::log10(side)
                                  : -std::numeric_limits<double>::infinity();
  return m;
}

}  // namespace papr
