#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "papr_shaper/error.hpp"
#include "papr_shaper/ofdm.hpp"
#include "papr_shaper/pulses.hpp"

namespace papr {

// ---------------------------------------------------------------------------
// Peak-to-average power
// ---------------------------------------------------------------------------

/// max |w|^2 / mean |w|^2 as a linear ratio. Throws DegenerateSignal for an
/// all-zero waveform.
double papr(std::span<const cplx> samples);
inline double papr(const SampledWaveform& w) { return papr(w.samples); }

double to_db(double linear);
double from_db(double db);

struct ExhaustiveSearch {};
struct RandomSearch {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
};
struct CoherentBound {};
using MaxPaprMethod = std::variant<ExhaustiveSearch, RandomSearch, CoherentBound>;

/// Exhaustive search is capped at this many frames (M^N).
inline constexpr std::size_t kExhaustiveCap = std::size_t{1} << 16;

/// Largest PAPR for the configuration, by the chosen method (linear).
/// ExhaustiveSearch throws SearchSpaceTooLarge beyond kExhaustiveCap.
/// CoherentBound is max_i (sum_k |a|max |p_k(t_i)|)^2 over the expected mean
/// power sum_k E_k / T.
double max_papr(const OfdmConfig& cfg, const MaxPaprMethod& method, unsigned workers = 1);

/// PAPR of `trials` random frames with per-trial seeds derive_seed(seed, t).
std::vector<double> sample_paprs(const OfdmConfig& cfg, std::size_t trials, std::uint64_t seed,
                                 unsigned workers = 1);

struct CcdfCurve {
  std::vector<double> gamma_db;
  std::vector<double> prob;  // P(papr > gamma)
  std::size_t trials = 0;
};

CcdfCurve ccdf_from_samples(std::span<const double> paprs, std::span<const double> gamma_db);

CcdfCurve ccdf_empirical(const OfdmConfig& cfg, std::size_t trials, std::uint64_t seed,
                         std::span<const double> gamma_db, unsigned workers = 1);

/// 1 - (1 - e^{-gamma})^N, the Nyquist-rate approximation for
/// rectangular-pulse OFDM.
double reference_ccdf(std::size_t n_subcarriers, double gamma_linear);

/// Threshold (dB) at which the reference CCDF equals `prob`.
double reference_gamma_db_at(std::size_t n_subcarriers, double prob);

/// Threshold (dB) at which an empirical CCDF falls to `prob`, interpolating
/// linearly in (dB, log prob) between grid points. NaN when not bracketed.
double ccdf_gamma_db_at(const CcdfCurve& curve, double prob);

/// Ascending grid lo, lo + step, ..., hi (inclusive within rounding).
std::vector<double> db_grid(double lo_db, double hi_db, double step_db);

// ---------------------------------------------------------------------------
// Crosscorrelation between subcarriers
// ---------------------------------------------------------------------------

struct XcorrCurve {
  std::vector<double> freq;  // units of 1/T
  std::vector<cplx> rho;
  /// Centroid of p^2 in units of T. rho(f) e^{j 2 pi f center} is real for
  /// pulses symmetric about their centroid.
  double center = 0.5;
};

/// rho(f) = sum_i p(t_i)^2 e^{-j 2 pi f t_i} dt / E_p. Requires f_max >= 1
/// and n_points >= 2. Throws DegeneratePulse for a zero pulse.
XcorrCurve xcorr_curve(const PulseDescriptor& desc, const SamplingGrid& grid, double f_max,
                       std::size_t n_points);

struct PulseMetrics {
  double cutoff_3db = 0.0;
  double cutoff_first_null = 0.0;
  double peak_sidelobe_db = 0.0;
  /// Smallest b with |rho(k/T)| < 1e-6 for every integer k >= b on the
  /// curve; empty when the curve ends before the pulse becomes orthogonal.
  std::optional<int> orthogonality_band;
};

inline constexpr double kNullThreshold = 1e-6;
inline constexpr double kMinPointsPerUnit = 64.0;

/// Thrown when the curve has no null within f_max. `partial` holds whatever
/// could be measured; unmeasured fields are NaN.
class MetricsOutOfRangeError : public Error {
 public:
  MetricsOutOfRangeError(const std::string& message, PulseMetrics partial)
      : Error(ErrorKind::MetricsOutOfRange, message), partial_(partial) {}
  const PulseMetrics& partial() const { return partial_; }

 private:
  PulseMetrics partial_;
};

PulseMetrics pulse_metrics(const XcorrCurve& curve);

// ---------------------------------------------------------------------------
// Theoretical error rates
// ---------------------------------------------------------------------------

/// Gaussian tail probability, 0.5 erfc(x / sqrt 2).
double q_function(double x);

/// Gray nearest-neighbour approximation
///   (4 / log2 M)(1 - 1/sqrt M) Q(sqrt(3 log2 M / (M - 1) Eb/N0)),
/// exact for M = 4, approximate for the non-square orders 8 and 32.
double theoretical_ber(int m_order, double ebn0_db);

}  // namespace papr
