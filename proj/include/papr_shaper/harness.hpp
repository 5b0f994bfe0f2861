#pragma once

// Seeded Monte-Carlo campaigns. Every result is a pure function of its
// inputs and seed: frames are generated from derive_seed(seed, frame_index)
// and merged in frame order, so the worker count never changes an output.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "papr_shaper/analysis.hpp"
#include "papr_shaper/ofdm.hpp"

namespace papr {

inline constexpr double kWilsonZ95 = 1.959964;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for `errors` successes out of `trials`.
Interval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z = kWilsonZ95);

struct BerPoint {
  double ebn0_db = 0.0;
  int m_order = 4;
  std::string pulse;  // family name, or "mixed" for per-subcarrier pulses
  unsigned shape_n = 0;
  std::uint64_t bits_sent = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t frames = 0;
  double zf_noise_enhancement_db = 0.0;
};

struct SweepPlan {
  OfdmConfig cfg;
  std::vector<double> ebn0_db_list;
  std::uint64_t target_errors = 200;
  std::uint64_t max_frames = 100000;
  std::uint64_t master_seed = 1;
};

/// Simulates frames until bit_errors >= target_errors or max_frames frames,
/// whichever comes first. Pass kNoiselessEbN0 to bypass the channel.
BerPoint run_ber_point(const OfdmConfig& cfg, double ebn0_db, std::uint64_t target_errors,
                       std::uint64_t max_frames, std::uint64_t seed, unsigned workers = 1);

/// One point per Eb/N0, point seeds derive_seed(master_seed, point_index).
std::vector<BerPoint> run_ber_sweep(const SweepPlan& plan, unsigned workers = 1);

struct PaprExperiment {
  CcdfCurve ccdf;
  double max_observed = 0.0;  // linear
};

PaprExperiment run_papr_experiment(const OfdmConfig& cfg, std::size_t trials, std::uint64_t seed,
                                   std::span<const double> gamma_db, unsigned workers = 1);

/// Random-search max PAPR of an alternating per-subcarrier assignment
/// (even k get `n_even`, odd k get `n_odd`), once as sampled and once with
/// every pulse scaled to unit energy. With a uniform pulse the two agree,
/// since PAPR is scale invariant; mixed sets are where the flag matters.
struct NormalizationComparison {
  double raw = 0.0;         // linear
  double normalized = 0.0;  // linear
};

NormalizationComparison compare_normalization(std::size_t n_subcarriers, int m_order,
                                              std::size_t oversample, unsigned n_even,
                                              unsigned n_odd, std::size_t trials,
                                              std::uint64_t seed, unsigned workers = 1);

struct XcorrRow {
  unsigned shape_n = 0;
  PulseMetrics metrics;
  bool ok = true;
  std::string error;  // set when !ok; metrics then holds partial results
  XcorrCurve curve;
};

inline constexpr std::size_t kXcorrPointsPerUnit = 256;

/// Crosscorrelation curve and metrics for `family` at each shape_n in
/// n_list. The frequency grid has kXcorrPointsPerUnit points per 1/T, so
/// integer f_max keeps the integer frequencies on the grid.
std::vector<XcorrRow> run_xcorr_report(const PulseDescriptor& family,
                                       std::span<const unsigned> n_list, const SamplingGrid& grid,
                                       double f_max);

}  // namespace papr
