#include "papr_shaper/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "papr_shaper/channel.hpp"
#include "papr_shaper/error.hpp"
#include "papr_shaper/parallel.hpp"

namespace papr {

Interval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z) {
  if (trials == 0 || errors > trials)
    throw Error(ErrorKind::Precondition, "wilson interval needs 0 <= errors <= trials, trials >= 1");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (errors == 0) ci.lo = 0.0;
  if (errors == trials) ci.hi = 1.0;
  ci.lo = std::min(ci.lo, p);
  ci.hi = std::max(ci.hi, p);
  return ci;
}

namespace {

constexpr std::size_t kFrameBatch = 1024;
constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;

std::string pulse_tag(const OfdmConfig& cfg) {
  if (cfg.uniform()) return std::string(family_name(cfg.pulse_for(0).family));
  return "mixed";
}

}  // namespace

BerPoint run_ber_point(const OfdmConfig& cfg, double ebn0_db, std::uint64_t target_errors,
                       std::uint64_t max_frames, std::uint64_t seed, unsigned workers) {
  if (max_frames == 0) throw Error(ErrorKind::Plan, "max_frames must be >= 1");
  if (target_errors == 0) throw Error(ErrorKind::Plan, "target_errors must be >= 1");
  if (std::isnan(ebn0_db)) throw Error(ErrorKind::Plan, "ebn0_db is NaN");

  const OfdmModem modem(cfg);
  if (!(modem.gram_condition() <= kMaxGramCondition))
    throw Error(ErrorKind::IllConditionedGram,
                "gram condition " + std::to_string(modem.gram_condition()) + " exceeds limit");

  const std::size_t N = modem.n();
  const std::size_t S = modem.samples_per_symbol();
  const auto frame_bits =
      static_cast<std::size_t>(N) * static_cast<std::size_t>(modem.constellation().bits_per_symbol);

  std::uint64_t frames = 0;
  std::uint64_t errors = 0;
  std::vector<std::uint32_t> batch_errors;

  while (frames < max_frames && errors < target_errors) {
    const std::uint64_t first = frames;
    const auto count = static_cast<std::size_t>(std::min<std::uint64_t>(kFrameBatch, max_frames - first));
    batch_errors.assign(count, 0);

    parallel_chunks(count, workers, [&](std::size_t begin, std::size_t end) {
      std::vector<cplx> symbols(N);
      std::vector<cplx> wave(S);
      std::vector<cplx> y(N);
      Bits sent;
      Bits received;
      sent.reserve(frame_bits);
      received.reserve(frame_bits);
      for (std::size_t j = begin; j < end; ++j) {
        const std::uint64_t frame_seed = derive_seed(seed, first + j);
        std::mt19937_64 rng(frame_seed);
        sent.clear();
        received.clear();
        draw_symbols(modem.constellation(), rng, symbols, &sent);
        modem.synthesize_into(symbols, wave);
        add_awgn(wave, modem.dt(), ebn0_db, frame_bits, derive_seed(frame_seed, kNoiseStream));
        modem.matched_filter_into(wave, y);
        modem.equalize_in_place(y);
        demap_into(y, modem.constellation(), received);
        std::uint32_t e = 0;
        for (std::size_t b = 0; b < frame_bits; ++b) e += sent[b] != received[b];
        batch_errors[j] = e;
      }
    });

    for (std::size_t j = 0; j < count && errors < target_errors; ++j) {
      errors += batch_errors[j];
      ++frames;
    }
  }

  BerPoint pt;
  pt.ebn0_db = ebn0_db;
  pt.m_order = cfg.m_order;
  pt.pulse = pulse_tag(cfg);
  pt.shape_n = cfg.uniform() ? cfg.pulse_for(0).shape_n : 0;
  pt.frames = frames;
  pt.bits_sent = frames * frame_bits;
  pt.bit_errors = errors;
  pt.ber = static_cast<double>(errors) / static_cast<double>(pt.bits_sent);
  const Interval ci = wilson_interval(errors, pt.bits_sent);
  pt.ci_lo = ci.lo;
  pt.ci_hi = ci.hi;
  pt.seed = seed;
  pt.zf_noise_enhancement_db = modem.zf_noise_enhancement_db();
  return pt;
}

std::vector<BerPoint> run_ber_sweep(const SweepPlan& plan, unsigned workers) {
  if (plan.ebn0_db_list.empty()) throw Error(ErrorKind::Plan, "ebn0_db_list is empty");
  if (!std::is_sorted(plan.ebn0_db_list.begin(), plan.ebn0_db_list.end()))
    throw Error(ErrorKind::Plan, "ebn0_db_list must be ascending");
  if (plan.target_errors == 0) throw Error(ErrorKind::Plan, "target_errors must be >= 1");

  std::vector<BerPoint> out;
  out.reserve(plan.ebn0_db_list.size());
  for (std::size_t i = 0; i < plan.ebn0_db_list.size(); ++i) {
    const double ebn0 = plan.ebn0_db_list[i];
    try {
      out.push_back(run_ber_point(plan.cfg, ebn0, plan.target_errors, plan.max_frames,
                                  derive_seed(plan.master_seed, i), workers));
    } catch (const Error& e) {
      throw Error(e.kind(), "point " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

PaprExperiment run_papr_experiment(const OfdmConfig& cfg, std::size_t trials, std::uint64_t seed,
                                   std::span<const double> gamma_db, unsigned workers) {
  if (trials == 0) throw Error(ErrorKind::Precondition, "papr experiment needs trials >= 1");
  const std::vector<double> p = sample_paprs(cfg, trials, seed, workers);
  PaprExperiment out;
  out.ccdf = ccdf_from_samples(p, gamma_db);
  out.max_observed = *std::max_element(p.begin(), p.end());
  return out;
}

NormalizationComparison compare_normalization(std::size_t n_subcarriers, int m_order,
                                              std::size_t oversample, unsigned n_even,
                                              unsigned n_odd, std::size_t trials,
                                              std::uint64_t seed, unsigned workers) {
  const auto build = [&](bool normalize) {
    std::vector<PulseDescriptor> pulses(n_subcarriers);
    for (std::size_t k = 0; k < n_subcarriers; ++k) {
      pulses[k].family = PulseFamily::SinePower;
      pulses[k].shape_n = k % 2 == 0 ? n_even : n_odd;
      pulses[k].normalize_energy = normalize;
    }
    OfdmConfig cfg;
    cfg.n_subcarriers = n_subcarriers;
    cfg.m_order = m_order;
    cfg.oversample = oversample;
    cfg.pulse_assignment = PerSubcarrierPulses{std::move(pulses)};
    return cfg;
  };
  const RandomSearch search{trials, seed};
  return {max_papr(build(false), search, workers), max_papr(build(true), search, workers)};
}

std::vector<XcorrRow> run_xcorr_report(const PulseDescriptor& family,
                                       std::span<const unsigned> n_list, const SamplingGrid& grid,
                                       double f_max) {
  if (n_list.empty()) throw Error(ErrorKind::Precondition, "n_list is empty");
  const auto n_points =
      static_cast<std::size_t>(std::llround(f_max * static_cast<double>(kXcorrPointsPerUnit))) + 1;
  std::vector<XcorrRow> rows;
  rows.reserve(n_list.size());
  for (unsigned n : n_list) {
    PulseDescriptor d = family;
    d.shape_n = n;
    XcorrRow row;
    row.shape_n = n;
    row.curve = xcorr_curve(d, grid, f_max, n_points);
    try {
      row.metrics = pulse_metrics(row.curve);
    } catch (const MetricsOutOfRangeError& e) {
      row.ok = false;
      row.error = e.what();
      row.metrics = e.partial();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace papr
