#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "papr_shaper/analysis.hpp"
#include "papr_shaper/channel.hpp"
#include "papr_shaper/kernels.hpp"
#include "papr_shaper/parallel.hpp"

namespace papr {

double papr(std::span<const cplx> samples) {
  const kernels::PowerStats s = kernels::active().power_stats(samples);
  if (samples.empty() || !(s.sum > 0.0))
    throw Error(ErrorKind::DegenerateSignal, "papr of a zero waveform is undefined");
  return s.peak / (s.sum / static_cast<double>(samples.size()));
}

double to_db(double linear) { return 10.0 * std::log10(linear); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

std::vector<double> sample_paprs(const OfdmConfig& cfg, std::size_t trials, std::uint64_t seed,
                                 unsigned workers) {
  const OfdmModem modem(cfg);
  std::vector<double> out(trials);
  parallel_chunks(trials, workers, [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> symbols(modem.n());
    std::vector<cplx> wave(modem.samples_per_symbol());
    for (std::size_t t = begin; t < end; ++t) {
      std::mt19937_64 rng(derive_seed(seed, t));
      draw_symbols(modem.constellation(), rng, symbols, nullptr);
      modem.synthesize_into(symbols, wave);
      out[t] = papr(wave);
    }
  });
  return out;
}

namespace {

double exhaustive(const OfdmConfig& cfg, unsigned workers) {
  const auto M = static_cast<std::size_t>(cfg.m_order);
  const std::size_t N = cfg.n_subcarriers;
  std::size_t count = 1;
  for (std::size_t k = 0; k < N; ++k) {
    if (count > kExhaustiveCap / M)
      throw Error(ErrorKind::SearchSpaceTooLarge,
                  std::to_string(M) + "^" + std::to_string(N) + " frames exceed the cap of " +
                      std::to_string(kExhaustiveCap));
    count *= M;
  }
  const OfdmModem modem(cfg);
  std::vector<double> per_frame(count);
  parallel_chunks(count, workers, [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> symbols(N);
    std::vector<cplx> wave(modem.samples_per_symbol());
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rest = idx;
      for (std::size_t k = 0; k < N; ++k) {
        symbols[k] = modem.constellation().points[rest % M];
        rest /= M;
      }
      modem.synthesize_into(symbols, wave);
      per_frame[idx] = papr(wave);
    }
  });
  return *std::max_element(per_frame.begin(), per_frame.end());
}

double coherent_bound(const OfdmConfig& cfg) {
  const OfdmModem modem(cfg);
  const double amax = modem.constellation().max_magnitude();
  const std::size_t S = modem.samples_per_symbol();
  std::vector<double> envelope(S, 0.0);
  for (std::size_t k = 0; k < modem.n(); ++k) {
    const auto row = modem.basis(k);
    for (std::size_t i = 0; i < S; ++i) envelope[i] += amax * std::abs(row[i]);
  }
  const double peak = *std::max_element(envelope.begin(), envelope.end());
  double mean_power = 0.0;
  for (double e : modem.energies()) mean_power += e;  // T = 1
  return peak * peak / mean_power;
}

}  // namespace

double max_papr(const OfdmConfig& cfg, const MaxPaprMethod& method, unsigned workers) {
  validate(cfg);
  if (std::holds_alternative<ExhaustiveSearch>(method)) return exhaustive(cfg, workers);
  if (std::holds_alternative<CoherentBound>(method)) return coherent_bound(cfg);
  const auto& rs = std::get<RandomSearch>(method);
  if (rs.trials == 0) throw Error(ErrorKind::Precondition, "random search needs trials >= 1");
  const std::vector<double> p = sample_paprs(cfg, rs.trials, rs.seed, workers);
  return *std::max_element(p.begin(), p.end());
}

CcdfCurve ccdf_from_samples(std::span<const double> paprs, std::span<const double> gamma_db) {
  if (paprs.empty()) throw Error(ErrorKind::Precondition, "ccdf needs trials >= 1");
  std::vector<double> sorted(paprs.begin(), paprs.end());
  std::sort(sorted.begin(), sorted.end());
  CcdfCurve c;
  c.trials = paprs.size();
  c.gamma_db.assign(gamma_db.begin(), gamma_db.end());
  c.prob.reserve(gamma_db.size());
  for (double g : gamma_db) {
    const double lin = from_db(g);
    const auto above = static_cast<double>(
        sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), lin));
    c.prob.push_back(above / static_cast<double>(sorted.size()));
  }
  return c;
}

CcdfCurve ccdf_empirical(const OfdmConfig& cfg, std::size_t trials, std::uint64_t seed,
                         std::span<const double> gamma_db, unsigned workers) {
  if (trials == 0) throw Error(ErrorKind::Precondition, "ccdf needs trials >= 1");
  const std::vector<double> p = sample_paprs(cfg, trials, seed, workers);
  return ccdf_from_samples(p, gamma_db);
}

double reference_ccdf(std::size_t n_subcarriers, double gamma_linear) {
  return 1.0 - std::pow(1.0 - std::exp(-gamma_linear), static_cast<double>(n_subcarriers));
}

double reference_gamma_db_at(std::size_t n_subcarriers, double prob) {
  const double inner = 1.0 - std::pow(1.0 - prob, 1.0 / static_cast<double>(n_subcarriers));
  return to_db(-std::log(inner));
}

double ccdf_gamma_db_at(const CcdfCurve& curve, double prob) {
  for (std::size_t j = 1; j < curve.prob.size(); ++j) {
    const double p0 = curve.prob[j - 1];
    const double p1 = curve.prob[j];
    if (p0 >= prob && p1 < prob) {
      if (p1 <= 0.0) return curve.gamma_db[j];
      const double t = (std::log(prob) - std::log(p0)) / (std::log(p1) - std::log(p0));
      return curve.gamma_db[j - 1] + t * (curve.gamma_db[j] - curve.gamma_db[j - 1]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> db_grid(double lo_db, double hi_db, double step_db) {
  if (!(step_db > 0.0) || !(hi_db >= lo_db))
    throw Error(ErrorKind::Precondition, "gamma grid needs step > 0 and hi >= lo");
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(std::floor((hi_db - lo_db) / step_db + 1e-9));
  g.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) g.push_back(lo_db + step_db * static_cast<double>(j));
  return g;
}

}  // namespace papr
