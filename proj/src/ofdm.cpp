#include "papr_shaper/ofdm.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "papr_shaper/error.hpp"
#include "papr_shaper/kernels.hpp"

namespace papr {

const PulseDescriptor& OfdmConfig::pulse_for(std::size_t k) const {
  if (const auto* u = std::get_if<UniformPulse>(&pulse_assignment)) return u->pulse;
  return std::get<PerSubcarrierPulses>(pulse_assignment).pulses.at(k);
}

void validate(const OfdmConfig& cfg) {
  if (cfg.n_subcarriers == 0) throw Error(ErrorKind::Config, "n_subcarriers must be >= 1");
  if (cfg.oversample < kMinOversample)
    throw Error(ErrorKind::Config,
                "oversample must be >= " + std::to_string(kMinOversample));
  if (!is_supported_order(cfg.m_order))
    throw Error(ErrorKind::UnsupportedOrder,
                "unsupported constellation order " + std::to_string(cfg.m_order));
  if (const auto* per = std::get_if<PerSubcarrierPulses>(&cfg.pulse_assignment)) {
    if (per->pulses.size() != cfg.n_subcarriers)
      throw Error(ErrorKind::Config, "pulse assignment has " +
                                         std::to_string(per->pulses.size()) +
                                         " entries for " + std::to_string(cfg.n_subcarriers) +
                                         " subcarriers");
  }
}

double SampledWaveform::energy() const {
  return kernels::active().power_stats(samples).sum * dt;
}

Eigen::VectorXd GramMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double GramMatrix::condition() const {
  const Eigen::VectorXd ev = eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

OfdmModem::OfdmModem(const OfdmConfig& cfg) : cfg_(cfg) {
  validate(cfg_);
  constellation_ = build_constellation(cfg_.m_order);
  const std::size_t N = cfg_.n_subcarriers;
  S_ = cfg_.samples_per_symbol();
  const SamplingGrid grid = cfg_.grid();
  dt_ = grid.dt();

  energies_.resize(N);
  basis_.resize(N * S_);
  for (std::size_t k = 0; k < N; ++k) {
    const SampledPulse p = sample_pulse(cfg_.pulse_for(k), grid);
    energies_[k] = pulse_energy(p);
    if (!(energies_[k] > 0.0))
      throw Error(ErrorKind::DegeneratePulse,
                  "subcarrier " + std::to_string(k) + " has a zero-energy pulse");
    for (std::size_t i = 0; i < S_; ++i) {
      // Reduce k*i mod S first so the phase is exact on the grid.
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((k * i) % S_) /
                           static_cast<double>(S_);
      basis_[k * S_ + i] = p.samples[i] * cplx(std::cos(phase), std::sin(phase));
    }
  }

  const auto& kt = kernels::active();
  gram_.entries.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = k; l < N; ++l) {
      // sum_i conj(b_k) b_l dt = sum p_k p_l e^{-j 2 pi (k - l) t_i} dt
      const cplx raw = kt.complex_dot_conj(basis(l), basis(k)) * dt_;
      const cplx g = raw / std::sqrt(energies_[k] * energies_[l]);
      const auto ki = static_cast<Eigen::Index>(k);
      const auto li = static_cast<Eigen::Index>(l);
      if (k == l) {
        gram_.entries(ki, ki) = cplx(g.real(), 0.0);
      } else {
        gram_.entries(ki, li) = g;
        gram_.entries(li, ki) = std::conj(g);
      }
    }
  }
  condition_ = gram_.condition();
  factor_.compute(gram_.entries);
  sqrt_energy_.resize(static_cast<Eigen::Index>(N));
  for (std::size_t k = 0; k < N; ++k)
    sqrt_energy_(static_cast<Eigen::Index>(k)) = std::sqrt(energies_[k]);
}

std::span<const cplx> OfdmModem::basis(std::size_t k) const {
  return std::span<const cplx>(basis_).subspan(k * S_, S_);
}

void OfdmModem::synthesize_into(std::span<const cplx> symbols, std::span<cplx> out) const {
  if (symbols.size() != n())
    throw Error(ErrorKind::Config, "frame has " + std::to_string(symbols.size()) +
                                       " symbols for " + std::to_string(n()) + " subcarriers");
  if (out.size() != S_) throw Error(ErrorKind::Config, "output buffer has the wrong length");
  std::fill(out.begin(), out.end(), cplx{});
  const auto& kt = kernels::active();
  for (std::size_t k = 0; k < n(); ++k) kt.complex_axpy(symbols[k], basis(k), out);
}

SampledWaveform OfdmModem::synthesize(std::span<const cplx> symbols) const {
  SampledWaveform w;
  w.dt = dt_;
  w.samples.resize(S_);
  synthesize_into(symbols, w.samples);
  return w;
}

void OfdmModem::matched_filter_into(std::span<const cplx> received, std::span<cplx> y) const {
  if (received.size() != S_)
    throw Error(ErrorKind::Config, "received waveform has " + std::to_string(received.size()) +
                                       " samples, grid has " + std::to_string(S_));
  if (y.size() != n()) throw Error(ErrorKind::Config, "output buffer has the wrong length");
  const auto& kt = kernels::active();
  for (std::size_t k = 0; k < n(); ++k)
    y[k] = kt.complex_dot_conj(received, basis(k)) * (dt_ / energies_[k]);
}

std::vector<cplx> OfdmModem::matched_filter(std::span<const cplx> received) const {
  std::vector<cplx> y(n());
  matched_filter_into(received, y);
  return y;
}

void OfdmModem::equalize_in_place(std::span<cplx> y) const {
  if (!(condition_ <= kMaxGramCondition))
    throw Error(ErrorKind::IllConditionedGram,
                "gram condition " + std::to_string(condition_) + " exceeds limit");
  if (y.size() != n()) throw Error(ErrorKind::Config, "equalizer input has the wrong length");
  Eigen::Map<Eigen::VectorXcd> v(y.data(), static_cast<Eigen::Index>(y.size()));
  Eigen::VectorXcd scaled = v.cwiseProduct(sqrt_energy_.cast<cplx>());
  scaled = factor_.solve(scaled);
  v = scaled.cwiseQuotient(sqrt_energy_.cast<cplx>());
}

double OfdmModem::zf_noise_enhancement_db() const {
  if (!(condition_ <= kMaxGramCondition)) return std::numeric_limits<double>::infinity();
  const auto N = static_cast<Eigen::Index>(n());
  const Eigen::MatrixXcd inv = factor_.solve(Eigen::MatrixXcd::Identity(N, N));
  return 10.0 * std::log10(inv.diagonal().real().mean());
}

SampledWaveform synthesize(const SymbolFrame& frame, const OfdmConfig& cfg) {
  return OfdmModem(cfg).synthesize(frame.symbols);
}

GramMatrix gram_matrix(const OfdmConfig& cfg) { return OfdmModem(cfg).gram(); }

std::vector<cplx> matched_filter(const SampledWaveform& r, const OfdmConfig& cfg) {
  const OfdmModem modem(cfg);
  if (std::abs(r.dt - modem.dt()) > 1e-12 * modem.dt())
    throw Error(ErrorKind::Config, "waveform sampling interval does not match the grid");
  return modem.matched_filter(r.samples);
}

std::vector<cplx> equalize(std::span<const cplx> y, const GramMatrix& g) {
  if (y.size() != g.size())
    throw Error(ErrorKind::Config, "equalizer input has the wrong length");
  const double cond = g.condition();
  if (!(cond <= kMaxGramCondition))
    throw Error(ErrorKind::IllConditionedGram,
                "gram condition " + std::to_string(cond) + " exceeds limit");
  Eigen::Map<const Eigen::VectorXcd> v(y.data(), static_cast<Eigen::Index>(y.size()));
  const Eigen::VectorXcd a = g.entries.ldlt().solve(v);
  return {a.data(), a.data() + a.size()};
}

}  // namespace papr
