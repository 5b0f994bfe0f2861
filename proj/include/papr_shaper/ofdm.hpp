#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "papr_shaper/constellation.hpp"
#include "papr_shaper/pulses.hpp"

namespace papr {

using cplx = std::complex<double>;

struct UniformPulse {
  PulseDescriptor pulse;
};

struct PerSubcarrierPulses {
  std::vector<PulseDescriptor> pulses;
};

using PulseAssignment = std::variant<UniformPulse, PerSubcarrierPulses>;

struct OfdmConfig {
  std::size_t n_subcarriers = 64;
  int m_order = 4;
  std::size_t oversample = 4;
  PulseAssignment pulse_assignment = UniformPulse{};

  std::size_t samples_per_symbol() const { return n_subcarriers * oversample; }
  SamplingGrid grid() const { return {1.0, samples_per_symbol()}; }
  const PulseDescriptor& pulse_for(std::size_t k) const;
  bool uniform() const { return std::holds_alternative<UniformPulse>(pulse_assignment); }
};

inline constexpr std::size_t kMinOversample = 4;

/// Throws Config on N = 0, L < 4, or an assignment list of the wrong length,
/// and UnsupportedOrder on M outside {4, 8, 16, 32}.
void validate(const OfdmConfig& cfg);

struct SymbolFrame {
  std::vector<cplx> symbols;  // a_k, one per subcarrier
  Bits source_bits;
};

struct SampledWaveform {
  std::vector<cplx> samples;
  double dt = 0.0;

  double energy() const;
};

/// Normalized subcarrier crosscorrelations
///   G[k][l] = sum_i p_k(t_i) p_l(t_i) e^{-j 2 pi (k - l) t_i / T} dt / sqrt(E_k E_l),
/// i.e. for identical pulses the normalized transform of p^2 at (k - l)/T.
struct GramMatrix {
  Eigen::MatrixXcd entries;

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
  Eigen::VectorXd eigenvalues() const;
  /// lambda_max / lambda_min; +inf when lambda_min <= 0.
  double condition() const;
};

/// Above this condition estimate the equalizer refuses to solve.
inline constexpr double kMaxGramCondition = 1e8;

/// Transmitter and receiver for one configuration, with the per-subcarrier
/// basis b_k[i] = p_k(t_i) e^{j 2 pi k i / S}, the Gram matrix, and its
/// factorization computed once.
class OfdmModem {
 public:
  explicit OfdmModem(const OfdmConfig& cfg);

  const OfdmConfig& config() const { return cfg_; }
  const Constellation& constellation() const { return constellation_; }
  const GramMatrix& gram() const { return gram_; }
  std::span<const double> energies() const { return energies_; }
  std::span<const cplx> basis(std::size_t k) const;
  std::size_t n() const { return cfg_.n_subcarriers; }
  std::size_t samples_per_symbol() const { return S_; }
  double dt() const { return dt_; }
  double gram_condition() const { return condition_; }

  /// s[i] = sum_k a_k b_k[i]. `out` must hold S samples.
  void synthesize_into(std::span<const cplx> symbols, std::span<cplx> out) const;
  SampledWaveform synthesize(std::span<const cplx> symbols) const;

  /// y_k = sum_i r[i] conj(b_k[i]) dt / E_k.
  void matched_filter_into(std::span<const cplx> received, std::span<cplx> y) const;
  std::vector<cplx> matched_filter(std::span<const cplx> received) const;

  /// Inverts the matched-filter mixing, y = E^{-1/2} G E^{1/2} a, in place.
  /// Reduces to solving G a = y for equal-energy pulses. Throws
  /// IllConditionedGram when the condition exceeds kMaxGramCondition.
  void equalize_in_place(std::span<cplx> y) const;

  /// 10 log10 of the mean diagonal of G^{-1} (0 dB for orthogonal pulses).
  double zf_noise_enhancement_db() const;

 private:
  OfdmConfig cfg_;
  Constellation constellation_;
  std::size_t S_ = 0;
  double dt_ = 0.0;
  std::vector<double> energies_;
  std::vector<cplx> basis_;  // N rows of S samples
  GramMatrix gram_;
  double condition_ = 0.0;
  Eigen::LDLT<Eigen::MatrixXcd> factor_;
  Eigen::VectorXd sqrt_energy_;
};

SampledWaveform synthesize(const SymbolFrame& frame, const OfdmConfig& cfg);
GramMatrix gram_matrix(const OfdmConfig& cfg);
std::vector<cplx> matched_filter(const SampledWaveform& r, const OfdmConfig& cfg);

/// Solves G a = y. Throws IllConditionedGram when cond(G) > kMaxGramCondition.
std::vector<cplx> equalize(std::span<const cplx> y, const GramMatrix& g);

}  // namespace papr
