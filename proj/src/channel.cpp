#include "papr_shaper/channel.hpp"

#include <cmath>
#include <random>

#include "papr_shaper/error.hpp"
#include "papr_shaper/kernels.hpp"

namespace papr {
namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix(splitmix(seed) ^ (index * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
}

void add_awgn(std::span<cplx> samples, double dt, double ebn0_db, std::size_t frame_bits,
              std::uint64_t seed) {
  if (frame_bits == 0) throw Error(ErrorKind::Precondition, "frame_bits must be > 0");
  if (std::isinf(ebn0_db) && ebn0_db > 0) return;

  const double energy = kernels::active().power_stats(samples).sum * dt;
  if (!(energy > 0.0)) throw Error(ErrorKind::DegenerateSignal, "waveform has zero energy");

  const double eb = energy / static_cast<double>(frame_bits);
  const double n0 = eb * std::pow(10.0, -ebn0_db / 10.0);
  const double sigma = std::sqrt(n0 / (2.0 * dt));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  for (cplx& s : samples) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    s += cplx(re, im);
  }
}

SampledWaveform awgn(const SampledWaveform& w, double ebn0_db, std::size_t frame_bits,
                     std::uint64_t seed) {
  SampledWaveform out = w;
  add_awgn(out.samples, out.dt, ebn0_db, frame_bits, seed);
  return out;
}

}  // namespace papr
