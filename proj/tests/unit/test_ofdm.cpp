#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "papr_shaper/error.hpp"
#include "papr_shaper/ofdm.hpp"

using namespace papr;

namespace {

PulseDescriptor sine(unsigned n) {
  PulseDescriptor d;
  d.family = PulseFamily::SinePower;
  d.shape_n = n;
  return d;
}

OfdmConfig make(std::size_t N, PulseDescriptor d, int M = 4, std::size_t L = 4) {
  OfdmConfig c;
  c.n_subcarriers = N;
  c.m_order = M;
  c.oversample = L;
  c.pulse_assignment = UniformPulse{d};
  return c;
}

std::vector<cplx> random_symbols(const OfdmConfig& cfg, std::mt19937_64& rng) {
  const auto c = build_constellation(cfg.m_order);
  std::vector<cplx> a(cfg.n_subcarriers);
  draw_symbols(c, rng, a, nullptr);
  return a;
}

// Direct-summation Gram oracle, written from the definition with std::polar.
cplx gram_oracle(const OfdmConfig& cfg, std::size_t k, std::size_t l) {
  const SamplingGrid g = cfg.grid();
  const auto pk = sample_pulse(cfg.pulse_for(k), g);
  const auto pl = sample_pulse(cfg.pulse_for(l), g);
  cplx acc{};
  for (std::size_t i = 0; i < g.samples_per_symbol; ++i) {
    const double t = g.time(i);
    acc += pk.samples[i] * pl.samples[i] *
           std::polar(1.0, -2.0 * std::numbers::pi * (double(k) - double(l)) * t);
  }
  acc *= g.dt();
  return acc / std::sqrt(pulse_energy(pk) * pulse_energy(pl));
}

}  // namespace

TEST_CASE("single flat carrier is constant") {
  OfdmConfig cfg = make(1, {});
  const OfdmModem modem(cfg);
  const cplx one[] = {1.0};
  const auto w = modem.synthesize(one);
  REQUIRE(w.samples.size() == 4);
  for (const auto& s : w.samples) CHECK(std::abs(s - cplx(1.0)) < 1e-15);
}

TEST_CASE("two carriers add coherently at t = 0") {
  const OfdmModem modem(make(2, {}));
  const cplx a[] = {1.0, 1.0};
  const auto w = modem.synthesize(a);
  CHECK(std::abs(w.samples[0]) == doctest::Approx(2.0));
}

TEST_CASE("rect subcarriers are orthogonal: waveform energy equals symbol energy") {
  std::mt19937_64 rng(2);
  for (int m : {4, 16, 32}) {
    const OfdmConfig cfg = make(4, {}, m);
    for (int rep = 0; rep < 50; ++rep) {
      const auto a = random_symbols(cfg, rng);
      double e = 0.0;
      for (const auto& v : a) e += std::norm(v);
      SymbolFrame f{a, {}};
      CHECK(std::abs(synthesize(f, cfg).energy() - e) <= 1e-9);
    }
  }
}

TEST_CASE("synthesis rejects frames of the wrong length") {
  const OfdmConfig cfg = make(4, {});
  SymbolFrame f{std::vector<cplx>(3), {}};
  try {
    synthesize(f, cfg);
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}

TEST_CASE("config validation") {
  OfdmConfig bad = make(4, {});
  bad.oversample = 2;
  CHECK_THROWS_AS(validate(bad), Error);
  bad = make(0, {});
  CHECK_THROWS_AS(validate(bad), Error);
  bad = make(4, {}, 7);
  try {
    validate(bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedOrder);
  }
  bad = make(4, {});
  bad.pulse_assignment = PerSubcarrierPulses{{PulseDescriptor{}, PulseDescriptor{}}};
  try {
    validate(bad);
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}

TEST_CASE("rect gram is the identity") {
  for (std::size_t N : {4u, 16u, 64u}) {
    const auto g = gram_matrix(make(N, {}));
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t l = 0; l < N; ++l) {
        const cplx v = g.entries(long(k), long(l));
        if (k == l) CHECK(std::abs(v - 1.0) < 1e-12);
        else CHECK(std::abs(v) < 1e-10);
      }
  }
}

TEST_CASE("sine n = 1 gram is tridiagonal with -1/2 off the diagonal") {
  const auto g = gram_matrix(make(8, sine(1)));
  for (long k = 0; k < 8; ++k)
    for (long l = 0; l < 8; ++l) {
      const cplx v = g.entries(k, l);
      if (k == l) CHECK(std::abs(v - 1.0) < 1e-9);
      else if (std::abs(k - l) == 1) CHECK(std::abs(v - cplx(-0.5)) < 1e-6);
      else CHECK(std::abs(v) < 1e-6);
    }
}

TEST_CASE("sine gram matches direct summation and is banded") {
  for (unsigned n : {0u, 1u, 2u, 3u, 4u}) {
    const OfdmConfig cfg = make(12, sine(n));
    const auto g = gram_matrix(cfg);
    for (std::size_t k = 0; k < 12; ++k)
      for (std::size_t l = 0; l < 12; ++l) {
        const cplx oracle = gram_oracle(cfg, k, l);
        CHECK(std::abs(g.entries(long(k), long(l)) - oracle) < 1e-12);
        if (std::abs(long(k) - long(l)) > long(n)) CHECK(std::abs(oracle) < 1e-6);
      }
  }
}

TEST_CASE("gram structure: Hermitian, unit diagonal, PSD, Toeplitz when uniform") {
  std::vector<OfdmConfig> cfgs;
  PulseDescriptor taper;
  taper.family = PulseFamily::TaperedFlatTop;
  PulseDescriptor sinc;
  sinc.family = PulseFamily::TruncatedSinc;
  for (auto d : {PulseDescriptor{}, sine(1), sine(3), taper, sinc}) cfgs.push_back(make(16, d));

  OfdmConfig mixed = make(16, {});
  std::vector<PulseDescriptor> per;
  for (unsigned k = 0; k < 16; ++k) {
    PulseDescriptor d = sine(k % 3);
    d.normalize_energy = (k % 2) == 0;
    per.push_back(d);
  }
  mixed.pulse_assignment = PerSubcarrierPulses{per};
  cfgs.push_back(mixed);

  for (const auto& cfg : cfgs) {
    const auto g = gram_matrix(cfg);
    const auto& G = g.entries;
    for (long k = 0; k < 16; ++k) {
      CHECK(std::abs(G(k, k) - 1.0) <= 1e-9);
      for (long l = 0; l < 16; ++l) {
        CHECK(std::abs(G(k, l) - std::conj(G(l, k))) <= 1e-12);
        if (cfg.uniform() && k > 0 && l > 0) CHECK(std::abs(G(k, l) - G(k - 1, l - 1)) <= 1e-9);
      }
    }
    CHECK(g.eigenvalues().minCoeff() >= -1e-9);
  }
}

TEST_CASE("matched filter recovers rect symbols and G a for shaped pulses") {
  std::mt19937_64 rng(4);
  const OfdmModem rect(make(16, {}, 16));
  const auto a = random_symbols(rect.config(), rng);
  const auto y = rect.matched_filter(rect.synthesize(a).samples);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(y[k] - a[k]) < 1e-9);

  const OfdmConfig cfg = make(16, sine(1), 16);
  const auto g = gram_matrix(cfg);
  const auto w = synthesize(SymbolFrame{a, {}}, cfg);
  const auto ys = matched_filter(w, cfg);
  const Eigen::VectorXcd expect = g.entries * Eigen::Map<const Eigen::VectorXcd>(a.data(), long(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(ys[k] - expect(long(k))) < 1e-9);
}

TEST_CASE("matched filter is linear and checks the grid") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n01;
  const OfdmModem modem(make(8, sine(2)));
  std::vector<cplx> r1(modem.samples_per_symbol()), r2(r1.size()), sum(r1.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    r1[i] = {n01(rng), n01(rng)};
    r2[i] = {n01(rng), n01(rng)};
    sum[i] = r1[i] + r2[i];
  }
  const auto y1 = modem.matched_filter(r1);
  const auto y2 = modem.matched_filter(r2);
  const auto ys = modem.matched_filter(sum);
  for (std::size_t k = 0; k < y1.size(); ++k) CHECK(std::abs(ys[k] - y1[k] - y2[k]) < 1e-9);

  CHECK_THROWS_AS(modem.matched_filter(std::vector<cplx>(5)), Error);
  SampledWaveform wrong{std::vector<cplx>(modem.samples_per_symbol()), 0.5};
  CHECK_THROWS_AS(matched_filter(wrong, modem.config()), Error);
}

TEST_CASE("equalize solves G a = y") {
  GramMatrix eye{Eigen::MatrixXcd::Identity(4, 4)};
  const std::vector<cplx> y{{1, 2}, {3, -1}, {0, 0}, {-2, 5}};
  const auto a = equalize(y, eye);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(a[k] - y[k]) < 1e-15);

  std::mt19937_64 rng(6);
  const OfdmConfig cfg = make(8, sine(1));
  const auto g = gram_matrix(cfg);
  const auto truth = random_symbols(cfg, rng);
  const Eigen::VectorXcd yv = g.entries * Eigen::Map<const Eigen::VectorXcd>(truth.data(), 8);
  const std::vector<cplx> yy(yv.data(), yv.data() + 8);
  const auto est = equalize(yy, g);
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(est[k] - truth[k]) < 1e-8);
  const Eigen::VectorXcd resid = g.entries * Eigen::Map<const Eigen::VectorXcd>(est.data(), 8) - yv;
  CHECK(resid.norm() <= 1e-8 * yv.norm());
}

TEST_CASE("singular gram is reported, not solved") {
  GramMatrix ones{Eigen::MatrixXcd::Ones(4, 4)};
  try {
    equalize(std::vector<cplx>(4, cplx(1.0)), ones);
    FAIL("expected ill-conditioned error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllConditionedGram);
  }
}

TEST_CASE("noiseless round trip through the modem") {
  std::mt19937_64 rng(12);
  PulseDescriptor taper;
  taper.family = PulseFamily::TaperedFlatTop;
  PulseDescriptor sinc;
  sinc.family = PulseFamily::TruncatedSinc;
  for (auto d : {PulseDescriptor{}, sine(1), sine(2), sine(4), taper, sinc}) {
    for (std::size_t N : {4u, 8u, 16u}) {
      for (int m : {4, 8, 16, 32}) {
        const OfdmModem modem(make(N, d, m));
        if (modem.gram_condition() > 1e6) continue;
        for (int rep = 0; rep < 5; ++rep) {
          std::vector<cplx> a(N);
          Bits bits;
          draw_symbols(modem.constellation(), rng, a, &bits);
          auto y = modem.matched_filter(modem.synthesize(a).samples);
          modem.equalize_in_place(y);
          CHECK(demap_symbols(y, modem.constellation()) == bits);
        }
      }
    }
  }
}

TEST_CASE("mixed pulse energies are equalized exactly") {
  std::mt19937_64 rng(21);
  OfdmConfig cfg = make(8, {}, 16);
  std::vector<PulseDescriptor> per;
  for (unsigned k = 0; k < 8; ++k) {
    PulseDescriptor d = sine(k % 3);
    d.normalize_energy = k % 2 == 1;
    per.push_back(d);
  }
  cfg.pulse_assignment = PerSubcarrierPulses{per};
  const OfdmModem modem(cfg);
  const auto a = random_symbols(cfg, rng);
  auto y = modem.matched_filter(modem.synthesize(a).samples);
  modem.equalize_in_place(y);
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(y[k] - a[k]) < 1e-9);
}

TEST_CASE("zf noise enhancement") {
  CHECK(std::abs(OfdmModem(make(16, {})).zf_noise_enhancement_db()) < 1e-9);
  // Tridiagonal (1, -1/2): (G^-1)_kk = 2k'(N+1-k')/(N+1), k' = k + 1.
  const std::size_t N = 8;
  double mean = 0.0;
  for (std::size_t k = 1; k <= N; ++k) mean += 2.0 * double(k) * double(N + 1 - k) / double(N + 1);
  mean /= double(N);
  CHECK(OfdmModem(make(N, sine(1))).zf_noise_enhancement_db() ==
        doctest::Approx(10.0 * std::log10(mean)).epsilon(1e-9));
}
