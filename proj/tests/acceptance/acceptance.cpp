// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "papr_shaper/analysis.hpp"
#include "papr_shaper/channel.hpp"
#include "papr_shaper/config.hpp"
#include "papr_shaper/dispatch.hpp"
#include "papr_shaper/harness.hpp"

using namespace papr;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;  // 0 for no limit
  std::function<Verdict()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

PulseDescriptor family(PulseFamily f, unsigned n = 0) {
  PulseDescriptor d;
  d.family = f;
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

std::vector<PulseDescriptor> shaped_families() {
  std::vector<PulseDescriptor> out;
  for (unsigned n : {1u, 2u, 4u, 8u}) out.push_back(family(PulseFamily::SinePower, n));
  out.push_back(family(PulseFamily::TaperedFlatTop));
  out.push_back(family(PulseFamily::TruncatedSinc));
  return out;
}

std::string tag(const PulseDescriptor& d) {
  std::string s(family_name(d.family));
  if (d.family == PulseFamily::SinePower) s += " n=" + std::to_string(d.shape_n);
  return s;
}

// Independent QPSK brute force over all 4^N frames, direct complex sums.
double brute_force_rect_max_papr(std::size_t N, std::size_t L) {
  const std::size_t S = N * L;
  const double r = 1.0 / std::sqrt(2.0);
  const cplx qpsk[4] = {{r, r}, {r, -r}, {-r, r}, {-r, -r}};
  std::size_t frames = 1;
  for (std::size_t k = 0; k < N; ++k) frames *= 4;
  double best = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    double peak = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < S; ++i) {
      cplx s{};
      std::size_t code = f;
      for (std::size_t k = 0; k < N; ++k, code /= 4)
        s += qpsk[code % 4] * std::polar(1.0, 2.0 * std::acos(-1.0) * double(k * i) / double(S));
      peak = std::max(peak, std::norm(s));
      sum += std::norm(s);
    }
    best = std::max(best, peak * double(S) / sum);
  }
  return best;
}

double cutoff_3db(unsigned n) {
  // the first null sits at n + 1, so the curve must reach past it
  const std::size_t f_max = std::max<std::size_t>(20, n + 4);
  const auto c = xcorr_curve(family(PulseFamily::SinePower, n), SamplingGrid{1.0, 512},
                             double(f_max), f_max * 256 + 1);
  return pulse_metrics(c).cutoff_3db;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------

Verdict noiseless_identity() {
  std::vector<PulseDescriptor> descs{family(PulseFamily::Rect), family(PulseFamily::TaperedFlatTop),
                                     family(PulseFamily::TruncatedSinc)};
  for (unsigned n : {0u, 1u, 2u, 4u, 8u}) descs.push_back(family(PulseFamily::SinePower, n));
  std::size_t tested = 0, skipped = 0;
  std::uint64_t errors = 0;
  std::string first_bad;
  for (const auto& d : descs)
    for (std::size_t N : {4u, 8u, 16u, 64u}) {
      const double cond = gram_matrix(make(N, d)).condition();
      if (!(cond < 1e6)) {
        skipped += 4;
        continue;
      }
      for (int M : {4, 8, 16, 32}) {
        const auto p = run_ber_point(make(N, d, M), kNoiselessEbN0, 1, 100, 1);
        ++tested;
        if (p.bit_errors != 0 && first_bad.empty())
          first_bad = fmt(" first failure %s N=%zu M=%d", tag(d).c_str(), N, M);
        errors += p.bit_errors;
      }
    }
  return {errors == 0,
          fmt("%zu configs x 100 frames, %llu bit errors, %zu skipped for condition >= 1e6%s",
              tested, (unsigned long long)errors, skipped, first_bad.c_str())};
}

Verdict ber_matches_theory() {
  SweepPlan plan;
  plan.cfg = make(64, family(PulseFamily::Rect));
  plan.ebn0_db_list = {0, 2, 4, 6, 8};
  plan.target_errors = 200;
  plan.max_frames = 10'000'000;
  plan.master_seed = 1;
  const auto pts = run_ber_sweep(plan);
  bool ok = true;
  std::string d;
  for (const auto& p : pts) {
    const double th = theoretical_ber(4, p.ebn0_db);
    const bool in = th >= p.ci_lo && th <= p.ci_hi && p.bit_errors >= 200;
    ok = ok && in;
    d += fmt("%g dB: %.3e in [%.3e, %.3e]%s; ", p.ebn0_db, th, p.ci_lo, p.ci_hi, in ? "" : " NO");
  }
  return {ok, d};
}

Verdict m_ordering() {
  std::vector<BerPoint> pts;
  for (int M : {4, 8, 16, 32})
    pts.push_back(run_ber_point(make(64, family(PulseFamily::Rect), M), 10.0, 500, 10'000'000, 1));
  bool ok = true;
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ok = ok && pts[i].bit_errors >= 500;
    if (i > 0) ok = ok && pts[i - 1].ber < pts[i].ber && pts[i - 1].ci_hi < pts[i].ci_lo;
    d += fmt("M=%d %.3e [%.3e, %.3e]; ", pts[i].m_order, pts[i].ber, pts[i].ci_lo, pts[i].ci_hi);
  }
  return {ok, d};
}

Verdict exact_rect_max() {
  const double v = to_db(max_papr(make(4, family(PulseFamily::Rect)), ExhaustiveSearch{}));
  const double oracle = to_db(brute_force_rect_max_papr(4, 4));
  const bool ok = std::abs(v - 6.0206) <= 1e-6 + 1e-5 && std::abs(v - oracle) <= 1e-6 &&
                  std::abs(v - 10.0 * std::log10(4.0)) <= 1e-6;
  return {ok, fmt("exhaustive %.9f dB, brute-force oracle %.9f dB, 10 log10 4 = %.9f dB", v, oracle,
                  10.0 * std::log10(4.0))};
}

Verdict shaped_not_above_rect() {
  const double rect = to_db(max_papr(make(4, family(PulseFamily::Rect)), ExhaustiveSearch{}));
  bool ok = true;
  std::string d = fmt("rect %.4f dB; ", rect);
  for (const auto& f : shaped_families()) {
    const double v = to_db(max_papr(make(4, f), RandomSearch{10000, 1}));
    const bool fine = v <= rect + 0.1;
    ok = ok && fine;
    d += fmt("%s %.4f%s; ", tag(f).c_str(), v, fine ? "" : " (over)");
  }
  return {ok, d};
}

Verdict papr_grows_with_n() {
  bool ok = true;
  std::string d;
  for (const auto& f : {family(PulseFamily::Rect), family(PulseFamily::SinePower, 1),
                        family(PulseFamily::SinePower, 4)}) {
    d += tag(f) + ":";
    double prev = -1.0;
    for (std::size_t N : {8u, 16u, 32u, 64u}) {
      const double v = to_db(max_papr(make(N, f), RandomSearch{10000, 1}));
      ok = ok && v > prev;
      prev = v;
      d += fmt(" %.3f", v);
    }
    d += "; ";
  }
  return {ok, d + "(dB at N = 8, 16, 32, 64)"};
}

Verdict ccdf_sanity() {
  const auto grid = db_grid(4.0, 14.0, 0.1);
  const auto c = ccdf_empirical(make(64, family(PulseFamily::Rect), 4, 4), 100000, 1, grid);
  const double emp = ccdf_gamma_db_at(c, 1e-2);
  const double ref = reference_gamma_db_at(64, 1e-2);
  return {std::abs(emp - ref) <= 0.5,
          fmt("gamma at P=1e-2: empirical %.3f dB, reference %.3f dB, deviation %.3f dB", emp, ref,
              emp - ref)};
}

Verdict xcorr_closed_forms() {
  const SamplingGrid g{1.0, 512};
  const auto rect = xcorr_curve(family(PulseFamily::Rect), g, 16.0, 16 * 256 + 1);
  double worst_null = 0.0;
  for (std::size_t k = 1; k <= 8; ++k) worst_null = std::max(worst_null, std::abs(rect.rho[k * 256]));
  const auto rm = pulse_metrics(rect);
  const auto s1 = xcorr_curve(family(PulseFamily::SinePower, 1), g, 16.0, 16 * 256 + 1);
  const double at1 = std::abs(s1.rho[256]);
  bool bands = true;
  std::string bd;
  for (unsigned n : {0u, 1u, 2u, 4u}) {
    const auto m = pulse_metrics(xcorr_curve(family(PulseFamily::SinePower, n), g, 16.0, 16 * 256 + 1));
    const int b = m.orthogonality_band.value_or(-1);
    bands = bands && b == int(n) + 1;
    bd += fmt(" n=%u:%d", n, b);
  }
  const bool ok = worst_null <= 1e-10 && std::abs(rm.peak_sidelobe_db + 13.3) <= 0.2 &&
                  std::abs(at1 - 0.5) <= 1e-4 && bands;
  return {ok, fmt("rect max |rho(k)| %.2e, sidelobe %.3f dB; sine n=1 |rho(1)| %.6f; bands%s",
                  worst_null, rm.peak_sidelobe_db, at1, bd.c_str())};
}

Verdict cutoff_factor_two() {
  const double c4 = cutoff_3db(4), c16 = cutoff_3db(16);
  const double r = c16 / c4;
  return {r >= 1.7 && r <= 2.3, fmt("cutoff n=4 %.5f, n=16 %.5f, ratio %.4f", c4, c16, r)};
}

Verdict cutoff_diminishing() {
  const double c40 = cutoff_3db(40), c48 = cutoff_3db(48);
  const double rel = std::abs(c48 - c40) / c40;
  return {rel < 0.05,
          fmt("cutoff n=40 %.5f, n=48 %.5f, relative change %.2f%% (limit 5%%)", c40, c48, 100 * rel)};
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "papr_shaper_acceptance";
  fs::remove_all(root);
  const std::map<std::string, std::vector<std::string>> files{
      {"xcorr", {"xcorr.csv", "metrics.csv"}}, {"papr", {"papr.csv"}}, {"ccdf", {"ccdf.csv"}},
      {"ber", {"ber.csv"}}, {"sweep", {"ber.csv"}}};
  bool ok = true;
  std::size_t compared = 0;
  std::string d;
  for (const auto& [sub, names] : files) {
    std::vector<std::string> reference;
    for (unsigned workers : {1u, 4u, 8u}) {
      for (int rep = 0; rep < 2; ++rep) {
        RunConfig c;
        c.n_subcarriers = 16;
        c.pulse_family = PulseFamily::SinePower;
        c.shape_n = 2;
        c.trials = 5000;
        c.target_errors = 100;
        c.max_frames = 20000;
        c.ebn0_db_list = {2.0, 6.0};
        c.seed = 20240;
        c.workers = workers;
        c.output_path = (root / fmt("%s_w%u_r%d", sub.c_str(), workers, rep)).string();
        const auto out = dispatch(sub, c);
        if (out.exit_status != 0) {
          ok = false;
          d += sub + ": " + out.error_line + "; ";
          continue;
        }
        std::vector<std::string> got;
        for (const auto& n : names) got.push_back(slurp(fs::path(c.output_path) / n));
        if (reference.empty()) reference = got;
        else {
          ++compared;
          if (got != reference) {
            ok = false;
            d += fmt("%s differs at %u workers; ", sub.c_str(), workers);
          }
        }
      }
    }
  }
  fs::remove_all(root);
  return {ok, fmt("%zu reruns of 5 subcommands at 1, 4, 8 workers compared byte for byte; ", compared) + d};
}

Verdict gram_structure() {
  bool ok = true;
  std::string d;
  for (unsigned n : {0u, 1u, 2u, 4u, 8u}) {
    const auto g = gram_matrix(make(16, family(PulseFamily::SinePower, n)));
    const auto& G = g.entries;
    double herm = 0.0, diag = 0.0, toep = 0.0, outside = 0.0, inside_min = 1.0;
    for (long k = 0; k < 16; ++k) {
      diag = std::max(diag, std::abs(G(k, k) - 1.0));
      for (long l = 0; l < 16; ++l) {
        herm = std::max(herm, std::abs(G(k, l) - std::conj(G(l, k))));
        if (k > 0 && l > 0) toep = std::max(toep, std::abs(G(k, l) - G(k - 1, l - 1)));
        const long off = std::abs(k - l);
        if (off > long(n)) outside = std::max(outside, std::abs(G(k, l)));
        else inside_min = std::min(inside_min, std::abs(G(k, l)));
      }
    }
    const double lmin = g.eigenvalues().minCoeff();
    const bool fine = herm <= 1e-12 && diag <= 1e-9 && lmin > 0.0 && toep <= 1e-9 &&
                      outside < 1e-6 && inside_min > 1e-6;
    ok = ok && fine;
    d += fmt("n=%u min eig %.3e%s; ", n, lmin, fine ? "" : " (fails)");
  }
  return {ok, d + "Hermitian, unit diagonal, Toeplitz and band n checked"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1", "noiseless end-to-end identity", 60, noiseless_identity},
      {"2", "BER inside Wilson CI of theory (rect, N=64, M=4)", 120, ber_matches_theory},
      {"3", "BER ordering across M at 10 dB", 300, m_ordering},
      {"4a", "exhaustive max PAPR rect N=4 M=4 = 6.0206 dB", 0, exact_rect_max},
      {"4b", "shaped random-search max PAPR <= rect + 0.1 dB at N=4", 0, shaped_not_above_rect},
      {"5", "random-search max PAPR strictly increasing in N", 120, papr_grows_with_n},
      {"6", "CCDF within 0.5 dB of reference at 1e-2", 60, ccdf_sanity},
      {"7", "crosscorrelation closed forms", 0, xcorr_closed_forms},
      {"8a", "cutoff_3db(n=16)/cutoff_3db(n=4) in [1.7, 2.3]", 0, cutoff_factor_two},
      {"8b", "cutoff_3db change n=40 -> 48 below 5%", 0, cutoff_diminishing},
      {"9", "byte-identical CSVs across reruns and worker counts", 0, determinism},
      {"10", "Gram structure for sine pulses at N=16", 0, gram_structure},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      v.pass = false;
      v.detail += fmt(" [over time limit %.0f s]", c.time_limit_s);
    }
    if (!v.pass) ++failures;
    std::printf("[%s] %-3s %s (%.2f s): %s\n", v.pass ? "PASS" : "FAIL", c.id.c_str(),
                c.title.c_str(), secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
