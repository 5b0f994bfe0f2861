#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "papr_shaper/dispatch.hpp"

namespace papr {
namespace {

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return format_float(v);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void xcorr_block(std::ostream& out, const XcorrResult& r) {
  out << "Subcarrier crosscorrelation (xcorr.csv, metrics.csv)\n"
      << "  family: " << family_name(r.family.family) << "\n"
      << "  n      cutoff_3db  first_null  sidelobe_dB  ortho_band\n";
  std::map<unsigned, double> cutoff;
  for (const XcorrRow& row : r.rows) {
    char line[128];
    std::snprintf(line, sizeof line, "  %-5u  %10s  %10s  %11s  %10d%s\n", row.shape_n,
                  fixed(row.metrics.cutoff_3db, 4).c_str(),
                  fixed(row.metrics.cutoff_first_null, 4).c_str(),
                  fixed(row.metrics.peak_sidelobe_db, 2).c_str(),
                  row.metrics.orthogonality_band.value_or(-1), row.ok ? "" : "  (partial)");
    out << line;
    if (std::isfinite(row.metrics.cutoff_3db)) cutoff[row.shape_n] = row.metrics.cutoff_3db;
  }
  const auto ratio = [&](unsigned hi, unsigned lo) {
    if (!cutoff.count(hi) || !cutoff.count(lo)) return;
    out << "  cutoff_3db ratio n=" << hi << " / n=" << lo << ": "
        << fixed(cutoff[hi] / cutoff[lo], 4) << "\n";
  };
  ratio(4, 0);
  ratio(16, 4);
  ratio(48, 40);
  out << '\n';
}

void papr_block(std::ostream& out, const PaprResult& r) {
  out << "Maximum PAPR (papr.csv)\n"
      << "  N = " << r.n_subcarriers << ", M = " << r.m_order << ", pulse = " << r.pulse << "\n"
      << "  method          linear      dB\n";
  for (const PaprRow& row : r.rows) {
    char line[128];
    std::snprintf(line, sizeof line, "  %-14s  %10s  %8s\n", row.method.c_str(),
                  fixed(row.papr_linear, 4).c_str(), fixed(to_db(row.papr_linear), 3).c_str());
    out << line;
  }
  out << '\n';
}

void ccdf_block(std::ostream& out, const CcdfResult& r) {
  const auto& c = r.experiment.ccdf;
  out << "PAPR CCDF (ccdf.csv)\n"
      << "  N = " << r.n_subcarriers << ", pulse = " << r.pulse << ", trials = " << c.trials << "\n"
      << "  max observed PAPR: " << fixed(to_db(r.experiment.max_observed), 3) << " dB\n";
  for (double p : {1e-1, 1e-2, 1e-3}) {
    out << "  gamma at P = " << format_float(p) << ": empirical "
        << fixed(ccdf_gamma_db_at(c, p), 3) << " dB, reference "
        << fixed(reference_gamma_db_at(r.n_subcarriers, p), 3) << " dB\n";
  }
  out << '\n';
}

void ber_block(std::ostream& out, const BerResult& r) {
  out << "Bit error rate (ber.csv)\n"
      << "  EbN0_dB  M   pulse  n   ber          ci_lo        ci_hi        theory       "
         "theory_in_ci  zf_dB\n";
  for (const BerPoint& p : r.points) {
    const double theory =
        std::isinf(p.ebn0_db) ? 0.0 : theoretical_ber(p.m_order, p.ebn0_db);
    const bool inside = theory >= p.ci_lo && theory <= p.ci_hi;
    char line[256];
    std::snprintf(line, sizeof line, "  %7s  %-2d  %-5s  %-2u  %-11s  %-11s  %-11s  %-11s  %-12s  %s\n",
                  fixed(p.ebn0_db, 2).c_str(), p.m_order, p.pulse.c_str(), p.shape_n,
                  format_float(p.ber).c_str(), format_float(p.ci_lo).c_str(),
                  format_float(p.ci_hi).c_str(), format_float(theory).c_str(),
                  inside ? "yes" : "no", fixed(p.zf_noise_enhancement_db, 3).c_str());
    out << line;
  }
  out << '\n';
}

}  // namespace

std::string render_report(std::span<const ResultSet> results) {
  if (results.empty()) throw Error(ErrorKind::Precondition, "report needs at least one result set");
  std::ostringstream out;
  out << "papr-shaper summary\n\n";
  for (const ResultSet& r : results) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, XcorrResult>) xcorr_block(out, v);
          else if constexpr (std::is_same_v<T, PaprResult>) papr_block(out, v);
          else if constexpr (std::is_same_v<T, CcdfResult>) ccdf_block(out, v);
          else ber_block(out, v);
        },
        r);
  }
  return out.str();
}

void emit_report(std::span<const ResultSet> results, const std::filesystem::path& path) {
  const std::string text = render_report(results);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  f << text;
  f.close();
  if (!f) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace papr
