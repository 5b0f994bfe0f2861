#include "papr_shaper/dispatch.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace papr {

std::string format_float(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string xcorr_csv(std::span<const XcorrRow> rows) {
  std::ostringstream out;
  out << "n,f_over_invT,rho_re,rho_im,rho_abs\n";
  for (const XcorrRow& r : rows) {
    for (std::size_t j = 0; j < r.curve.freq.size(); ++j) {
      const cplx rho = r.curve.rho[j];
      out << r.shape_n << ',' << format_float(r.curve.freq[j]) << ',' << format_float(rho.real())
          << ',' << format_float(rho.imag()) << ',' << format_float(std::abs(rho)) << '\n';
    }
  }
  return out.str();
}

std::string metrics_csv(std::span<const XcorrRow> rows) {
  std::ostringstream out;
  out << "n,cutoff_3db,cutoff_null,sidelobe_db,ortho_band\n";
  for (const XcorrRow& r : rows) {
    out << r.shape_n << ',' << format_float(r.metrics.cutoff_3db) << ','
        << format_float(r.metrics.cutoff_first_null) << ','
        << format_float(r.metrics.peak_sidelobe_db) << ','
        << r.metrics.orthogonality_band.value_or(-1) << '\n';
  }
  return out.str();
}

std::string papr_csv(std::span<const PaprRow> rows) {
  std::ostringstream out;
  out << "method,papr_linear,papr_db\n";
  for (const PaprRow& r : rows)
    out << r.method << ',' << format_float(r.papr_linear) << ',' << format_float(to_db(r.papr_linear))
        << '\n';
  return out.str();
}

std::string ccdf_csv(const CcdfCurve& c) {
  std::ostringstream out;
  out << "gamma_db,prob,trials\n";
  for (std::size_t j = 0; j < c.gamma_db.size(); ++j)
    out << format_float(c.gamma_db[j]) << ',' << format_float(c.prob[j]) << ',' << c.trials << '\n';
  return out.str();
}

std::string ber_csv(std::span<const BerPoint> points) {
  std::ostringstream out;
  out << "ebn0_db,m,pulse,shape_n,bits,errors,ber,ci_lo,ci_hi,seed\n";
  for (const BerPoint& p : points)
    out << format_float(p.ebn0_db) << ',' << p.m_order << ',' << p.pulse << ',' << p.shape_n << ','
        << p.bits_sent << ',' << p.bit_errors << ',' << format_float(p.ber) << ','
        << format_float(p.ci_lo) << ',' << format_float(p.ci_hi) << ',' << p.seed << '\n';
  return out.str();
}

namespace {

struct Output {
  std::filesystem::path path;
  std::string contents;
};

void write_file(const Output& o) {
  std::ofstream f(o.path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + o.path.string() + " for writing");
  f.write(o.contents.data(), static_cast<std::streamsize>(o.contents.size()));
  f.close();
  if (!f) throw Error(ErrorKind::Io, "failed writing " + o.path.string());
}

std::string pulse_label(const RunConfig& cfg) { return std::string(family_name(cfg.pulse_family)); }

std::vector<double> gamma_grid(const RunConfig& cfg) {
  return db_grid(cfg.gamma_min_db, cfg.gamma_max_db, cfg.gamma_step_db);
}

ResultSet run(std::string_view sub, const RunConfig& cfg, std::vector<Output>& outputs) {
  const std::filesystem::path dir(cfg.output_path);
  if (sub == "xcorr") {
    XcorrResult r;
    r.family = pulse_descriptor(cfg);
    r.rows = run_xcorr_report(r.family, cfg.n_list, ofdm_config(cfg).grid(), cfg.f_max);
    outputs.push_back({dir / "xcorr.csv", xcorr_csv(r.rows)});
    outputs.push_back({dir / "metrics.csv", metrics_csv(r.rows)});
    return r;
  }
  const OfdmConfig ofdm = ofdm_config(cfg);
  if (sub == "papr") {
    PaprResult r;
    r.n_subcarriers = cfg.n_subcarriers;
    r.m_order = cfg.m;
    r.pulse = pulse_label(cfg);
    try {
      r.rows.push_back({"exhaustive", max_papr(ofdm, ExhaustiveSearch{}, cfg.workers)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SearchSpaceTooLarge) throw;
    }
    r.rows.push_back({"random", max_papr(ofdm, RandomSearch{cfg.trials, cfg.seed}, cfg.workers)});
    r.rows.push_back({"coherent_bound", max_papr(ofdm, CoherentBound{})});
    outputs.push_back({dir / "papr.csv", papr_csv(r.rows)});
    return r;
  }
  if (sub == "ccdf") {
    CcdfResult r;
    r.n_subcarriers = cfg.n_subcarriers;
    r.pulse = pulse_label(cfg);
    const auto grid = gamma_grid(cfg);
    r.experiment = run_papr_experiment(ofdm, cfg.trials, cfg.seed, grid, cfg.workers);
    outputs.push_back({dir / "ccdf.csv", ccdf_csv(r.experiment.ccdf)});
    return r;
  }
  if (sub == "ber" || sub == "sweep") {
    BerResult r;
    const std::vector<int> orders =
        sub == "ber" ? std::vector<int>{cfg.m} : std::vector<int>{4, 8, 16, 32};
    for (int m : orders) {
      SweepPlan plan;
      plan.cfg = ofdm;
      plan.cfg.m_order = m;
      plan.ebn0_db_list = cfg.ebn0_db_list;
      plan.target_errors = cfg.target_errors;
      plan.max_frames = cfg.max_frames;
      plan.master_seed = cfg.seed;
      auto pts = run_ber_sweep(plan, cfg.workers);
      r.points.insert(r.points.end(), pts.begin(), pts.end());
    }
    outputs.push_back({dir / "ber.csv", ber_csv(r.points)});
    return r;
  }
  throw ConfigError("subcommand", 0, "unknown subcommand '" + std::string(sub) + "'");
}

}  // namespace

DispatchOutcome dispatch(std::string_view subcommand, const RunConfig& cfg) {
  DispatchOutcome outcome;
  try {
    std::vector<Output> outputs;
    const ResultSet result = run(subcommand, cfg, outputs);
    const std::filesystem::path dir(cfg.output_path);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
      throw ConfigError("output_path", 0, "cannot create directory '" + cfg.output_path + "'");
    const ResultSet one[] = {result};
    outputs.push_back({dir / "summary.txt", render_report(one)});
    for (const Output& o : outputs) {
      try {
        write_file(o);
      } catch (const Error& e) {
        throw ConfigError("output_path", 0, e.what());
      }
      outcome.written.push_back(o.path);
    }
  } catch (const ConfigError& e) {
    outcome.exit_status = 2;
    outcome.error_line = std::string("error: ") + e.what();
  } catch (const Error& e) {
    outcome.exit_status = 1;
    outcome.error_line = "error: " + std::string(error_kind_name(e.kind())) + ": " + e.what();
  } catch (const std::exception& e) {
    outcome.exit_status = 1;
    outcome.error_line = std::string("error: internal: ") + e.what();
  }
  return outcome;
}

}  // namespace papr
