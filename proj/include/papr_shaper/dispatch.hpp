#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "papr_shaper/config.hpp"
#include "papr_shaper/harness.hpp"

namespace papr {

struct XcorrResult {
  PulseDescriptor family;
  std::vector<XcorrRow> rows;
};

struct PaprRow {
  std::string method;  // exhaustive | random | coherent_bound
  double papr_linear = 0.0;
};

struct PaprResult {
  std::size_t n_subcarriers = 0;
  int m_order = 4;
  std::string pulse;
  std::vector<PaprRow> rows;
};

struct CcdfResult {
  std::size_t n_subcarriers = 0;
  std::string pulse;
  PaprExperiment experiment;
};

struct BerResult {
  std::vector<BerPoint> points;
};

using ResultSet = std::variant<XcorrResult, PaprResult, CcdfResult, BerResult>;

/// Nine significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_float(double v);

std::string xcorr_csv(std::span<const XcorrRow> rows);
std::string metrics_csv(std::span<const XcorrRow> rows);
std::string papr_csv(std::span<const PaprRow> rows);
std::string ccdf_csv(const CcdfCurve& curve);
std::string ber_csv(std::span<const BerPoint> points);

/// Plain-text summary of a set of results. Same input, same text.
/// Throws Precondition for an empty list.
std::string render_report(std::span<const ResultSet> results);

/// Writes render_report(results) to `path`. Throws Io when unwritable.
void emit_report(std::span<const ResultSet> results, const std::filesystem::path& path);

inline const std::vector<std::string_view> kSubcommands{"xcorr", "papr", "ccdf", "ber", "sweep"};

struct DispatchOutcome {
  int exit_status = 0;
  std::vector<std::filesystem::path> written;
  std::string error_line;  // "error: <key>: <reason>" when exit_status != 0
};

/// Runs one subcommand and writes its CSVs plus summary.txt into
/// cfg.output_path. Never throws; failures come back as a nonzero status.
DispatchOutcome dispatch(std::string_view subcommand, const RunConfig& cfg);

}  // namespace papr
