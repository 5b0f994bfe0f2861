#include "papr_shaper/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

namespace papr {
namespace {

constexpr std::array<std::string_view, 20> kKeys{
    "n_subcarriers", "m",            "oversample",   "pulse_family",  "shape_n",
    "taper_alpha",   "bandwidth_factor", "normalize", "ebn0_db_list", "trials",
    "target_errors", "max_frames",   "seed",         "output_path",   "n_list",
    "f_max",         "gamma_min_db", "gamma_max_db", "gamma_step_db", "workers"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_unsigned(std::string_view key, std::size_t line, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(std::string(key), line, "expected a nonnegative integer, got '" + std::string(v) + "'");
  if (out > static_cast<std::uint64_t>(std::numeric_limits<T>::max()))
    throw ConfigError(std::string(key), line, "value out of range");
  return static_cast<T>(out);
}

int parse_int(std::string_view key, std::size_t line, std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(std::string(key), line, "expected an integer, got '" + std::string(v) + "'");
  return out;
}

double parse_double(std::string_view key, std::size_t line, std::string_view v) {
  // from_chars rejects a leading '+'.
  std::string_view body = v;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
  if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size() || std::isnan(out))
    throw ConfigError(std::string(key), line, "expected a number, got '" + std::string(v) + "'");
  return out;
}

bool parse_bool(std::string_view key, std::size_t line, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(std::string(key), line, "expected a boolean, got '" + std::string(v) + "'");
}

template <class F>
auto parse_list(std::string_view key, std::size_t line, std::string_view v, F parse_one) {
  std::vector<decltype(parse_one(key, line, v))> out;
  if (trim(v).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = v.find(',', start);
    const auto item = trim(v.substr(start, comma == std::string_view::npos ? v.size() - start : comma - start));
    out.push_back(parse_one(key, line, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void assign(RunConfig& c, std::string_view key, std::string_view v, std::size_t line) {
  if (key == "n_subcarriers") c.n_subcarriers = parse_unsigned<std::size_t>(key, line, v);
  else if (key == "m") c.m = parse_int(key, line, v);
  else if (key == "oversample") c.oversample = parse_unsigned<std::size_t>(key, line, v);
  else if (key == "pulse_family") {
    const auto f = parse_family(v);
    if (!f) throw ConfigError(std::string(key), line, "unknown family '" + std::string(v) + "' (rect, sine, taper, sinc)");
    c.pulse_family = *f;
  } else if (key == "shape_n") c.shape_n = parse_unsigned<unsigned>(key, line, v);
  else if (key == "taper_alpha") c.taper_alpha = parse_double(key, line, v);
  else if (key == "bandwidth_factor") c.bandwidth_factor = parse_double(key, line, v);
  else if (key == "normalize") c.normalize = parse_bool(key, line, v);
  else if (key == "ebn0_db_list") c.ebn0_db_list = parse_list(key, line, v, parse_double);
  else if (key == "trials") c.trials = parse_unsigned<std::size_t>(key, line, v);
  else if (key == "target_errors") c.target_errors = parse_unsigned<std::uint64_t>(key, line, v);
  else if (key == "max_frames") c.max_frames = parse_unsigned<std::uint64_t>(key, line, v);
  else if (key == "seed") c.seed = parse_unsigned<std::uint64_t>(key, line, v);
  else if (key == "output_path") c.output_path = std::string(v);
  else if (key == "n_list") c.n_list = parse_list(key, line, v, parse_unsigned<unsigned>);
  else if (key == "f_max") c.f_max = parse_double(key, line, v);
  else if (key == "gamma_min_db") c.gamma_min_db = parse_double(key, line, v);
  else if (key == "gamma_max_db") c.gamma_max_db = parse_double(key, line, v);
  else if (key == "gamma_step_db") c.gamma_step_db = parse_double(key, line, v);
  else if (key == "workers") c.workers = parse_unsigned<unsigned>(key, line, v);
  else throw ConfigError(std::string(key), line, "unknown key");
}

void check(bool ok, std::string_view key, const std::map<std::string, std::size_t>& lines,
           const std::string& reason) {
  if (ok) return;
  const auto it = lines.find(std::string(key));
  throw ConfigError(std::string(key), it == lines.end() ? 0 : it->second, reason);
}

void validate(const RunConfig& c, const std::map<std::string, std::size_t>& lines) {
  check(c.n_subcarriers >= 1, "n_subcarriers", lines, "must be >= 1");
  check(is_supported_order(c.m), "m", lines, "must be one of 4, 8, 16, 32");
  check(c.oversample >= kMinOversample, "oversample", lines, "must be >= 4");
  check(std::isfinite(c.taper_alpha) && c.taper_alpha >= 0.0 && c.taper_alpha <= 1.0,
        "taper_alpha", lines, "must lie in [0, 1]");
  check(std::isfinite(c.bandwidth_factor) && c.bandwidth_factor > 0.0, "bandwidth_factor", lines,
        "must be finite and > 0");
  check(!c.ebn0_db_list.empty(), "ebn0_db_list", lines, "must not be empty");
  check(std::is_sorted(c.ebn0_db_list.begin(), c.ebn0_db_list.end()), "ebn0_db_list", lines,
        "must be ascending");
  check(c.trials >= 1, "trials", lines, "must be >= 1");
  check(c.target_errors >= 1, "target_errors", lines, "must be >= 1");
  check(c.max_frames >= 1, "max_frames", lines, "must be >= 1");
  check(!c.output_path.empty(), "output_path", lines, "must not be empty");
  check(!c.n_list.empty(), "n_list", lines, "must not be empty");
  check(std::isfinite(c.f_max) && c.f_max >= 1.0, "f_max", lines, "must be finite and >= 1");
  check(std::isfinite(c.gamma_min_db), "gamma_min_db", lines, "must be finite");
  check(std::isfinite(c.gamma_max_db) && c.gamma_max_db >= c.gamma_min_db, "gamma_max_db", lines,
        "must be finite and >= gamma_min_db");
  check(std::isfinite(c.gamma_step_db) && c.gamma_step_db > 0.0, "gamma_step_db", lines,
        "must be finite and > 0");
  check(c.workers >= 1 && c.workers <= 256, "workers", lines, "must lie in [1, 256]");
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += f(xs[i]);
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string key, std::size_t line, const std::string& reason)
    : Error(ErrorKind::Config,
            key + ": " + (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + reason),
      key_(std::move(key)),
      line_(line) {}

std::span<const std::string_view> config_keys() {
  return kKeys;
}

RunConfig apply_environment(RunConfig base) {
  if (const char* env = std::getenv("PAPR_SHAPER_SEED")) {
    base.seed = parse_unsigned<std::uint64_t>("PAPR_SHAPER_SEED", 0, trim(env));
  }
  return base;
}

RunConfig parse_config(std::string_view text, std::span<const Override> overrides,
                       RunConfig base) {
  RunConfig c = std::move(base);
  std::map<std::string, std::size_t> lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(line), line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    assign(c, key, trim(line.substr(eq + 1)), line_no);
    lines[std::string(key)] = line_no;
  }
  for (const auto& [key, value] : overrides) {
    assign(c, trim(key), trim(value), 0);
    lines.erase(std::string(trim(key)));
  }
  validate(c, lines);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "n_subcarriers = " << c.n_subcarriers << '\n'
      << "m = " << c.m << '\n'
      << "oversample = " << c.oversample << '\n'
      << "pulse_family = " << family_name(c.pulse_family) << '\n'
      << "shape_n = " << c.shape_n << '\n'
      << "taper_alpha = " << num(c.taper_alpha) << '\n'
      << "bandwidth_factor = " << num(c.bandwidth_factor) << '\n'
      << "normalize = " << (c.normalize ? "true" : "false") << '\n'
      << "ebn0_db_list = " << join(c.ebn0_db_list, num) << '\n'
      << "trials = " << c.trials << '\n'
      << "target_errors = " << c.target_errors << '\n'
      << "max_frames = " << c.max_frames << '\n'
      << "seed = " << c.seed << '\n'
      << "output_path = " << c.output_path << '\n'
      << "n_list = " << join(c.n_list, [](unsigned v) { return std::to_string(v); }) << '\n'
      << "f_max = " << num(c.f_max) << '\n'
      << "gamma_min_db = " << num(c.gamma_min_db) << '\n'
      << "gamma_max_db = " << num(c.gamma_max_db) << '\n'
      << "gamma_step_db = " << num(c.gamma_step_db) << '\n'
      << "workers = " << c.workers << '\n';
  return out.str();
}

PulseDescriptor pulse_descriptor(const RunConfig& c) {
  PulseDescriptor d;
  d.family = c.pulse_family;
  d.shape_n = c.shape_n;
  d.taper_alpha = c.taper_alpha;
  d.bandwidth_factor = c.bandwidth_factor;
  d.normalize_energy = c.normalize;
  return d;
}

OfdmConfig ofdm_config(const RunConfig& c) {
  OfdmConfig o;
  o.n_subcarriers = c.n_subcarriers;
  o.m_order = c.m;
  o.oversample = c.oversample;
  o.pulse_assignment = UniformPulse{pulse_descriptor(c)};
  return o;
}

}  // namespace papr
