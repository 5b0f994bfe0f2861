#pragma once

// Run configuration: line-oriented `key = value` files with `#` comments.
// Precedence is defaults < PAPR_SHAPER_SEED < file < command-line overrides.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "papr_shaper/error.hpp"
#include "papr_shaper/ofdm.hpp"
#include "papr_shaper/pulses.hpp"

namespace papr {

struct RunConfig {
  std::size_t n_subcarriers = 64;
  int m = 4;
  std::size_t oversample = 4;
  PulseFamily pulse_family = PulseFamily::Rect;
  unsigned shape_n = 0;
  double taper_alpha = 0.5;
  double bandwidth_factor = 2.0;
  bool normalize = false;
  std::vector<double> ebn0_db_list{0.0, 2.0, 4.0, 6.0, 8.0};
  std::size_t trials = 10000;
  std::uint64_t target_errors = 200;
  std::uint64_t max_frames = 100000;
  std::uint64_t seed = 1;
  std::string output_path = ".";
  std::vector<unsigned> n_list{0, 1, 2, 4, 8, 16};
  double f_max = 20.0;
  double gamma_min_db = 0.0;
  double gamma_max_db = 14.0;
  double gamma_step_db = 0.1;
  unsigned workers = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Carries the offending key and, for file input, its 1-based line.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& reason);
  const std::string& key() const { return key_; }
  std::size_t line() const { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

using Override = std::pair<std::string, std::string>;

/// Every accepted key, in serialization order.
std::span<const std::string_view> config_keys();

/// Applies PAPR_SHAPER_SEED (if set) to `base`.
RunConfig apply_environment(RunConfig base);

RunConfig parse_config(std::string_view file_contents, std::span<const Override> overrides,
                       RunConfig base = RunConfig{});

/// Writes every key so that parse_config(serialize_config(c), {}) == c.
std::string serialize_config(const RunConfig& cfg);

PulseDescriptor pulse_descriptor(const RunConfig& cfg);
OfdmConfig ofdm_config(const RunConfig& cfg);

}  // namespace papr
