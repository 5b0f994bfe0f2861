// papr-shaper: pulse-shaped OFDM experiments from the command line.
//
//   papr-shaper <xcorr|papr|ccdf|ber|sweep> [--config FILE] [--<key> VALUE]...

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "papr_shaper/config.hpp"
#include "papr_shaper/dispatch.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pulse-shaped OFDM: crosscorrelation, PAPR, CCDF and BER experiments"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::map<std::string, std::string> values;
  for (std::string_view name : papr::kSubcommands) {
    CLI::App* sub = app.add_subcommand(std::string(name));
    sub->add_option("--config", config_path, "key = value configuration file");
    for (std::string_view key : papr::config_keys())
      sub->add_option("--" + std::string(key), values[std::string(key)]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: cli: " << e.what() << '\n';
    return 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  std::vector<papr::Override> overrides;
  for (std::string_view key : papr::config_keys()) {
    if (chosen->count("--" + std::string(key)) > 0)
      overrides.emplace_back(std::string(key), values[std::string(key)]);
  }

  std::string file_text;
  if (!config_path.empty()) {
    std::ifstream f(config_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: config: cannot read '" << config_path << "'\n";
      return 2;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    file_text = ss.str();
  }

  papr::RunConfig cfg;
  try {
    cfg = papr::parse_config(file_text, overrides, papr::apply_environment(papr::RunConfig{}));
  } catch (const papr::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const papr::DispatchOutcome out = papr::dispatch(chosen->get_name(), cfg);
  if (out.exit_status != 0) {
    std::cerr << out.error_line << '\n';
    return out.exit_status;
  }
  for (const auto& p : out.written) std::cout << p.string() << '\n';
  return 0;
}
