#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace affbuild::cli {

struct Outcome {
  nlohmann::json result = nlohmann::json::object();
  bool passed = true;
  std::vector<std::string> summary;
  /// Library verifications this run went through, in call order.
  std::vector<std::string> checks;
};

/// Runs cfg.subcommand / cfg.action. Throws ParseError or Error on bad input.
Outcome run_command(const RunConfig& cfg);

/// The JSON report: command, seed, samples, verdict, checks and result.
nlohmann::json make_report(const RunConfig& cfg, const Outcome& out);

/// One configuration per subcommand action over built-in inputs, in a fixed
/// order; every sampled check is driven by `seed`.
std::vector<RunConfig> suite_configs(std::uint64_t seed);
/// Reports of the whole suite, in order; SVG text is embedded.
nlohmann::json run_suite(std::uint64_t seed);

}  // namespace affbuild::cli
