#pragma once

// Loading inputs for the command line tool: JSON matrices and embeddings,
// TOML apartment configs.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "affbuild/apartment_morphism.hpp"
#include "affbuild/lattice_building.hpp"
#include "affbuild/weyl_extension.hpp"

namespace affbuild::cli {

struct RunConfig {
  std::string subcommand;
  std::string action;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::string report_path;
  std::string svg_path;

  std::string tag;
  std::size_t rank = 2;
  std::size_t lambda_rank = 1;
  std::size_t n = 2;
  std::size_t m = 2;
  std::string instance;
  std::string valuation;
  std::string preset;

  // Input paths and inline values.
  std::string input;
  std::string config;
  std::string embed;
  std::string matrix;
  std::string basis;
  std::string other;
  std::string norm;
  std::string point;
  std::string vector;
  std::string element;

  double extent = 200;
  bool labels = false;
};

nlohmann::json read_json_file(const std::string& path);
/// A file path when it exists, otherwise inline JSON text.
nlohmann::json read_json_arg(const std::string& arg);

/// A JSON file, or a shipped embedding by name (with or without ".json").
EmbeddedPair load_embedding(const std::string& arg);

RootSystem load_root_system(const RunConfig& cfg);

/// [root_system] tag, rank or file; [lambda] rank; [translations] mode and
/// generators (one array of coordinates per generator).
std::shared_ptr<const ModelApartment> load_apartment_toml(const std::string& path);
std::shared_ptr<const ModelApartment> load_apartment(const RunConfig& cfg);

/// {"source": apartment, "target": apartment, "L", "gamma", "sigma_s"} where an
/// apartment is {"root_system": {...}, "lambda_rank": k}.
ApartmentMorphism apartment_morphism_from_json(const nlohmann::json& j);

OrderedGroupMorphism gamma_preset(const std::string& name);

ValuationSpec load_valuation(const RunConfig& cfg, const std::string& fallback);

}  // namespace affbuild::cli
