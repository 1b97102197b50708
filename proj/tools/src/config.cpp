#include "config.hpp"

#include <filesystem>
#include <fstream>

#include <toml.hpp>

namespace affbuild::cli {

namespace {

nlohmann::json toml_to_json(const toml::node& node) {
  if (const auto* arr = node.as_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : *arr) out.push_back(toml_to_json(e));
    return out;
  }
  if (const auto* s = node.as_string()) return s->get();
  if (const auto* i = node.as_integer()) return i->get();
  const auto& src = node.source().begin;
  throw ParseError("expected a string, integer or array",
                   "line " + std::to_string(src.line) + ", column " + std::to_string(src.column));
}

std::shared_ptr<const ModelApartment> apartment_from_json(const nlohmann::json& j) {
  return std::make_shared<const ModelApartment>(root_system_from_json(j.at("root_system")),
                                                j.value("lambda_rank", std::size_t{1}));
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), path);
  }
}

nlohmann::json read_json_arg(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return read_json_file(arg);
  try {
    return nlohmann::json::parse(arg);
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError("neither a file nor valid JSON", arg);
  }
}

EmbeddedPair load_embedding(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    try {
      return embedded_pair_from_json(read_json_file(arg));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed embedding: ") + e.what(), arg);
    }
  }
  const std::string name = std::filesystem::path(arg).stem().string();
  for (const auto& known : named_embeddings())
    if (known == name) return named_embedding(name);
  throw ParseError("unknown embedding", arg);
}

RootSystem load_root_system(const RunConfig& cfg) {
  if (!cfg.input.empty()) return root_system_from_json(read_json_arg(cfg.input));
  if (cfg.tag.empty()) throw ParseError("give --tag or --input", "");
  return RootSystem::standard(parse_tag(cfg.tag), cfg.rank);
}

std::shared_ptr<const ModelApartment> load_apartment_toml(const std::string& path) {
  toml::table t;
  try {
    t = toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    throw ParseError(std::string("invalid TOML: ") + std::string(e.description()), path);
  }
  RootSystem system = [&] {
    if (auto file = t["root_system"]["file"].value<std::string>()) return root_system_from_json(read_json_file(*file));
    const auto tag = t["root_system"]["tag"].value<std::string>();
    if (!tag) throw ParseError("missing root_system.tag", path);
    return RootSystem::standard(parse_tag(*tag), t["root_system"]["rank"].value_or<std::int64_t>(2));
  }();
  const std::size_t k = t["lambda"]["rank"].value_or<std::int64_t>(1);
  const std::string mode = t["translations"]["mode"].value_or<std::string>("full");
  if (mode == "full") return std::make_shared<const ModelApartment>(std::move(system), k);
  if (mode != "generated") throw ParseError("translation mode must be full or generated", mode);
  const toml::array* gens = t["translations"]["generators"].as_array();
  if (!gens) throw ParseError("generated translations need a generators array", path);
  std::vector<ApartmentPoint> points;
  for (const auto& g : *gens) points.push_back(apartment_point_from_json(toml_to_json(g), k));
  return std::make_shared<const ModelApartment>(std::move(system), k, std::move(points));
}

std::shared_ptr<const ModelApartment> load_apartment(const RunConfig& cfg) {
  if (!cfg.config.empty()) return load_apartment_toml(cfg.config);
  return std::make_shared<const ModelApartment>(load_root_system(cfg), cfg.lambda_rank);
}

ApartmentMorphism apartment_morphism_from_json(const nlohmann::json& j) {
  try {
    ApartmentMorphism m;
    m.source = apartment_from_json(j.at("source"));
    m.target = apartment_from_json(j.at("target"));
    m.L = rational_matrix_from_json(j.at("L"));
    m.gamma = ordered_group_morphism_from_json(j.at("gamma"));
    m.sigma_s = j.at("sigma_s").get<std::vector<std::size_t>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed morphism: ") + e.what(), j.dump());
  }
}

OrderedGroupMorphism gamma_preset(const std::string& name) {
  if (name == "pr1") return OrderedGroupMorphism::first_projection(2);
  if (name == "identity") return OrderedGroupMorphism::identity(2);
  if (name == "swap") return OrderedGroupMorphism(RationalMatrix{{0, 1}, {1, 0}});
  if (name == "inclusion") return OrderedGroupMorphism::inclusion(1, 2);
  if (name == "negate") return OrderedGroupMorphism(RationalMatrix{{-1, 0}, {0, -1}});
  throw ParseError("unknown gamma preset", name);
}

ValuationSpec load_valuation(const RunConfig& cfg, const std::string& fallback) {
  return parse_valuation_spec(cfg.valuation.empty() ? fallback : cfg.valuation);
}

}  // namespace affbuild::cli
