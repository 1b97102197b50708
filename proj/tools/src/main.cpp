#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using affbuild::cli::RunConfig;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void common_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--seed", cfg.seed, "Seed for all sampled checks")->capture_default_str();
  app->add_option("--samples", cfg.samples, "Sample count")->capture_default_str();
  app->add_option("--report", cfg.report_path, "Write the JSON report here");
}

void system_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--tag", cfg.tag, "Root system tag: A, B, C, D, G2");
  app->add_option("--rank", cfg.rank, "Root system rank")->capture_default_str();
  app->add_option("--input", cfg.input, "JSON file (or inline JSON)");
}

CLI::App* action(CLI::App* parent, RunConfig& cfg, const std::string& name, const std::string& help) {
  CLI::App* a = parent->add_subcommand(name, help);
  a->callback([&cfg, parent, name] {
    cfg.subcommand = parent->get_name();
    cfg.action = name;
  });
  common_options(a, cfg);
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Exact computations with affine buildings, their apartments and morphisms", "affbuild"};
  app.require_subcommand(1);

  auto* rootsys = app.add_subcommand("rootsys", "Root systems")->require_subcommand(1);
  system_options(action(rootsys, cfg, "verify", "Check the root system axioms"), cfg);

  auto* weyl = app.add_subcommand("weyl", "Weyl groups")->require_subcommand(1);
  system_options(action(weyl, cfg, "enumerate", "Enumerate the Weyl group by closure"), cfg);
  action(weyl, cfg, "sigma", "Extend the sub Weyl group into the ambient one")
      ->add_option("--embed", cfg.embed, "Embedding JSON or shipped name")
      ->required();

  auto* apartment = app.add_subcommand("apartment", "Model apartments")->require_subcommand(1);
  auto* apt_check = action(apartment, cfg, "check", "Sampled affine Weyl group checks");
  system_options(apt_check, cfg);
  apt_check->add_option("--config", cfg.config, "Apartment TOML config");
  apt_check->add_option("--k", cfg.lambda_rank, "Rank of the value group")->capture_default_str();

  auto* morphism = app.add_subcommand("morphism", "Morphisms of apartments")->require_subcommand(1);
  action(morphism, cfg, "check-triangle", "Decide the chamber compatibility condition")
      ->add_option("--embed", cfg.embed, "Embedding JSON or shipped name")
      ->required();
  auto* verify = action(morphism, cfg, "verify", "Verify an apartment morphism");
  system_options(verify, cfg);
  verify->add_option("--instance", cfg.instance, "identity, inversion or lambda-change");
  verify->add_option("--embed", cfg.embed, "Morphism induced by an embedding");
  verify->add_option("--config", cfg.config, "Source apartment TOML config");
  verify->add_option("--k", cfg.lambda_rank, "Rank of the value group")->capture_default_str();
  verify->add_option("--gamma", cfg.preset, "Gamma preset for lambda-change: pr1, identity, swap, negate");
  auto* order = action(morphism, cfg, "order", "Decide whether gamma preserves the order");
  order->add_option("--gamma", cfg.preset, "Preset: pr1, identity, swap, inclusion, negate");
  order->add_option("--input", cfg.input, "Gamma as a JSON matrix");

  auto* lattice = app.add_subcommand("lattice", "The lattice building")->require_subcommand(1);
  auto valuation = [&](CLI::App* a) { a->add_option("--valuation", cfg.valuation, "degree, lex or first-variable"); };
  auto* canon = action(lattice, cfg, "canon", "Canonical form of a lattice class");
  canon->add_option("--matrix", cfg.matrix, "Basis as JSON matrix")->required();
  valuation(canon);
  auto* lchart = action(lattice, cfg, "chart", "Evaluate a chart f_E at a point");
  lchart->add_option("--basis", cfg.basis, "Chart basis E (default identity)");
  lchart->add_option("--point", cfg.point, "Point as JSON array")->required();
  lchart->add_option("--n", cfg.n, "Dimension when no basis is given")->capture_default_str();
  valuation(lchart);
  auto* lstab = action(lattice, cfg, "stab", "Stabilizer of [L_0]; sampled when no matrix is given");
  lstab->add_option("--matrix", cfg.matrix, "Group element as JSON matrix");
  lstab->add_option("--n", cfg.n, "Dimension for sampling")->capture_default_str();
  valuation(lstab);
  auto* common = action(lattice, cfg, "common-apartment", "Chart containing two classes");
  common->add_option("--first", cfg.matrix, "First lattice basis")->required();
  common->add_option("--second", cfg.other, "Second lattice basis")->required();
  valuation(common);
  auto* lval = action(lattice, cfg, "valuation", "Valuation axioms and an optional element");
  lval->add_option("--element", cfg.element, "Field element");
  valuation(lval);
  auto* lself = action(lattice, cfg, "selfcheck", "Sampled chart, diagonal and coset checks");
  lself->add_option("--n", cfg.n, "Dimension")->capture_default_str();
  valuation(lself);

  auto* norm = app.add_subcommand("norm", "The norm building")->require_subcommand(1);
  auto* neval = action(norm, cfg, "eval", "Evaluate an adapted norm");
  neval->add_option("--norm", cfg.norm, "Norm {basis, weights}")->required();
  neval->add_option("--vector", cfg.vector, "Vector as JSON array")->required();
  valuation(neval);
  auto* nchart = action(norm, cfg, "chart", "Norm chart at a point");
  nchart->add_option("--basis", cfg.basis, "Chart basis E (default identity)");
  nchart->add_option("--point", cfg.point, "Point as JSON array")->required();
  nchart->add_option("--n", cfg.n, "Dimension when no basis is given")->capture_default_str();
  valuation(nchart);
  auto* ncompare = action(norm, cfg, "compare", "Class equality of two norms");
  ncompare->add_option("--norm", cfg.norm, "First norm")->required();
  ncompare->add_option("--other", cfg.other, "Second norm")->required();
  valuation(ncompare);
  auto* nstab = action(norm, cfg, "stab", "Stabilizer of eta_x; sampled when no matrix is given");
  nstab->add_option("--matrix", cfg.matrix, "Group element as JSON matrix");
  nstab->add_option("--point", cfg.point, "Point as JSON array");
  nstab->add_option("--n", cfg.n, "Dimension for sampling")->capture_default_str();
  valuation(nstab);

  auto* building = app.add_subcommand("building", "Morphisms of G-buildings")->require_subcommand(1);
  auto* bcheck = action(building, cfg, "check", "Certify a building morphism instance");
  bcheck->add_option("--instance", cfg.instance, "field-change, block-embed, inversion, identity, broken-tau")
      ->required();
  bcheck->add_option("--n", cfg.n, "Target dimension")->capture_default_str();
  bcheck->add_option("--m", cfg.m, "Source dimension for block-embed")->capture_default_str();
  valuation(bcheck);

  auto* render = app.add_subcommand("render", "Draw a rank-two root system or embedding as SVG");
  render->callback([&cfg] { cfg.subcommand = "render"; });
  common_options(render, cfg);
  system_options(render, cfg);
  render->add_option("--embed", cfg.embed, "Embedding JSON or shipped name");
  render->add_option("--svg", cfg.svg_path, "Output SVG path")->required();
  render->add_option("--extent", cfg.extent, "Half width of the drawing in pixels")->capture_default_str();
  render->add_flag("--labels", cfg.labels, "Label the roots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const affbuild::cli::Outcome out = affbuild::cli::run_command(cfg);
    for (const auto& line : out.summary) std::cout << line << '\n';
    std::cout << (out.passed ? "PASS" : "FAIL") << '\n';
    if (!cfg.report_path.empty()) {
      std::ofstream f(cfg.report_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << cfg.report_path << '\n';
        return kUsage;
      }
      f << affbuild::cli::make_report(cfg, out).dump(2) << '\n';
    }
    return out.passed ? kPass : kFail;
  } catch (const affbuild::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const affbuild::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kUsage;
  }
}
