#include "commands.hpp"

#include <fstream>
#include <random>

#include "affbuild/building_morphisms.hpp"
#include "affbuild/norm_building.hpp"
#include "render.hpp"

namespace affbuild::cli {

namespace {

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

void add_report(Outcome& out, const std::string& check, const CheckReport& r) {
  out.checks.push_back(check);
  out.result["reports"].push_back(to_json(r));
  out.passed = out.passed && r.passed();
  out.summary.push_back(r.name + ": " + verdict(r.passed()) + " (" + std::to_string(r.samples) + " samples)");
}

FieldVector field_vector_from_json(const nlohmann::json& j, FieldKind kind) {
  if (!j.is_array()) throw ParseError("expected an array of field elements", j.dump());
  FieldVector v;
  for (const auto& e : j) {
    if (e.is_number_integer()) v.emplace_back(Rational(e.get<long>()));
    else if (e.is_string()) v.push_back(parse_field_element(e.get<std::string>(), kind));
    else throw ParseError("field element must be a string or integer", e.dump());
  }
  return v;
}

nlohmann::json field_vector_json(const FieldVector& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : v) j.push_back(x.str());
  return j;
}

FieldMatrix load_matrix(const std::string& arg, FieldKind kind) {
  if (arg.empty()) throw ParseError("missing matrix argument", "");
  return field_matrix_from_json(read_json_arg(arg), kind);
}

ApartmentPoint load_point(const std::string& arg, std::size_t lambda_rank, std::size_t dim) {
  if (arg.empty()) throw ParseError("missing --point", "");
  const nlohmann::json j = read_json_arg(arg);
  if (!j.is_array()) throw ParseError("a point is an array of coordinates", j.dump());
  ApartmentPoint x = apartment_point_from_json(j, lambda_rank);
  if (x.dim() != dim) throw ParseError("point needs " + std::to_string(dim) + " coordinates", j.dump());
  return x;
}

std::size_t square_size(const FieldMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 2) throw ParseError("expected a square matrix of size at least 2", "");
  return m.rows();
}

// --- rootsys, weyl ---------------------------------------------------------

Outcome rootsys_verify(const RunConfig& cfg) {
  Outcome out;
  const RootSystem rs = load_root_system(cfg);
  const AxiomReport ax = rs.verify_axioms();
  out.checks.push_back("verify_axioms");
  out.passed = ax.passed();
  out.result = {{"system", to_json(rs)},
                {"roots", rs.size()},
                {"positive_roots", rs.positive_indices().size()},
                {"rank", rs.rank()},
                {"axioms",
                 {{"finite_nonzero", ax.finite_nonzero},
                  {"reflection_closed", ax.reflection_closed},
                  {"integral_pairings", ax.integral_pairings},
                  {"reduced", ax.reduced},
                  {"gram_positive_definite", ax.gram_positive_definite},
                  {"base_valid", ax.base_valid},
                  {"witness", ax.witness},
                  {"verdict", verdict(ax.passed())}}}};
  out.summary.push_back(rs.name() + ": " + std::to_string(rs.size()) + " roots, axioms " + verdict(ax.passed()));
  return out;
}

Outcome weyl_enumerate(const RunConfig& cfg) {
  Outcome out;
  const RootSystem rs = load_root_system(cfg);
  const WeylGroup w = enumerate_weyl_group(rs);
  out.checks.push_back("enumerate_weyl_group");
  // Independent closure checks: every element permutes the roots and the
  // product of any two elements is listed.
  CheckReport closure("weyl-closure/" + rs.name());
  for (std::size_t i = 0; i < w.size(); ++i) {
    ++closure.samples;
    for (const auto& r : rs.roots())
      if (!rs.index_of(w[i].matrix * r)) closure.fail("element " + std::to_string(i) + " does not permute roots");
    for (std::size_t j = 0; j < w.size(); ++j)
      if (!w.index_of(w[i].matrix * w[j].matrix))
        closure.fail("product of " + std::to_string(i) + " and " + std::to_string(j) + " missing");
  }
  nlohmann::json elems = nlohmann::json::array();
  for (const auto& e : w.elements()) elems.push_back({{"word", e.word}, {"matrix", to_json(e.matrix)}});
  out.result = {{"system", rs.name()}, {"order", w.size()}, {"elements", elems}};
  add_report(out, "weyl_closure", closure);
  out.summary.insert(out.summary.begin(), "W(" + rs.name() + "): " + std::to_string(w.size()) + " elements");
  return out;
}

Outcome weyl_sigma(const RunConfig& cfg) {
  Outcome out;
  const EmbeddedPair pair = load_embedding(cfg.embed);
  out.result["embedding"] = to_json(pair);
  try {
    const Vector p = find_v_regular_point(pair);
    out.checks.push_back("find_v_regular_point");
    out.result["v_regular_point"] = to_json(p);
    const SigmaTable s = construct_sigma(pair);
    out.checks.push_back("construct_sigma");
    out.result["sigma"] = to_json(s);
    out.passed = s.homomorphism && s.injective && s.restricts;
    out.summary.push_back(pair.name + ": sigma " + verdict(out.passed) + ", image " + std::to_string(s.image_size) +
                          " of " + std::to_string(pair.ambient_weyl.size()));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    out.passed = false;
    out.result["error"] = e.what();
    out.summary.push_back(pair.name + ": sigma not constructed: " + e.what());
  }
  return out;
}

// --- apartment -------------------------------------------------------------

Outcome apartment_check(const RunConfig& cfg) {
  Outcome out;
  const auto apt = load_apartment(cfg);
  std::mt19937_64 rng(cfg.seed);
  CheckReport r("apartment-group-law/" + apt->system().name());
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    const AffineWeylElement a = apt->random_element(rng, 3), b = apt->random_element(rng, 3);
    const ApartmentPoint x = apt->random_point(rng, 3);
    ++r.samples;
    if (!(apt->act(apt->multiply(a, b), x) == apt->act(a, apt->act(b, x)))) r.fail("(ab)x != a(bx) at x=" + x.str());
    if (!(apt->multiply(a, apt->inverse(a)) == apt->identity())) r.fail("a a^-1 != 1 at t=" + a.translation.str());
    if (!apt->in_translations(apt->random_translation(rng, 3))) r.fail("sampled translation outside T");
    const std::size_t alpha = std::uniform_int_distribution<std::size_t>(0, apt->system().size() - 1)(rng);
    const LexValue k_wall = apt->pairing_root(x, alpha);
    const AffineWeylElement refl = apt->wall_reflection(alpha, k_wall);
    if (!(apt->act(refl, x) == x)) r.fail("wall reflection moves a point of its wall: x=" + x.str());
    const ApartmentPoint y = apt->random_point(rng, 3);
    if (!(apt->act(refl, apt->act(refl, y)) == y)) r.fail("wall reflection is not an involution at y=" + y.str());
  }
  out.result["apartment"] = to_json(*apt);
  add_report(out, "apartment_group_law", r);
  return out;
}

// --- morphism --------------------------------------------------------------

Outcome morphism_triangle(const RunConfig& cfg) {
  Outcome out;
  const EmbeddedPair pair = load_embedding(cfg.embed);
  const TriangleReport tr = check_condition_triangle(pair);
  out.checks.push_back("check_condition_triangle");
  out.result = {{"embedding", pair.name}, {"triangle", to_json(tr)}};
  out.passed = tr.passed;
  if (tr.witness) {
    const bool confirmed = confirms_violation(pair, *tr.witness);
    out.checks.push_back("confirms_violation");
    out.result["witness_confirmed"] = confirmed;
    out.summary.push_back(pair.name + ": condition FAIL, witness x=" + to_json(tr.witness->x).dump() +
                          (confirmed ? " (confirmed)" : " (NOT confirmed)"));
  } else {
    const std::size_t bad = triangle_sampling_counterexamples(pair, cfg.samples, cfg.seed);
    out.checks.push_back("triangle_sampling_counterexamples");
    out.result["sampled_points"] = cfg.samples;
    out.result["sampled_counterexamples"] = bad;
    out.passed = bad == 0;
    out.summary.push_back(pair.name + ": condition PASS, " + std::to_string(bad) + " counterexamples in " +
                          std::to_string(cfg.samples) + " samples");
  }
  return out;
}

ApartmentMorphism morphism_from_config(const RunConfig& cfg) {
  if (!cfg.input.empty()) return apartment_morphism_from_json(read_json_arg(cfg.input));
  if (!cfg.embed.empty()) {
    const EmbeddedPair pair = load_embedding(cfg.embed);
    return build_apartment_morphism_from_embedding(pair, construct_sigma(pair),
                                                   OrderedGroupMorphism::identity(cfg.lambda_rank));
  }
  const std::string inst = cfg.instance.empty() ? "identity" : cfg.instance;
  if (inst == "lambda-change")
    return lambda_change_morphism(load_root_system(cfg), gamma_preset(cfg.preset.empty() ? "pr1" : cfg.preset));
  const auto apt = load_apartment(cfg);
  if (inst == "identity") return identity_morphism(apt);
  if (inst == "inversion") return inversion_morphism(apt);
  throw ParseError("unknown morphism instance", inst);
}

Outcome morphism_verify(const RunConfig& cfg) {
  Outcome out;
  const ApartmentMorphism m = morphism_from_config(cfg);
  const MorphismReport r = verify_morphism(m, cfg.samples, cfg.seed);
  const MorphismFlags f = flags(m);
  out.checks = {"verify_morphism", "flags"};
  out.passed = r.passed();
  out.result = {{"morphism", to_json(m)},
                {"report", to_json(r)},
                {"flags",
                 {{"injective", f.injective},
                  {"surjective", f.surjective},
                  {"sigma_injective", f.sigma_injective},
                  {"sigma_surjective", f.sigma_surjective}}}};
  out.summary.push_back(m.source->system().name() + " -> " + m.target->system().name() + ": morphism " +
                        verdict(r.passed()) + " (" + std::to_string(r.samples) + " samples)");
  return out;
}

Outcome morphism_order(const RunConfig& cfg) {
  Outcome out;
  const OrderedGroupMorphism gamma = cfg.input.empty() ? gamma_preset(cfg.preset.empty() ? "pr1" : cfg.preset)
                                                       : ordered_group_morphism_from_json(read_json_arg(cfg.input));
  const OrderCheck oc = is_order_preserving(gamma);
  out.checks.push_back("is_order_preserving");
  out.result = {{"gamma", to_json(gamma)}, {"order_preserving", oc.order_preserving}};
  bool consistent = true;
  if (oc.witness) {
    const bool verified = *oc.witness > LexValue::zero(gamma.source_rank()) &&
                          gamma(*oc.witness) < LexValue::zero(gamma.target_rank());
    out.result["witness"] = to_json(*oc.witness);
    out.result["witness_verified"] = verified;
    consistent = verified;
  }
  // Positivity oracle on seeded lexicographically positive points.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> num(-8, 8), den(1, 4);
  std::size_t violations = 0;
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    RationalVector x(gamma.source_rank());
    for (auto& c : x) c = make_rational(num(rng), den(rng));
    LexValue lx(x);
    if (lx.is_zero()) continue;
    if (lx < LexValue::zero(x.size())) lx = -lx;
    if (gamma(lx) < LexValue::zero(gamma.target_rank())) ++violations;
  }
  out.result["oracle_samples"] = cfg.samples;
  out.result["oracle_violations"] = violations;
  if (oc.order_preserving && violations > 0) consistent = false;
  out.result["consistent"] = consistent;
  out.passed = consistent && oc.order_preserving;
  out.summary.push_back(std::string("gamma ") + (oc.order_preserving ? "is" : "is not") + " order preserving; oracle " +
                        std::to_string(violations) + " violations in " + std::to_string(cfg.samples) +
                        (consistent ? ", consistent" : ", INCONSISTENT"));
  return out;
}

// --- lattice ---------------------------------------------------------------

Outcome lattice_canon(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  const FieldMatrix m = load_matrix(cfg.matrix, spec.field());
  const LatticeBuilding b(spec, square_size(m));
  const LatticeClass c = b.canonical_form(m);
  out.checks.push_back("canonical_form");
  const bool idempotent = b.canonical_form(c.canonical) == c;
  out.passed = idempotent;
  out.result = {{"class", to_json(c, spec.field())}, {"idempotent", idempotent}};
  out.summary.push_back("canonical form " + to_json(c.canonical, spec.field()).dump());
  return out;
}

Outcome lattice_chart(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  const FieldMatrix E = cfg.basis.empty() ? FieldMatrix::identity(cfg.n) : load_matrix(cfg.basis, spec.field());
  const LatticeBuilding b(spec, square_size(E));
  const ApartmentPoint x = load_point(cfg.point, spec.value_rank(), b.n() - 1);
  const LatticeClass c = b.chart_eval(E, x);
  out.checks.push_back("chart_eval");
  out.result = {{"point", to_json(x)},
                {"realizable", b.is_realizable(x)},
                {"special", b.is_special(x)},
                {"class", to_json(c, spec.field())}};
  out.summary.push_back("f_E(" + x.str() + ") = " + to_json(c.canonical, spec.field()).dump());
  return out;
}

Outcome lattice_stab(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  if (cfg.matrix.empty()) {
    add_report(out, "stab_theorem_check", stab_theorem_check(LatticeBuilding(spec, cfg.n), cfg.samples, cfg.seed));
    return out;
  }
  const FieldMatrix g = load_matrix(cfg.matrix, spec.field());
  const LatticeBuilding b(spec, square_size(g));
  const StabVerdict v = b.stab_point_membership(g);
  out.checks.push_back("stab_point_membership");
  out.passed = v.agree();
  out.result = {{"fixes_base", v.fixes}, {"entries_integral", v.integral}, {"agree", v.agree()}};
  out.summary.push_back(std::string("g ") + (v.fixes ? "fixes" : "moves") + " [L_0]; entries " +
                        (v.integral ? "" : "not ") + "in O; " + (v.agree() ? "agree" : "DISAGREE"));
  return out;
}

Outcome lattice_common(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  const FieldMatrix a = load_matrix(cfg.matrix, spec.field());
  const FieldMatrix bm = load_matrix(cfg.other, spec.field());
  const LatticeBuilding b(spec, square_size(a));
  const LatticeClass c1 = b.canonical_form(a), c2 = b.canonical_form(bm);
  const CommonApartment ca = b.common_apartment(c1, c2);
  out.checks = {"canonical_form", "common_apartment"};
  const bool ok = b.chart_eval(ca.basis, ca.x) == c1 && b.chart_eval(ca.basis, ca.y) == c2;
  out.passed = ok;
  out.result = {{"basis", to_json(ca.basis, spec.field())},
                {"x", to_json(ca.x)},
                {"y", to_json(ca.y)},
                {"verified", ok}};
  out.summary.push_back("common apartment: x=" + ca.x.str() + " y=" + ca.y.str() + ", " + verdict(ok));
  return out;
}

Outcome lattice_valuation(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  if (!cfg.element.empty()) {
    const FieldElement x = parse_field_element(cfg.element, spec.field());
    out.result["element"] = x.str();
    out.result["valuation"] = to_json(valuation(spec, x));
    out.result["integral"] = in_valuation_ring(spec, x);
    out.summary.push_back("v(" + x.str() + ") = " + valuation(spec, x).str());
  }
  add_report(out, "valuation_axioms_check", valuation_axioms_check(spec, cfg.samples, cfg.seed));
  add_report(out, "is_order_compatible", is_order_compatible(spec, cfg.samples, cfg.seed + 1));
  if (spec.value_rank() == 1)
    add_report(out, "big_element_valuation_check", big_element_valuation_check(spec, cfg.samples / 4 + 1, 6, cfg.seed + 2));
  return out;
}

Outcome lattice_selfcheck(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  const LatticeBuilding b(spec, cfg.n);
  add_report(out, "stab_theorem_check", stab_theorem_check(b, cfg.samples, cfg.seed));
  add_report(out, "chart_twist_check", chart_twist_check(b, cfg.samples / 2 + 1, 10, cfg.seed + 1));
  add_report(out, "diagonal_roundtrip_check", diagonal_roundtrip_check(b, cfg.samples, cfg.seed + 2));
  add_report(out, "coset_algebra_check", coset_algebra_check(b, cfg.samples / 2 + 1, cfg.seed + 3));
  return out;
}

// --- norm ------------------------------------------------------------------

Outcome norm_eval(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  const AdaptedNorm eta = adapted_norm_from_json(read_json_arg(cfg.norm), spec.field());
  const NormBuilding nb(spec, square_size(eta.basis));
  if (cfg.vector.empty()) throw ParseError("missing --vector", "");
  const FieldVector v = field_vector_from_json(read_json_arg(cfg.vector), spec.field());
  const LexValue e = nb.eval_exponent(eta, v);
  out.checks.push_back("eval_exponent");
  out.result = {{"vector", field_vector_json(v)}, {"exponent", to_json(e)}};
  out.summary.push_back("-log eta(v) = " + e.str());
  return out;
}

Outcome norm_chart(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  const FieldMatrix E = cfg.basis.empty() ? FieldMatrix::identity(cfg.n) : load_matrix(cfg.basis, spec.field());
  const NormBuilding nb(spec, square_size(E));
  const ApartmentPoint x = load_point(cfg.point, 1, nb.n() - 1);
  const NormClass c = nb.chart_eval(E, x);
  out.checks.push_back("chart_eval");
  out.result = {{"point", to_json(x)}, {"norm", to_json(c.norm, spec.field())}};
  out.summary.push_back("eta_E(" + x.str() + ") = " + to_json(c.norm, spec.field()).dump());
  return out;
}

Outcome norm_compare(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  const AdaptedNorm a = adapted_norm_from_json(read_json_arg(cfg.norm), spec.field());
  const AdaptedNorm b = adapted_norm_from_json(read_json_arg(cfg.other), spec.field());
  const NormBuilding nb(spec, square_size(a.basis));
  const auto shift = nb.proportionality_shift(a, b);
  out.checks.push_back("proportionality_shift");
  out.result = {{"equal", shift.has_value()}};
  if (shift) out.result["shift"] = to_string(*shift);
  out.summary.push_back(shift ? "classes are equal, shift " + to_string(*shift) : "classes differ");
  return out;
}

Outcome norm_stab(const RunConfig& cfg) {
  Outcome out;
  const ValuationSpec spec = load_valuation(cfg, "degree");
  if (cfg.matrix.empty()) {
    add_report(out, "stab_oracle_check", stab_oracle_check(NormBuilding(spec, cfg.n), cfg.samples, cfg.seed));
    return out;
  }
  const FieldMatrix g = load_matrix(cfg.matrix, spec.field());
  const NormBuilding nb(spec, square_size(g));
  const ApartmentPoint x = load_point(cfg.point, 1, nb.n() - 1);
  const bool predicate = nb.stab_inequality_membership(g, x);
  const bool oracle = nb.stabilizes(g, x);
  out.checks = {"stab_inequality_membership", "stabilizes"};
  out.passed = predicate == oracle;
  out.result = {{"predicate", predicate},
                {"oracle", oracle},
                {"column_defect", to_string(nb.column_defect(g, x))},
                {"det_valuation", to_string(*nb.v(determinant(g)))}};
  out.summary.push_back(std::string("g ") + (oracle ? "stabilizes" : "moves") + " eta_x; inequality " +
                        (predicate ? "holds" : "fails") + "; " + (out.passed ? "agree" : "DISAGREE"));
  return out;
}

// --- building --------------------------------------------------------------

MorphismInstance building_instance(const RunConfig& cfg) {
  const std::string& i = cfg.instance;
  if (i == "field-change") return instance_field_change(cfg.n);
  if (i == "block-embed") return instance_block_embedding(cfg.m, cfg.n);
  if (i == "inversion") return instance_inversion(load_valuation(cfg, "degree"), cfg.n);
  if (i == "identity") return instance_identity(load_valuation(cfg, "degree"), cfg.n);
  if (i == "broken-tau") return instance_broken_tau(cfg.n);
  throw ParseError("unknown building instance", i);
}

CheckReport field_map_check(const FieldMorphism& eta, std::size_t samples, std::uint64_t seed) {
  CheckReport r("field-map/" + eta.source.name() + "->" + eta.target.name());
  const OrderedGroupMorphism gamma = induced_gamma(eta, 100, seed);
  FieldSampler fs(eta.source.field(), seed + 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const FieldElement x = fs.nonzero();
    ++r.samples;
    if (gamma(valuation(eta.source, x)) != valuation(eta.target, eta.apply(x))) r.fail("x=" + x.str());
  }
  return r;
}

Outcome building_check(const RunConfig& cfg) {
  Outcome out;
  const MorphismInstance inst = building_instance(cfg);
  const MorphismCertificate cert = check_conditions_baby(inst, cfg.samples, cfg.seed);
  out.checks.push_back("check_conditions_baby");
  out.result["certificate"] = to_json(cert);
  out.passed = cert.valid();
  for (const auto& c : cert.conditions)
    out.summary.push_back(c.name + ": " + verdict(c.passed) + " [" + c.mode + ", " + std::to_string(c.samples) +
                          " samples]");
  add_report(out, "compatibility_check", inst.source->compatibility_check(cfg.samples / 5 + 1, cfg.seed + 10));
  if (inst.rho.kind == GroupMap::Kind::Entrywise && !(inst.rho.eta.source == inst.rho.eta.target)) {
    add_report(out, "induced_gamma", field_map_check(inst.rho.eta, cfg.samples, cfg.seed + 11));
    // A surjective field map makes the morphism surjective.
    const bool flag_ok = !inst.eta_surjective || cert.flags.surjective;
    out.result["surjectivity_flag_consistent"] = flag_ok;
    out.passed = out.passed && flag_ok;
  }
  if (!cert.valid()) return out;
  const std::size_t extra = cfg.samples / 5 + 1;
  add_report(out, "collision_check", collision_check(cert, extra, cfg.seed + 12));
  add_report(out, "diagram_check", diagram_check(cert, extra, cfg.seed + 13));
  add_report(out, "equivariance_check", equivariance_check(cert, extra, cfg.seed + 14));
  add_report(out, "coset_check", coset_check(cert, extra, cfg.seed + 15));
  if (cert.flags.injective) add_report(out, "injectivity_check", injectivity_check(cert, extra, cfg.seed + 16));
  if (cfg.instance == "inversion")
    add_report(out, "inversion_selfcheck", inversion_selfcheck(inst.source->spec(), cfg.n, extra, cfg.seed + 17));
  return out;
}

// --- render ----------------------------------------------------------------

Outcome render(const RunConfig& cfg) {
  Outcome out;
  RootSystem system = RootSystem::standard(RootSystemTag::A, 2);
  std::vector<Vector> overlay;
  std::string name;
  if (!cfg.embed.empty()) {
    const EmbeddedPair pair = load_embedding(cfg.embed);
    system = pair.ambient;
    overlay = pair.sub.roots();
    name = pair.name;
  } else {
    system = load_root_system(cfg);
    name = system.name();
  }
  const Rendering r = render_rank2(system, overlay, cfg.extent, cfg.labels);
  out.checks.push_back("render_rank2");
  out.result = {{"name", name}, {"arrows", r.arrows}, {"overlay_arrows", r.overlay_arrows}, {"walls", r.walls}};
  if (cfg.svg_path.empty()) {
    out.result["svg"] = r.svg;
  } else {
    std::ofstream f(cfg.svg_path, std::ios::binary);
    if (!f) throw Error("cannot write " + cfg.svg_path);
    f << r.svg;
    out.result["svg_path"] = cfg.svg_path;
  }
  out.summary.push_back(name + ": " + std::to_string(r.arrows) + " + " + std::to_string(r.overlay_arrows) +
                        " arrows, " + std::to_string(r.walls) + " walls");
  return out;
}

}  // namespace

Outcome run_command(const RunConfig& cfg) {
  const std::string key = cfg.subcommand + " " + cfg.action;
  if (key == "rootsys verify") return rootsys_verify(cfg);
  if (key == "weyl enumerate") return weyl_enumerate(cfg);
  if (key == "weyl sigma") return weyl_sigma(cfg);
  if (key == "apartment check") return apartment_check(cfg);
  if (key == "morphism check-triangle") return morphism_triangle(cfg);
  if (key == "morphism verify") return morphism_verify(cfg);
  if (key == "morphism order") return morphism_order(cfg);
  if (key == "lattice canon") return lattice_canon(cfg);
  if (key == "lattice chart") return lattice_chart(cfg);
  if (key == "lattice stab") return lattice_stab(cfg);
  if (key == "lattice common-apartment") return lattice_common(cfg);
  if (key == "lattice valuation") return lattice_valuation(cfg);
  if (key == "lattice selfcheck") return lattice_selfcheck(cfg);
  if (key == "norm eval") return norm_eval(cfg);
  if (key == "norm chart") return norm_chart(cfg);
  if (key == "norm compare") return norm_compare(cfg);
  if (key == "norm stab") return norm_stab(cfg);
  if (key == "building check") return building_check(cfg);
  if (key == "render ") return render(cfg);
  throw ParseError("unknown command", key);
}

nlohmann::json make_report(const RunConfig& cfg, const Outcome& out) {
  std::string command = cfg.subcommand;
  if (!cfg.action.empty()) command += " " + cfg.action;
  return {{"command", command},
          {"seed", cfg.seed},
          {"samples", cfg.samples},
          {"verdict", verdict(out.passed)},
          {"checks", out.checks},
          {"result", out.result}};
}

std::vector<RunConfig> suite_configs(std::uint64_t seed) {
  std::vector<RunConfig> v;
  auto add = [&](std::string sub, std::string action, auto&& setup) {
    RunConfig c;
    c.subcommand = std::move(sub);
    c.action = std::move(action);
    c.seed = seed;
    setup(c);
    v.push_back(std::move(c));
  };
  for (const char* tag : {"A", "B", "G2"})
    add("rootsys", "verify", [&](RunConfig& c) { c.tag = tag; });
  add("weyl", "enumerate", [](RunConfig& c) { c.tag = "A"; c.rank = 3; });
  add("weyl", "sigma", [](RunConfig& c) { c.embed = "a2-long-in-g2"; });
  add("apartment", "check", [](RunConfig& c) { c.tag = "A"; c.lambda_rank = 2; c.samples = 50; });
  add("morphism", "check-triangle", [](RunConfig& c) { c.embed = "a1-tilted-in-a2"; });
  add("morphism", "check-triangle", [](RunConfig& c) { c.embed = "a1-perp-in-a2"; c.samples = 200; });
  add("morphism", "verify", [](RunConfig& c) { c.tag = "A"; c.instance = "inversion"; c.samples = 30; });
  add("morphism", "verify", [](RunConfig& c) { c.embed = "a1-block-in-a2"; c.samples = 30; });
  add("morphism", "order", [](RunConfig& c) { c.preset = "pr1"; });
  add("morphism", "order", [](RunConfig& c) { c.preset = "swap"; });
  add("lattice", "canon", [](RunConfig& c) { c.matrix = R"([["t","1"],["0","t^2"]])"; });
  add("lattice", "chart", [](RunConfig& c) { c.point = R"(["1/2"])"; });
  add("lattice", "stab", [](RunConfig& c) { c.valuation = "lex"; c.n = 3; c.samples = 30; });
  add("lattice", "common-apartment", [](RunConfig& c) {
    c.matrix = R"([["1","0"],["0","1"]])";
    c.other = R"([["t","1/t"],["0","1/t"]])";
  });
  add("lattice", "valuation", [](RunConfig& c) { c.valuation = "lex"; c.element = "(X^2*Y + 3/2*X)/(Y - 1)"; c.samples = 30; });
  add("lattice", "selfcheck", [](RunConfig& c) { c.n = 3; c.samples = 20; });
  add("norm", "eval", [](RunConfig& c) {
    c.norm = R"({"basis": [["1","0"],["0","1"]], "weights": ["0","1/2"]})";
    c.vector = R"(["t","1"])";
  });
  add("norm", "chart", [](RunConfig& c) { c.point = R"(["1/3"])"; });
  add("norm", "compare", [](RunConfig& c) {
    c.norm = R"({"basis": [["1","0"],["0","1"]], "weights": ["0","1"]})";
    c.other = R"({"basis": [["t","0"],["0","t"]], "weights": ["0","1"]})";
  });
  add("norm", "stab", [](RunConfig& c) { c.n = 3; c.samples = 30; });
  add("building", "check", [](RunConfig& c) { c.instance = "field-change"; c.samples = 30; });
  add("building", "check", [](RunConfig& c) { c.instance = "block-embed"; c.n = 3; c.samples = 30; });
  add("building", "check", [](RunConfig& c) { c.instance = "inversion"; c.samples = 30; });
  add("render", "", [](RunConfig& c) { c.embed = "a2-long-in-g2"; c.labels = true; });
  return v;
}

nlohmann::json run_suite(std::uint64_t seed) {
  nlohmann::json all = nlohmann::json::array();
  for (const auto& cfg : suite_configs(seed)) all.push_back(make_report(cfg, run_command(cfg)));
  return all;
}

}  // namespace affbuild::cli
