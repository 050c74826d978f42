#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sympack/blowup_model.hpp"
#include "sympack/coprime_arith.hpp"
#include "sympack/errors.hpp"
#include "sympack/psh_lab.hpp"
#include "sympack/volume_oracle.hpp"
#include "sympack/wps_cohomology.hpp"

namespace sympack::cli {

using io::Json;
using io::to_json;

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  std::uint64_t seed = kDefaultSeed;
  double epsilon = kDefaultEpsilon;
  std::uint64_t samples = 0;
  bool quiet = false;
  bool demo = false;
  // which of the above came from the command line
  bool seed_given = false;
  bool epsilon_given = false;
  bool samples_given = false;
};

struct Outcome {
  Json document;
  int exit_code = kExitOk;
  std::string summary;
};

io::Document read_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InvalidInput("--input is required");
  const auto first = cfg.input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (cfg.input[first] == '{' || cfg.input[first] == '['))
    return io::Document::parse(cfg.input, "<inline>");
  std::stringstream buf;
  if (cfg.input == "-") {
    buf << std::cin.rdbuf();
    return io::Document::parse(buf.str(), "<stdin>");
  }
  std::ifstream file(cfg.input, std::ios::binary);
  if (!file) throw InvalidInput("cannot read input file " + cfg.input);
  buf << file.rdbuf();
  return io::Document::parse(buf.str(), cfg.input);
}

int to_int(const io::Document& doc, const std::string& ptr) {
  BigInt v = doc.integer(ptr);
  if (!v.fits_sint_p()) doc.fail(ptr, "integer out of range");
  return static_cast<int>(v.get_si());
}

std::uint64_t to_u64(const io::Document& doc, const std::string& ptr) {
  BigInt v = doc.integer(ptr);
  if (v < 0 || v > BigInt("18446744073709551615")) doc.fail(ptr, "integer out of range");
  return std::stoull(v.get_str());
}

std::string index_ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

Json scalar_list(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

Json integer_list(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

Json assumption_list(const std::vector<Assumption>& v) {
  Json out = Json::array();
  for (auto a : v) out.push_back(std::string(to_string(a)));
  return out;
}

Json assumption_list(const std::set<Assumption>& v) { return assumption_list(std::vector<Assumption>(v.begin(), v.end())); }

std::string verdict_name(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::kKahler: return "KAHLER";
    case CriterionVerdict::kNotKahler: return "NOT_KAHLER";
    case CriterionVerdict::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

ManifoldModel read_manifold(const io::Document& doc, const std::string& base) {
  ManifoldModel m;
  m.complex_dimension = to_int(doc, base + "/n");
  m.top_power = doc.scalar(base + "/V");
  if (doc.root().at(Json::json_pointer(base)).contains("flags")) {
    const auto& flags = doc.root().at(Json::json_pointer(base + "/flags"));
    for (std::size_t i = 0; i < flags.size(); ++i) {
      auto a = parse_assumption(flags[i].get<std::string>());
      if (!a) doc.fail(index_ptr(base + "/flags", i), "unknown flag");
      m.assumptions.insert(*a);
    }
  }
  return m;
}

Json manifold_json(const ManifoldModel& m) {
  return Json{{"n", m.complex_dimension}, {"V", to_json(m.top_power)}, {"flags", assumption_list(m.assumptions)}};
}

Json ellipsoid_json(const Ellipsoid& e) {
  return Json{{"weights", scalar_list(e.weights)}, {"r", to_json(e.capacity)}};
}

Json blowup_class_json(const BlowupClass& cls) {
  Json terms = Json::array();
  for (const auto& t : cls.exceptional)
    terms.push_back(Json{{"weights", integer_list(t.weights.entries())}, {"c", to_json(t.coefficient)}});
  return Json{{"base_scale", to_json(cls.base_scale)}, {"exceptional", terms}};
}

Json criterion_json(const CriterionReport& r) {
  return Json{{"b1_holds", r.b1_holds},
              {"b2_value", to_json(r.b2_value)},
              {"kahler", r.kahler},
              {"verdict", verdict_name(r.verdict)},
              {"assumption_trace", assumption_list(r.assumption_trace)},
              {"missing_assumptions", assumption_list(r.missing_assumptions)}};
}

Json estimate_json(const VolumeEstimate& e) {
  return Json{{"value", io::decimal_json(e.value)},
              {"standard_error", io::decimal_json(e.standard_error)},
              {"samples", e.samples},
              {"hits", e.hits},
              {"seed", e.seed},
              {"convention", std::string(to_string(e.convention))}};
}

// pack check ------------------------------------------------------------

Outcome pack_check(const RunConfig& cfg) {
  const auto doc = read_input(cfg);
  doc.validate(io::schema("pack_check"));
  const Json& root = doc.root();

  ManifoldModel m = read_manifold(doc, "/manifold");
  std::vector<Ellipsoid> ellipsoids;
  for (std::size_t i = 0; i < root["ellipsoids"].size(); ++i) {
    const std::string base = index_ptr("/ellipsoids", i);
    Ellipsoid e;
    for (std::size_t j = 0; j < root["ellipsoids"][i]["weights"].size(); ++j)
      e.weights.push_back(doc.scalar(index_ptr(base + "/weights", j)));
    e.capacity = doc.scalar(base + "/r");
    if (e.complex_dimension() != m.complex_dimension)
      doc.fail(base + "/weights", "expected " + std::to_string(m.complex_dimension) + " weights");
    ellipsoids.push_back(std::move(e));
  }

  double epsilon = kDefaultEpsilon;
  if (cfg.epsilon_given) epsilon = cfg.epsilon;
  else if (root.contains("epsilon")) epsilon = root["epsilon"].get<double>();
  PackingOptions opts;
  opts.seed = cfg.seed_given ? cfg.seed : root.contains("seed") ? to_u64(doc, "/seed") : kDefaultSeed;
  opts.audit_samples = cfg.samples_given ? cfg.samples
                       : root.contains("audit_samples") ? to_u64(doc, "/audit_samples")
                                                         : 0;

  Json echo{{"manifold", manifold_json(m)}, {"epsilon", epsilon}, {"seed", opts.seed},
            {"audit_samples", opts.audit_samples}};
  echo["ellipsoids"] = Json::array();
  for (const auto& e : ellipsoids) echo["ellipsoids"].push_back(ellipsoid_json(e));

  const auto cert = check_packing(m, ellipsoids, epsilon, opts);
  Outcome out;
  out.document = certificate_json(cert, echo);
  switch (cert.verdict) {
    case Verdict::kFeasible: out.exit_code = kExitOk; break;
    case Verdict::kInfeasibleVolume: out.exit_code = kExitInfeasibleVolume; break;
    case Verdict::kUnknown: out.exit_code = kExitUnknown; break;
  }
  out.summary = "verdict " + std::string(to_string(cert.verdict));
  return out;
}

// approx primes ---------------------------------------------------------

Outcome approx_primes(const RunConfig& cfg) {
  const auto doc = read_input(cfg);
  doc.validate(io::schema("approx_primes"));
  const Json& root = doc.root();
  std::vector<Rational> x;
  for (std::size_t i = 0; i < root["x"].size(); ++i) x.push_back(doc.scalar(index_ptr("/x", i)).rational());
  Rational eps = cfg.epsilon_given ? Scalar::from_shortest_decimal(cfg.epsilon).rational()
                 : root.contains("epsilon") ? doc.scalar("/epsilon").rational()
                                            : Scalar::from_shortest_decimal(kDefaultEpsilon).rational();
  ApproxOptions opts;
  std::string strategy = root.value("strategy", "auto");
  if (strategy == "minimal_denominator") opts.strategy = ApproxStrategy::kMinimalDenominator;
  if (strategy == "anchored_windows") opts.strategy = ApproxStrategy::kAnchoredWindows;

  const auto r = approximate_by_primes(x, eps, opts);

  bool all_prime = true, within = true;
  std::set<BigInt> seen;
  for (std::size_t i = 0; i < x.size(); ++i) {
    all_prime = all_prime && is_prime(r.primes[i]);
    seen.insert(r.primes[i]);
    within = within && abs(Rational(r.primes[i], r.denominator) - x[i]) <= eps;
  }
  Json xs = Json::array();
  for (const auto& q : x) xs.push_back(to_json(q));
  Outcome out;
  out.document = Json{
      {"format", "sympack.prime_approximation/1"},
      {"precision", io::kDecimalPrecision},
      {"input", {{"x", xs}, {"epsilon", to_json(eps)}, {"strategy", strategy}}},
      {"N", to_json(r.denominator)},
      {"primes", integer_list(r.primes)},
      {"max_error", to_json(r.max_error)},
      {"checks", {{"all_prime", all_prime}, {"distinct", seen.size() == x.size()}, {"within_epsilon", within}}}};
  out.summary = "N = " + r.denominator.get_str();
  return out;
}

// wps ring --------------------------------------------------------------

Outcome wps_ring(const RunConfig& cfg) {
  const auto doc = read_input(cfg);
  doc.validate(io::schema("wps_ring"));
  std::vector<BigInt> w;
  for (std::size_t i = 0; i < doc.root()["weights"].size(); ++i) w.push_back(doc.integer(index_ptr("/weights", i)));
  if (w.size() > 65) doc.fail("/weights", "at most 65 weights are supported");
  const WpsSpace space{CoprimeVector(w)};
  const int n = space.complex_dimension();

  Json table = Json::array();
  for (int i = 0; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const auto p = ring_multiply(WpsRingElement::generator(space, i), WpsRingElement::generator(space, j), space);
      Json entry{{"i", i}, {"j", j}};
      if (i + j <= n) {
        entry["degree"] = i + j;
        entry["coefficient"] = to_json(p.coefficient(i + j));
      } else {
        entry["degree"] = nullptr;
        entry["coefficient"] = to_json(Rational(0));
      }
      table.push_back(entry);
    }
  }
  Json singular = Json::array();
  for (const auto& s : singular_locus(space))
    singular.push_back(Json{{"coordinate_index", s.coordinate_index}, {"stabilizer_order", to_json(s.stabilizer_order)}});
  const auto alpha1_n = ring_power(WpsRingElement::generator(space, 1), static_cast<unsigned>(n));
  Json fs = Json::array();
  const auto reduced_form = fubini_study_class(space, 1);
  for (const auto& c : reduced_form.coefficients()) fs.push_back(to_json(c));

  Outcome out;
  out.document = Json{{"format", "sympack.wps_ring/1"},
                      {"precision", io::kDecimalPrecision},
                      {"input", {{"weights", integer_list(w)}}},
                      {"complex_dimension", n},
                      {"weight_product", to_json(space.weight_product())},
                      {"products", table},
                      {"top_pairing_alpha1_power", to_json(top_pairing(alpha1_n, space))},
                      {"reduced_form_class_r1", fs},
                      {"reduced_form_volume_r1", to_json(fubini_study_top_power(space, 1))},
                      {"singular_locus", singular}};
  out.summary = "<a> = " + space.weight_product().get_str();
  return out;
}

// blowup intersect ------------------------------------------------------

Outcome blowup_intersect(const RunConfig& cfg) {
  const auto doc = read_input(cfg);
  doc.validate(io::schema("blowup_intersect"));
  const Json& root = doc.root();
  const ManifoldModel m = read_manifold(doc, "/manifold");
  BlowupClass cls;
  if (root.contains("base_scale")) cls.base_scale = doc.scalar("/base_scale");
  for (std::size_t i = 0; i < root["exceptional"].size(); ++i) {
    const std::string base = index_ptr("/exceptional", i);
    std::vector<BigInt> w;
    for (std::size_t j = 0; j < root["exceptional"][i]["weights"].size(); ++j)
      w.push_back(doc.integer(index_ptr(base + "/weights", j)));
    if (!is_pairwise_coprime(w)) doc.fail(base + "/weights", "weights must be pairwise coprime");
    cls.exceptional.push_back({CoprimeVector(w), doc.scalar(base + "/c")});
  }
  m.validate();
  const auto report = kahler_criterion(cls, m);
  Outcome out;
  out.document = Json{{"format", "sympack.blowup_intersection/1"},
                      {"precision", io::kDecimalPrecision},
                      {"input", {{"manifold", manifold_json(m)}, {"base_scale", to_json(cls.base_scale)},
                                 {"exceptional", blowup_class_json(cls)["exceptional"]}}},
                      {"top_intersection", to_json(report.b2_value)},
                      {"criterion", criterion_json(report)},
                      {"note", std::string(kVolumeExponentNote)}};
  out.summary = "top intersection " + report.b2_value.to_string();
  return out;
}

// volume ----------------------------------------------------------------

Outcome volume(const RunConfig& cfg) {
  const auto doc = read_input(cfg);
  doc.validate(io::schema("volume"));
  const Json& root = doc.root();
  Ellipsoid e;
  for (std::size_t i = 0; i < root["weights"].size(); ++i) e.weights.push_back(doc.scalar(index_ptr("/weights", i)));
  e.capacity = doc.scalar("/r");
  e.validate();
  const std::uint64_t samples = cfg.samples_given ? cfg.samples : root.contains("samples") ? to_u64(doc, "/samples") : 0;
  const std::uint64_t seed = cfg.seed_given ? cfg.seed : root.contains("seed") ? to_u64(doc, "/seed") : kDefaultSeed;

  Outcome out;
  out.document = Json{{"format", "sympack.volume/1"},
                      {"precision", io::kDecimalPrecision},
                      {"input", {{"weights", scalar_list(e.weights)}, {"r", to_json(e.capacity)},
                                 {"samples", samples}, {"seed", seed}}},
                      {"complex_dimension", e.complex_dimension()},
                      {"LEBESGUE", to_json(ellipsoid_volume_closed_form(e, VolumeConvention::kLebesgue))},
                      {"TOP_POWER", to_json(ellipsoid_volume_closed_form(e, VolumeConvention::kTopPower))}};
  if (samples > 0) {
    const auto est = ellipsoid_volume_monte_carlo(e, samples, seed);
    const double exact = ellipsoid_volume_closed_form(e, VolumeConvention::kLebesgue).to_double();
    Json mc = estimate_json(est);
    mc["deviation_in_standard_errors"] =
        io::decimal_json(est.standard_error > 0 ? (est.value - exact) / est.standard_error : 0.0);
    out.document["monte_carlo"] = mc;
  }
  out.summary = "TOP_POWER volume " + ellipsoid_volume_closed_form(e, VolumeConvention::kTopPower).to_string();
  return out;
}

// psh glue --demo -------------------------------------------------------

Json region_json(const psh::PshCertificate& c) {
  return Json{{"strictly_psh", c.strictly_psh},
              {"min_eigenvalue", io::decimal_json(c.min_eigenvalue)},
              {"argmin_radius", io::decimal_json(std::sqrt(psh::squared_norm(c.argmin)))},
              {"samples", c.samples}};
}

Json glue_example(const std::string& name, const psh::ScalarField& F, const psh::ScalarField& G,
                  double R, double delta, std::uint64_t samples, std::uint64_t seed) {
  psh::GluingConfig config;
  config.seed = seed;
  const auto g = psh::glue_potentials(F, G, R, delta, config);

  std::size_t outer_checked = 0, outer_mismatch = 0;
  for (const auto& p : psh::sample_shell(F.dimension(), 0.75 * R, R, samples, seed + 1)) {
    if (std::sqrt(psh::squared_norm(p)) <= 0.75 * R) continue;
    ++outer_checked;
    outer_mismatch += g.field(p) != F(p);
  }
  double core_deviation = 0;
  std::size_t core_checked = 0;
  for (const auto& p : psh::sample_shell(F.dimension(), 0, g.core_radius, samples, seed + 2)) {
    if (G.distance_to_singular(p) == 0) continue;
    ++core_checked;
    const double target = delta * G(p) - g.constant_c;
    core_deviation = std::max(core_deviation, std::abs(g.field(p) - target) / std::max(1.0, std::abs(target)));
  }
  const auto ball = psh::certify_strict_psh(g.field, samples, 0.0, seed + 3);
  const auto outside_core = psh::certify_strict_psh(g.field, samples, 0.0, seed + 3, {g.core_radius, 0});

  return Json{{"name", name},
              {"branch", g.branch == psh::GluingBranch::kSingularG ? "G(0) = -inf, H = G" : "G(0) finite, H = log|z|^2"},
              {"complex_dimension", F.dimension()},
              {"R", io::decimal_json(R)},
              {"delta", io::decimal_json(delta)},
              {"constants",
               {{"a", io::decimal_json(g.a)},
                {"b", io::decimal_json(g.b)},
                {"C", io::decimal_json(g.constant_c)},
                {"kernel_eps_K", io::decimal_json(g.kernel_eps_k)},
                {"kernel_eps_final", io::decimal_json(g.kernel_eps_final)},
                {"strictness_modulus", io::decimal_json(g.strictness_modulus)},
                {"f_min_eigenvalue", io::decimal_json(g.f_min_eigenvalue)},
                {"delta_ceiling", io::decimal_json(g.delta_ceiling)},
                {"core_radius", io::decimal_json(g.core_radius)},
                {"switch_radius", io::decimal_json(g.switch_radius)}}},
              {"outer_match", {{"checked", outer_checked}, {"mismatches", outer_mismatch}}},
              {"core_match", {{"checked", core_checked}, {"max_relative_deviation", io::decimal_json(core_deviation)}}},
              {"certification", {{"ball", region_json(ball)}, {"outside_core", region_json(outside_core)}}}};
}

Outcome psh_glue(const RunConfig& cfg) {
  if (!cfg.demo) throw InvalidInput("psh glue only runs the built-in examples; pass --demo");
  const std::uint64_t samples = cfg.samples_given ? cfg.samples : 10'000;
  Outcome out;
  out.document = psh_demo_report(samples, cfg.seed);
  out.summary = "gluing demo finished";
  return out;
}

// dispatch --------------------------------------------------------------

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_input = true) {
  if (with_input) cmd->add_option("--input,-i", cfg.input, "JSON file, '-' for stdin, or inline JSON")->required();
  cmd->add_option("--output,-o", cfg.output, "write the JSON result here instead of stdout");
  cmd->add_option("--seed", cfg.seed, "random seed")->each([&](const std::string&) { cfg.seed_given = true; });
  cmd->add_option("--epsilon", cfg.epsilon, "approximation tolerance")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { cfg.epsilon_given = true; });
  cmd->add_option("--samples", cfg.samples, "Monte Carlo or Hessian sample count")
      ->each([&](const std::string&) { cfg.samples_given = true; });
  cmd->add_flag("--quiet,-q", cfg.quiet, "no summary on stderr");
}

}  // namespace

Json certificate_json(const PackingCertificate& cert, const Json& input) {
  Json enclosures = Json::array();
  for (const auto& e : cert.enclosures)
    enclosures.push_back(Json{{"original", ellipsoid_json(e.original)},
                              {"simple", ellipsoid_json(e.simple)},
                              {"denominator", to_json(e.denominator)},
                              {"inflation", to_json(e.inflation)},
                              {"tolerance", to_json(e.tolerance)},
                              {"identity", e.identity}});
  Json audits = Json::array();
  for (const auto& a : cert.audits)
    audits.push_back(Json{{"estimate", estimate_json(a.estimate)},
                          {"closed_form", to_json(a.closed_form)},
                          {"deviation_in_standard_errors", io::decimal_json(a.deviation_in_standard_errors)}});
  Json notes = Json::array();
  for (const auto& n : cert.notes) notes.push_back(n);
  return Json{{"format", "sympack.packing_certificate/1"},
              {"precision", io::kDecimalPrecision},
              {"input", input},
              {"verdict", std::string(to_string(cert.verdict))},
              {"manifold", manifold_json(cert.manifold)},
              {"epsilon", {{"requested", io::decimal_json(cert.epsilon_requested)},
                           {"used", io::decimal_json(cert.epsilon_used)},
                           {"retries", cert.retries}}},
              {"enclosures", enclosures},
              {"volume_ledger", {{"original_total", to_json(cert.ledger.original_total)},
                                 {"enclosure_total", to_json(cert.ledger.enclosure_total)},
                                 {"manifold_volume", to_json(cert.ledger.manifold_volume)},
                                 {"slack", to_json(cert.ledger.slack)},
                                 {"convention", std::string(to_string(cert.ledger.convention))}}},
              {"blowup_class", blowup_class_json(cert.blowup_class)},
              {"criterion", criterion_json(cert.criterion)},
              {"assumptions_used", assumption_list(cert.assumptions_used)},
              {"missing_assumptions", assumption_list(cert.missing_assumptions)},
              {"audits", audits},
              {"notes", notes},
              {"seed", cert.seed}};
}

Json psh_demo_report(std::uint64_t samples, std::uint64_t seed) {
  namespace f = psh::fields;
  const double R = 1.0, delta = 0.01;
  const int n = 2;
  Json examples = Json::array();
  examples.push_back(glue_example("F = |z|^2, G = log|z|^2", f::squared_norm(n, R), f::log_squared_norm(n, R), R,
                                  delta, samples, seed));
  examples.push_back(
      glue_example("F = |z|^2, G = |z|^2", f::squared_norm(n, R), f::squared_norm(n, R), R, delta, samples, seed));

  Json probe{{"delta", io::decimal_json(1.0)}};
  try {
    psh::glue_potentials(f::squared_norm(n, R), f::log_squared_norm(n, R), R, 1.0);
    probe["failed"] = false;
  } catch (const psh::GluingFailure& e) {
    probe["failed"] = true;
    probe["message"] = e.what();
    probe["delta_ceiling"] = io::decimal_json(e.delta_ceiling());
  }
  return Json{{"format", "sympack.psh_demo/1"},
              {"precision", io::kDecimalPrecision},
              {"samples", samples},
              {"seed", seed},
              {"examples", examples},
              {"large_delta_probe", probe}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ellipsoid packing certificates and the supporting calculators", "sympack"};
  app.set_version_flag("--version", "0.1.0");
  app.require_subcommand(1);
  RunConfig cfg;
  Outcome (*handler)(const RunConfig&) = nullptr;

  auto* pack = app.add_subcommand("pack", "packing decisions")->require_subcommand(1);
  auto* pack_check_cmd = pack->add_subcommand("check", "decide a packing problem and emit a certificate");
  add_common(pack_check_cmd, cfg);
  pack_check_cmd->callback([&] { handler = pack_check; });

  auto* approx = app.add_subcommand("approx", "approximation tools")->require_subcommand(1);
  auto* primes = approx->add_subcommand("primes", "approximate a vector by p_i / N with distinct primes");
  add_common(primes, cfg);
  primes->callback([&] { handler = approx_primes; });

  auto* wps = app.add_subcommand("wps", "weighted projective spaces")->require_subcommand(1);
  auto* ring = wps->add_subcommand("ring", "cohomology ring multiplication table");
  add_common(ring, cfg);
  ring->callback([&] { handler = wps_ring; });

  auto* blowup = app.add_subcommand("blowup", "weighted blow-ups")->require_subcommand(1);
  auto* intersect = blowup->add_subcommand("intersect", "top intersection and Kahler criterion");
  add_common(intersect, cfg);
  intersect->callback([&] { handler = blowup_intersect; });

  auto* vol = app.add_subcommand("volume", "ellipsoid volumes, closed form and Monte Carlo");
  add_common(vol, cfg);
  vol->callback([&] { handler = volume; });

  auto* psh_cmd = app.add_subcommand("psh", "plurisubharmonic potentials")->require_subcommand(1);
  auto* glue = psh_cmd->add_subcommand("glue", "gluing construction");
  add_common(glue, cfg, false);
  glue->add_flag("--demo", cfg.demo, "run the built-in examples");
  glue->callback([&] { handler = psh_glue; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    Outcome result = handler(cfg);
    const std::string text = io::canonical(result.document) + "\n";
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      file << text;
      if (!file) throw InvalidInput("cannot write " + cfg.output);
    }
    if (!cfg.quiet) err << "sympack: " << result.summary << "\n";
    return result.exit_code;
  } catch (const io::ParseError& e) {
    err << "sympack: " << e.what() << "\n";
  } catch (const io::SchemaError& e) {
    err << "sympack: " << e.what() << "\n";
  } catch (const ResourceLimit& e) {
    err << "sympack: resource limit: " << e.what() << "\n";
  } catch (const InvalidInput& e) {
    err << "sympack: invalid input: " << e.what() << "\n";
  } catch (const psh::GluingFailure& e) {
    err << "sympack: gluing failed: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "sympack: error: " << e.what() << "\n";
  }
  return kExitError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"sympack"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sympack::cli
