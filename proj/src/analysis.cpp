#include "steer/analysis.hpp"

#include <cmath>
#include <set>

#include "steer/lhs.hpp"
#include "steer/random.hpp"
#include "steer/spin.hpp"
#include "steer/steering.hpp"

namespace steer::cli {
namespace {

using io::find;
using io::SchemaError;
using io::to_json;

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key())) throw SchemaError(path + "." + it.key(), "unknown key");
  }
}

std::uint64_t seed_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw SchemaError(path, "seed must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::size_t size_param(const Json& params, const std::string& key, std::size_t fallback,
                       const std::string& path) {
  const Json* v = find(params, key, path);
  if (v == nullptr) return fallback;
  if (!v->is_number_integer() || v->get<long long>() < 1) {
    throw SchemaError(path + "." + key, "must be a positive integer");
  }
  return v->get<std::size_t>();
}

Vector beta_from_json(const Json& j, const std::string& path) {
  const double r = 1.0 / std::sqrt(2.0);
  std::string label;
  if (j.is_string()) {
    label = j.get<std::string>();
  } else if (j.is_number_integer()) {
    label = std::to_string(j.get<long long>());
  } else {
    return io::vector_from_json(j, path);
  }
  Vector v(2);
  if (label == "0") v << 1.0, 0.0;
  else if (label == "1") v << 0.0, 1.0;
  else if (label == "+") v << r, r;
  else if (label == "-") v << r, -r;
  else if (label == "+i") v << r, Complex(0.0, r);
  else if (label == "-i") v << r, Complex(0.0, -r);
  else throw SchemaError(path, "unknown state label '" + label + "'");
  return v;
}

std::string canonical_fixture_name(const std::string& name) {
  if (name == "two_qubit") return "two_qubit_family";
  if (name == "qutrit") return "qutrit_family";
  return name;
}

// A pure_random fixture is emitted as a pure-state document.
std::optional<PureState> pure_fixture(const FixtureSpec& spec, const std::string& path) {
  if (canonical_fixture_name(spec.name) != "pure_random") return std::nullopt;
  check_keys(spec.params, {"d_A", "d_B"}, path + ".params");
  if (!spec.seed) throw SchemaError(path + ".seed", "random fixtures require an explicit seed");
  const std::size_t da = size_param(spec.params, "d_A", 2, path + ".params");
  const std::size_t db = size_param(spec.params, "d_B", 2, path + ".params");
  if (da * db > kMaxDim) throw InvalidParameter("d_A * d_B exceeds " + std::to_string(kMaxDim));
  Rng rng(*spec.seed);
  return random_pure_state(Dims{da, db}, rng);
}

DensityOperator build_fixture_at(const FixtureSpec& spec, const std::string& path) {
  if (!spec.params.is_object()) throw SchemaError(path + ".params", "must be an object");
  const std::string name = canonical_fixture_name(spec.name);
  const std::string pp = path + ".params";

  if (name == "two_qubit_family") {
    check_keys(spec.params, {"eta", "z", "beta1", "beta2"}, pp);
    TwoQubitFamilyParams p;
    if (find(spec.params, "eta", pp)) p.eta = io::number_at(spec.params, "eta", pp);
    if (const Json* z = find(spec.params, "z", pp)) p.z = io::complex_from_json(*z, pp + ".z");
    if (const Json* b = find(spec.params, "beta1", pp)) p.beta1 = beta_from_json(*b, pp + ".beta1");
    if (const Json* b = find(spec.params, "beta2", pp)) p.beta2 = beta_from_json(*b, pp + ".beta2");
    return two_qubit_family(p);
  }
  if (name == "qutrit_family") {
    check_keys(spec.params, {"eta", "z"}, pp);
    QutritFamilyParams p;
    if (find(spec.params, "eta", pp)) p.eta = io::number_at(spec.params, "eta", pp);
    if (const Json* z = find(spec.params, "z", pp)) p.z = io::complex_from_json(*z, pp + ".z");
    return qutrit_family(p);
  }
  if (auto psi = pure_fixture(spec, path)) return psi->density();
  if (name == "product_random") {
    check_keys(spec.params, {"d_A", "d_B"}, pp);
    if (!spec.seed) throw SchemaError(path + ".seed", "random fixtures require an explicit seed");
    const std::size_t da = size_param(spec.params, "d_A", 2, pp);
    const std::size_t db = size_param(spec.params, "d_B", 2, pp);
    if (da * db > kMaxDim) throw InvalidParameter("d_A * d_B exceeds " + std::to_string(kMaxDim));
    Rng rng(*spec.seed);
    const DensityOperator a = random_density(Dims{da}, da, rng);
    const DensityOperator b = random_density(Dims{db}, db, rng);
    return product_state(a, b);
  }
  throw SchemaError(path + ".name", "unknown fixture '" + spec.name + "'");
}

// ---- result encoders ------------------------------------------------------

Json columns_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(Vector(m.col(c))));
  return out;
}

Json outcome_json(const SteeredOutcome& o) {
  Json j{{"probability", o.probability},
         {"conditional", to_json(o.conditional)},
         {"pure", o.pure}};
  if (o.steered_state) j["steered_state"] = to_json(o.steered_state->matrix());
  if (o.pure_vector) j["pure_vector"] = to_json(*o.pure_vector);
  return j;
}

Json verdict_json(const SteerabilityVerdict& v) {
  Json j{{"tag", to_string(v.tag)}, {"diagnostic", v.diagnostic}};
  if (v.certificate) {
    j["certificate"] = {{"i", v.certificate->i},
                        {"j", v.certificate->j},
                        {"magnitude", v.certificate->magnitude}};
  }
  if (v.pure_probability_sum) j["pure_probability_sum"] = *v.pure_probability_sum;
  if (v.tag == SteerabilityVerdict::Tag::SeparableExplicit) {
    Json ens = Json::array();
    for (const auto& t : v.ensemble) {
      ens.push_back({{"weight", t.weight}, {"alice", to_json(t.alice)}, {"bob", to_json(t.bob)}});
    }
    j["ensemble"] = std::move(ens);
    j["reconstruction_error"] = v.reconstruction_error;
  }
  return j;
}

// ---- request parsing ------------------------------------------------------

struct Request {
  std::string analysis;
  Tolerances tol;
  std::optional<std::uint64_t> seed;
  std::optional<DensityOperator> state;
  std::vector<io::ParsedMeasurement> measurements;
};

const std::set<std::string> kSelectors{"conditional", "assemblage", "max-pure", "decompose",
                                       "classify",    "witness",    "inequality", "subspace"};

void apply_tolerance(Tolerances& tol, const std::string& key, double value,
                     const std::string& path) {
  if (!std::isfinite(value) || value < 0.0) {
    throw SchemaError(path, "tolerance must be a finite non-negative number");
  }
  if (!tol.set(key, value)) throw SchemaError(path, "unknown tolerance key '" + key + "'");
}

Request parse_request(const Json& req, const AnalyzeOptions& options) {
  const std::string root = "request";
  if (!req.is_object()) throw SchemaError(root, "request must be an object");
  check_keys(req, {"schema_version", "analysis", "state", "fixture", "measurements", "effect",
                   "target", "seed", "samples", "tolerances"},
             root);
  const Json* version = find(req, "schema_version", root);
  if (version == nullptr) throw SchemaError(root, "missing schema_version");
  if (!version->is_number_integer() || version->get<int>() != io::kSchemaVersion) {
    throw SchemaError(root + ".schema_version", "unsupported schema version " + version->dump());
  }

  Request r;
  const Json* sel = find(req, "analysis", root);
  if (sel == nullptr || !sel->is_string()) throw SchemaError(root + ".analysis", "missing analysis selector");
  r.analysis = sel->get<std::string>();
  if (!kSelectors.contains(r.analysis)) {
    throw SchemaError(root + ".analysis", "unknown analysis '" + r.analysis + "'");
  }

  if (const Json* t = find(req, "tolerances", root)) {
    if (!t->is_object()) throw SchemaError(root + ".tolerances", "must be an object");
    for (auto it = t->begin(); it != t->end(); ++it) {
      const std::string p = root + ".tolerances." + it.key();
      if (!it->is_number()) throw SchemaError(p, "must be a number");
      apply_tolerance(r.tol, it.key(), it->get<double>(), p);
    }
  }
  for (const auto& [key, value] : options.tolerances) {
    apply_tolerance(r.tol, key, value, "--tol " + key);
  }

  if (const Json* s = find(req, "seed", root)) r.seed = seed_from_json(*s, root + ".seed");
  if (options.seed) r.seed = options.seed;

  const Json* state = find(req, "state", root);
  const Json* fixture = find(req, "fixture", root);
  if ((state == nullptr) == (fixture == nullptr)) {
    throw SchemaError(root, "exactly one of 'state' or 'fixture' is required");
  }
  if (state != nullptr) {
    r.state = io::state_from_document(*state, root + ".state");
  } else {
    const std::string fp = root + ".fixture";
    if (!fixture->is_object()) throw SchemaError(fp, "must be an object");
    check_keys(*fixture, {"name", "params", "seed"}, fp);
    const Json* name = find(*fixture, "name", fp);
    if (name == nullptr || !name->is_string()) throw SchemaError(fp + ".name", "missing fixture name");
    FixtureSpec spec{name->get<std::string>(), Json::object(), r.seed};
    if (const Json* p = find(*fixture, "params", fp)) spec.params = *p;
    if (const Json* s = find(*fixture, "seed", fp)) spec.seed = seed_from_json(*s, fp + ".seed");
    r.state = build_fixture_at(spec, fp);
  }
  if (r.state->dims().count() != 2) {
    throw SchemaError(root + ".state.dims", "analyses need a bipartite state (two dims)");
  }

  if (const Json* ms = find(req, "measurements", root)) {
    if (!ms->is_array()) throw SchemaError(root + ".measurements", "must be an array");
    for (std::size_t i = 0; i < ms->size(); ++i) {
      r.measurements.push_back(io::measurement_from_json(
          (*ms)[i], root + ".measurements[" + std::to_string(i) + "]", "x" + std::to_string(i)));
    }
  }
  return r;
}

const Json& required(const Json& req, const std::string& key, const std::string& analysis) {
  const Json* v = find(req, key, "request");
  if (v == nullptr) throw SchemaError("request", "analysis '" + analysis + "' requires '" + key + "'");
  return *v;
}

std::vector<LabeledMeasurement> labeled(const Request& r) {
  if (r.measurements.empty()) {
    throw SchemaError("request", "analysis '" + r.analysis + "' requires 'measurements'");
  }
  std::vector<LabeledMeasurement> out;
  for (const auto& m : r.measurements) out.push_back(m.measurement);
  return out;
}

const NonDegeneratePvm& single_pvm(const Request& r) {
  if (r.measurements.size() != 1 || !r.measurements.front().pvm) {
    throw SchemaError("request.measurements",
                      "analysis '" + r.analysis + "' requires exactly one measurement given as 'pvm'");
  }
  return *r.measurements.front().pvm;
}

Json run(const Request& r, const Json& req) {
  const DensityOperator& rho = *r.state;
  const Tolerances& tol = r.tol;

  if (r.analysis == "conditional") {
    const Effect e(io::matrix_from_json(required(req, "effect", r.analysis), "request.effect"),
                   tol.hermiticity);
    return outcome_json(conditional_state(rho, e, tol));
  }
  if (r.analysis == "assemblage") {
    const auto ms = labeled(r);
    const Assemblage a = assemblage(rho, ms, tol);
    Json settings = Json::array();
    for (const auto& s : a.settings()) {
      Json outs = Json::array();
      for (const auto& o : s.outcomes) outs.push_back(outcome_json(o));
      settings.push_back({{"label", s.label}, {"outcomes", std::move(outs)}});
    }
    return {{"settings", std::move(settings)}, {"bob_state", to_json(a.bob_state())}};
  }
  if (r.analysis == "max-pure") {
    const Vector beta = io::vector_from_json(required(req, "target", r.analysis), "request.target");
    const MaxPureSteering m = max_pure_steering(rho, beta, tol);
    return {{"probability", m.probability},
            {"effect", to_json(m.effect.matrix())},
            {"subspace_dimension", m.subspace.cols()},
            {"subspace", columns_to_json(m.subspace)}};
  }
  if (r.analysis == "decompose") {
    const PurifiedDecomposition d = purified_decomposition(rho, single_pvm(r), tol);
    Json terms = Json::array();
    for (const auto& t : d.terms) {
      terms.push_back({{"outcome", t.outcome},
                       {"coefficient", t.coefficient},
                       {"alice", to_json(t.alice)},
                       {"bob", to_json(t.bob)}});
    }
    return {{"coefficients", d.coefficients},
            {"terms", std::move(terms)},
            {"ancilla_gram", to_json(d.ancilla_gram)},
            {"residual_norm", d.residual.norm()},
            {"reconstruction_error", (d.reconstruct() - rho.matrix()).norm()}};
  }
  if (r.analysis == "classify") {
    return verdict_json(classify(rho, single_pvm(r), tol));
  }
  if (r.analysis == "witness") {
    const auto ms = labeled(r);
    const Assemblage a = assemblage(rho, ms, tol);
    const PureWitnessReport w = pure_probability_witness(a, tol);
    Json entries = Json::array();
    for (const auto& e : w.entries) {
      entries.push_back({{"state", to_json(e.state)},
                         {"weight", e.weight},
                         {"setting", a[e.setting].label}});
    }
    return {{"entries", std::move(entries)},
            {"total", w.total},
            {"steerable", w.steerable},
            {"verdict", verdict_json(witness_verdict(w))}};
  }
  if (r.analysis == "inequality") {
    const InequalityResult q = evaluate_inequality(rho);
    return {{"lhs", q.lhs},
            {"rhs", q.rhs},
            {"violated", q.violated},
            {"sign_a", q.sign_a},
            {"sign_b", q.sign_b},
            {"all_lhs", q.all_lhs}};
  }
  // subspace
  const Vector extra = io::vector_from_json(required(req, "target", r.analysis), "request.target");
  if (!r.seed) throw SchemaError("request.seed", "analysis 'subspace' samples randomly and requires a seed");
  std::size_t samples = 20;
  if (const Json* s = find(req, "samples", "request")) {
    if (!s->is_number_integer() || s->get<long long>() < 0) {
      throw SchemaError("request.samples", "must be a non-negative integer");
    }
    samples = s->get<std::size_t>();
  }
  const OrthogonalCompleteCheck check = orthogonal_complete_check(rho, single_pvm(r), tol);
  if (!check.holds) {
    throw PreconditionError("outcomes do not form an orthogonal complete family: " + check.failure);
  }
  const PureSteeredSubspace sub =
      pure_steered_subspace(rho, *check.family, extra, *r.seed, samples, tol);
  Json family{{"alice", Json::array()}, {"bob", Json::array()},
              {"probabilities", check.family->probabilities}};
  for (const auto& v : check.family->alice) family["alice"].push_back(to_json(v));
  for (const auto& v : check.family->bob) family["bob"].push_back(to_json(v));
  return {{"family", std::move(family)},
          {"dimension", sub.basis.cols()},
          {"basis", columns_to_json(sub.basis)},
          {"members", sub.members},
          {"samples_checked", sub.samples_checked},
          {"min_sample_probability", sub.min_sample_probability}};
}

}  // namespace

std::pair<std::string, Json> parse_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw SchemaError("--param " + text, "expected KEY=VALUE");
  }
  const std::string key = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  Json parsed = Json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;
  return {key, std::move(parsed)};
}

std::pair<std::string, double> parse_tolerance(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw SchemaError("--tol " + text, "expected KEY=VALUE");
  const std::string key = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw SchemaError("--tol " + key, "value must be a number");
  return {key, v};
}

DensityOperator build_fixture(const FixtureSpec& spec) { return build_fixture_at(spec, "fixture"); }

Json cmd_fixture(const FixtureSpec& spec) {
  Json doc;
  if (auto psi = pure_fixture(spec, "fixture")) {
    doc = io::state_document(*psi);
  } else {
    doc = io::state_document(build_fixture(spec));
  }
  doc["fixture"] = {{"name", canonical_fixture_name(spec.name)}, {"params", spec.params}};
  if (spec.seed) doc["fixture"]["seed"] = *spec.seed;
  return doc;
}

Json cmd_analyze(const Json& request, const AnalyzeOptions& options) {
  const Request r = parse_request(request, options);
  Json tolerances = Json::object();
  for (const auto& [key, value] : r.tol.entries()) tolerances[key] = value;
  Json report{{"schema_version", io::kSchemaVersion},
              {"toolkit_version", kToolkitVersion},
              {"analysis", r.analysis},
              {"request", request},
              {"tolerances", std::move(tolerances)},
              {"result", run(r, request)}};
  report["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  return report;
}

}  // namespace steer::cli
