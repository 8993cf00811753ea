#include "leggett/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace leggett {

using nlohmann::json;

namespace {

void require_keys(const json& doc, std::initializer_list<std::string_view> allowed, const char* what) {
  if (!doc.is_object()) throw LoadError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (auto k : allowed) known = known || key == k;
    if (!known) throw LoadError(std::string(what) + ": unknown key '" + key + "'");
  }
}

double number_at(const json& doc, const char* key, const char* what) {
  if (!doc.contains(key) || !doc.at(key).is_number()) {
    throw LoadError(std::string(what) + ": missing numeric field '" + key + "'");
  }
  return doc.at(key).get<double>();
}

}  // namespace

json vector_to_json(const UnitVector3& v) { return json::array({v.x(), v.y(), v.z()}); }

UnitVector3 vector_from_json(const json& doc) {
  if (!doc.is_array() || doc.size() != 3) throw LoadError("vector: expected [x, y, z]");
  for (const auto& x : doc) {
    if (!x.is_number()) throw LoadError("vector: components must be numbers");
  }
  try {
    return UnitVector3::from_components(doc[0].get<double>(), doc[1].get<double>(), doc[2].get<double>());
  } catch (const std::invalid_argument& e) {
    throw LoadError(std::string("vector: ") + e.what());
  }
}

json model_to_json(const LeggettModel& m) {
  json atoms = json::array();
  for (const Atom& a : m.distribution.atoms()) {
    atoms.push_back({{"u", vector_to_json(a.u)}, {"v", vector_to_json(a.v)}, {"w", a.weight}});
  }
  return {{"atoms", atoms}, {"coupling", std::string(to_string(m.coupling))}};
}

LeggettModel model_from_json(const json& doc) {
  require_keys(doc, {"atoms", "coupling"}, "model");
  if (!doc.contains("atoms") || !doc.at("atoms").is_array() || doc.at("atoms").empty()) {
    throw LoadError("model: 'atoms' must be a non-empty array");
  }
  std::vector<Atom> atoms;
  double total = 0.0;
  for (const auto& entry : doc.at("atoms")) {
    require_keys(entry, {"u", "v", "w"}, "model atom");
    if (!entry.contains("u") || !entry.contains("v")) throw LoadError("model atom: missing 'u' or 'v'");
    const double w = number_at(entry, "w", "model atom");
    if (!std::isfinite(w) || w < 0.0) throw LoadError("model atom: weight must be nonnegative");
    total += w;
    atoms.push_back({vector_from_json(entry.at("u")), vector_from_json(entry.at("v")), w});
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw LoadError("model: weights sum to " + std::to_string(total) + ", expected 1 within 1e-9");
  }
  Coupling coupling = Coupling::independent;
  if (doc.contains("coupling")) {
    if (!doc.at("coupling").is_string()) throw LoadError("model: 'coupling' must be a string");
    try {
      coupling = coupling_from_string(doc.at("coupling").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw LoadError(std::string("model: ") + e.what());
    }
  }
  return {SubensembleDistribution(std::move(atoms)), coupling};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

LeggettModel load_model(const std::filesystem::path& path) {
  try {
    return model_from_json(read_json_file(path));
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

json problem_to_json(const CertificationProblem& p) {
  json grid = json::array();
  for (const GridAtom& a : p.grid) grid.push_back({{"u", vector_to_json(a.u)}, {"v", vector_to_json(a.v)}});
  json constraints = json::array();
  for (const TargetConstraint& c : p.constraints) {
    json entry = {{"a", vector_to_json(c.settings.a)},
                  {"b", vector_to_json(c.settings.b)},
                  {"correlation", c.correlation}};
    if (c.marginal_a) entry["marginal_a"] = *c.marginal_a;
    if (c.marginal_b) entry["marginal_b"] = *c.marginal_b;
    constraints.push_back(entry);
  }
  return {{"atom_grid", grid},
          {"constraints", constraints},
          {"include_marginals", p.include_marginals},
          {"grid_hash", grid_hash(p.grid)}};
}

CertificationProblem problem_from_json(const json& doc) {
  require_keys(doc, {"atom_grid", "constraints", "include_marginals", "grid_hash"}, "problem");
  if (!doc.contains("atom_grid") || !doc.at("atom_grid").is_array()) {
    throw LoadError("problem: 'atom_grid' must be an array");
  }
  if (!doc.contains("constraints") || !doc.at("constraints").is_array()) {
    throw LoadError("problem: 'constraints' must be an array");
  }
  CandidateGrid grid;
  for (const auto& a : doc.at("atom_grid")) {
    require_keys(a, {"u", "v"}, "grid atom");
    if (!a.contains("u") || !a.contains("v")) throw LoadError("grid atom: missing 'u' or 'v'");
    grid.push_back({vector_from_json(a.at("u")), vector_from_json(a.at("v"))});
  }
  std::vector<TargetConstraint> constraints;
  for (const auto& c : doc.at("constraints")) {
    require_keys(c, {"a", "b", "correlation", "marginal_a", "marginal_b"}, "constraint");
    if (!c.contains("a") || !c.contains("b")) throw LoadError("constraint: missing 'a' or 'b'");
    TargetConstraint t{{vector_from_json(c.at("a")), vector_from_json(c.at("b"))},
                       number_at(c, "correlation", "constraint"), std::nullopt, std::nullopt};
    if (c.contains("marginal_a")) t.marginal_a = number_at(c, "marginal_a", "constraint");
    if (c.contains("marginal_b")) t.marginal_b = number_at(c, "marginal_b", "constraint");
    constraints.push_back(t);
  }
  const bool marginals = doc.value("include_marginals", false);
  try {
    auto problem = build_problem(std::move(grid), std::move(constraints), marginals);
    if (doc.contains("grid_hash") && doc.at("grid_hash") != grid_hash(problem.grid)) {
      throw LoadError("problem: grid_hash does not match the atom grid");
    }
    return problem;
  } catch (const std::invalid_argument& e) {
    throw LoadError(std::string("problem: ") + e.what());
  }
}

json certificate_to_json(const FeasibilityCertificate& c) {
  json doc = {{"status", c.status == FeasibilityStatus::feasible ? "FEASIBLE" : "INFEASIBLE"},
              {"value", c.value},
              {"grid_hash", c.grid_hash}};
  if (c.status == FeasibilityStatus::feasible) {
    doc["weights"] = c.weights;
  } else {
    doc["farkas"] = {{"inequality", c.farkas_inequality}, {"equality", c.farkas_equality}};
    doc["margin"] = c.margin;
  }
  return doc;
}

FeasibilityCertificate certificate_from_json(const json& doc) {
  require_keys(doc, {"status", "value", "grid_hash", "weights", "farkas", "margin"}, "certificate");
  FeasibilityCertificate c;
  try {
    const std::string status = doc.at("status").get<std::string>();
    if (status == "FEASIBLE") {
      c.status = FeasibilityStatus::feasible;
      c.weights = doc.at("weights").get<std::vector<double>>();
    } else if (status == "INFEASIBLE") {
      c.status = FeasibilityStatus::infeasible;
      c.farkas_inequality = doc.at("farkas").at("inequality").get<std::vector<double>>();
      c.farkas_equality = doc.at("farkas").at("equality").get<std::vector<double>>();
      c.margin = doc.at("margin").get<double>();
    } else {
      throw LoadError("certificate: unknown status '" + status + "'");
    }
    c.value = doc.at("value").get<double>();
    c.grid_hash = doc.at("grid_hash").get<std::string>();
  } catch (const json::exception& e) {
    throw LoadError(std::string("certificate: ") + e.what());
  }
  return c;
}

}  // namespace leggett
