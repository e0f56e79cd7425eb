#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "fuzzyframes/cli_io.hpp"
#include "fuzzyframes/errors.hpp"

namespace fuzzyframes::cli {

namespace {

const std::set<std::string> kKnownKeys = {
    "schema",  "command",  "description", "dimension",  "field",       "profile",   "family",
    "family_G", "operator_K", "operator_K2", "operator_T", "alphas",    "bounds",    "lambdas",
    "variant", "vectors",  "samples",     "convention", "seed",        "tolerance", "claims"};

[[noreturn]] void fail(const std::string& message) { throw InputError(message); }

double read_number(const Json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string text = value.get<std::string>();
    if (text == "inf") return std::numeric_limits<double>::infinity();
  }
  fail(where + ": expected a number");
}

double read_finite(const Json& value, const std::string& where) {
  const double out = read_number(value, where);
  if (!std::isfinite(out)) fail(where + ": expected a finite number");
  return out;
}

Scalar read_scalar(const Json& value, Field field, const std::string& where) {
  if (value.is_number()) return read_finite(value, where);
  if (value.is_array() && value.size() == 2) {
    const Scalar out{read_finite(value[0], where), read_finite(value[1], where)};
    if (field == Field::real && out.imag() != 0.0) fail(where + ": complex entry in a real problem");
    return out;
  }
  fail(where + ": expected a number or an [re, im] pair");
}

Vector read_vector(const Json& value, std::size_t dimension, Field field, const std::string& where) {
  if (!value.is_array()) fail(where + ": expected an array");
  if (value.size() != dimension) fail(where + ": expected " + std::to_string(dimension) + " entries");
  Vector out;
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(read_scalar(value[i], field, where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Vector> read_vectors(const Json& value, std::size_t dimension, Field field, const std::string& where,
                                 bool allow_empty) {
  if (!value.is_array()) fail(where + ": expected an array of vectors");
  if (value.empty() && !allow_empty) fail(where + ": must not be empty");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(read_vector(value[i], dimension, field, where + "[" + std::to_string(i) + "]"));
  return out;
}

Matrix read_matrix(const Json& value, std::size_t dimension, Field field, const std::string& where) {
  if (!value.is_array() || value.size() != dimension)
    fail(where + ": expected " + std::to_string(dimension) + " rows");
  Matrix out(dimension, dimension);
  for (std::size_t r = 0; r < dimension; ++r) {
    const Vector row = read_vector(value[r], dimension, field, where + "[" + std::to_string(r) + "]");
    for (std::size_t c = 0; c < dimension; ++c) out(r, c) = row[c];
  }
  return out;
}

std::pair<double, double> read_pair(const Json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2) fail(where + ": expected a pair");
  return {read_number(value[0], where), read_number(value[1], where)};
}

std::string read_string(const Json& value, const std::string& where) {
  if (!value.is_string()) fail(where + ": expected a string");
  return value.get<std::string>();
}

std::uint64_t read_count(const Json& value, const std::string& where) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) fail(where + ": expected a nonnegative integer");
  return value.get<std::uint64_t>();
}

}  // namespace

ProblemFile parse_problem(const Json& doc) {
  if (!doc.is_object()) fail("problem file must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!kKnownKeys.contains(key)) fail("unknown key: " + key);
  if (doc.contains("schema") && (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != kSchemaVersion))
    fail("schema: expected 1");

  ProblemFile p;
  if (doc.contains("command")) {
    p.command = read_string(doc["command"], "command");
    const auto& known = known_commands();
    if (std::find(known.begin(), known.end(), *p.command) == known.end()) fail("command: unknown command " + *p.command);
  }
  if (doc.contains("description")) p.description = read_string(doc["description"], "description");

  if (!doc.contains("dimension")) fail("dimension is required");
  p.dimension = read_count(doc["dimension"], "dimension");
  if (p.dimension == 0 || p.dimension > 64) fail("dimension: must be between 1 and 64");

  const std::string field = doc.contains("field") ? read_string(doc["field"], "field") : "";
  if (field == "real") p.field = Field::real;
  else if (field == "complex") p.field = Field::complex;
  else fail("field: expected \"real\" or \"complex\"");

  const std::string profile = doc.contains("profile") ? read_string(doc["profile"], "profile") : "";
  if (profile == "scaled") p.profile = Profile::scaled;
  else if (profile == "crisp") p.profile = Profile::crisp;
  else fail("profile: expected \"scaled\" or \"crisp\"");

  if (!doc.contains("family")) fail("family is required");
  p.family = read_vectors(doc["family"], p.dimension, p.field, "family", false);
  if (doc.contains("family_G")) {
    p.family_g = read_vectors(doc["family_G"], p.dimension, p.field, "family_G", false);
    if (p.family_g->size() != p.family.size()) fail("family_G: must have as many vectors as family");
  }
  if (doc.contains("operator_K")) p.operator_k = read_matrix(doc["operator_K"], p.dimension, p.field, "operator_K");
  if (doc.contains("operator_K2"))
    p.operator_k2 = read_matrix(doc["operator_K2"], p.dimension, p.field, "operator_K2");
  if (doc.contains("operator_T")) p.operator_t = read_matrix(doc["operator_T"], p.dimension, p.field, "operator_T");

  if (doc.contains("alphas")) {
    const Json& alphas = doc["alphas"];
    if (!alphas.is_array() || alphas.empty()) fail("alphas: expected a nonempty array");
    p.alphas.clear();
    for (const auto& a : alphas) {
      const double value = read_finite(a, "alphas");
      if (!(value > 0.0 && value < 1.0)) fail("alphas: every alpha must lie in (0, 1)");
      p.alphas.push_back(value);
    }
  }
  if (doc.contains("bounds")) {
    p.bounds = read_pair(doc["bounds"], "bounds");
    if (!(p.bounds->first >= 0.0) || !(p.bounds->second >= 0.0)) fail("bounds: must be nonnegative");
  }
  if (doc.contains("lambdas")) {
    p.lambdas = read_pair(doc["lambdas"], "lambdas");
    if (!std::isfinite(p.lambdas->first) || !std::isfinite(p.lambdas->second)) fail("lambdas: must be finite");
  }
  if (doc.contains("variant")) p.variant = read_string(doc["variant"], "variant");
  if (doc.contains("vectors")) p.vectors = read_vectors(doc["vectors"], p.dimension, p.field, "vectors", true);
  if (doc.contains("samples")) {
    p.samples = read_count(doc["samples"], "samples");
    if (*p.samples == 0) fail("samples: must be positive");
  }
  if (doc.contains("convention")) {
    const std::string c = read_string(doc["convention"], "convention");
    if (c == "once") p.convention = FrameSumConvention::once_per_alpha;
    else if (c == "squared") p.convention = FrameSumConvention::squared_per_alpha;
    else fail("convention: expected \"once\" or \"squared\"");
  }
  if (doc.contains("seed")) p.seed = read_count(doc["seed"], "seed");
  if (doc.contains("tolerance")) {
    p.tolerance = read_finite(doc["tolerance"], "tolerance");
    if (!(p.tolerance > 0.0)) fail("tolerance: must be positive");
  }
  if (doc.contains("claims")) {
    if (!doc["claims"].is_array()) fail("claims: expected an array");
    for (const auto& item : doc["claims"]) {
      if (!item.is_object()) fail("claims: expected objects");
      for (const auto& [key, _] : item.items())
        if (key != "kind" && key != "vector" && key != "value" && key != "premise_of_verdict" && key != "text")
          fail("claims: unknown key " + key);
      Claim claim;
      claim.kind = item.contains("kind") ? read_string(item["kind"], "claims.kind") : "";
      if (claim.kind != "frame_sum" && claim.kind != "frame_lower_bound")
        fail("claims.kind: expected \"frame_sum\" or \"frame_lower_bound\"");
      if (item.contains("vector")) claim.vector = read_vector(item["vector"], p.dimension, p.field, "claims.vector");
      if (claim.kind == "frame_sum" && !claim.vector) fail("claims: frame_sum needs a vector");
      if (!item.contains("value")) fail("claims: value is required");
      claim.value = read_finite(item["value"], "claims.value");
      if (item.contains("premise_of_verdict")) {
        if (!item["premise_of_verdict"].is_boolean()) fail("claims.premise_of_verdict: expected a boolean");
        claim.premise_of_verdict = item["premise_of_verdict"].get<bool>();
      }
      if (item.contains("text")) claim.text = read_string(item["text"], "claims.text");
      p.claims.push_back(std::move(claim));
    }
  }
  return p;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  return parse_problem(doc);
}

Json to_json(const ProblemFile& p) {
  Json out;
  out["schema"] = kSchemaVersion;
  if (p.command) out["command"] = *p.command;
  if (!p.description.empty()) out["description"] = p.description;
  out["dimension"] = p.dimension;
  out["field"] = to_string(p.field);
  out["profile"] = to_string(p.profile);
  out["family"] = Json::array();
  for (const auto& v : p.family) out["family"].push_back(encode(v, p.field));
  if (p.family_g) {
    out["family_G"] = Json::array();
    for (const auto& v : *p.family_g) out["family_G"].push_back(encode(v, p.field));
  }
  if (p.operator_k) out["operator_K"] = encode(*p.operator_k, p.field);
  if (p.operator_k2) out["operator_K2"] = encode(*p.operator_k2, p.field);
  if (p.operator_t) out["operator_T"] = encode(*p.operator_t, p.field);
  out["alphas"] = Json::array();
  for (double a : p.alphas) out["alphas"].push_back(a);
  if (p.bounds) out["bounds"] = Json::array({encode_number(p.bounds->first), encode_number(p.bounds->second)});
  if (p.lambdas) out["lambdas"] = Json::array({p.lambdas->first, p.lambdas->second});
  if (p.variant) out["variant"] = *p.variant;
  if (!p.vectors.empty()) {
    out["vectors"] = Json::array();
    for (const auto& v : p.vectors) out["vectors"].push_back(encode(v, p.field));
  }
  if (p.samples) out["samples"] = *p.samples;
  out["convention"] = to_string(p.convention);
  out["seed"] = p.seed;
  out["tolerance"] = p.tolerance;
  if (!p.claims.empty()) {
    out["claims"] = Json::array();
    for (const auto& c : p.claims) {
      Json item{{"kind", c.kind}, {"value", c.value}, {"premise_of_verdict", c.premise_of_verdict}};
      if (c.vector) item["vector"] = encode(*c.vector, p.field);
      if (!c.text.empty()) item["text"] = c.text;
      out["claims"].push_back(item);
    }
  }
  return out;
}

void apply(const Overrides& overrides, ProblemFile& problem) {
  if (overrides.alphas) {
    for (double a : *overrides.alphas)
      if (!(a > 0.0 && a < 1.0)) fail("--alpha: every alpha must lie in (0, 1)");
    if (overrides.alphas->empty()) fail("--alpha: needs at least one value");
    problem.alphas = *overrides.alphas;
  }
  if (overrides.convention) problem.convention = *overrides.convention;
  if (overrides.seed) problem.seed = *overrides.seed;
  if (overrides.tolerance) {
    if (!(*overrides.tolerance > 0.0)) fail("--tol: must be positive");
    problem.tolerance = *overrides.tolerance;
  }
}

}  // namespace fuzzyframes::cli
