#include <doctest.h>

#include <fstream>

#include "fuzzyframes/cli_io.hpp"
#include "fuzzyframes/errors.hpp"
#include "fuzzyframes/operator_algebra.hpp"

using namespace fuzzyframes;
using namespace fuzzyframes::cli;

namespace {

const std::filesystem::path kProblems = PROBLEMS_DIR;

Json minimal() {
  return Json::parse(R"({"schema": 1, "dimension": 2, "field": "real", "profile": "scaled",
                         "family": [[1, 0], [0, 2]]})");
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "fuzzyframes_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

Vector decode(const Json& v, Field field) {
  Vector out;
  for (const auto& e : v) out.push_back(field == Field::real ? Scalar(e.get<double>()) : Scalar(e[0].get<double>(), e[1].get<double>()));
  return out;
}

}  // namespace

TEST_CASE("problem files parse with defaults") {
  const auto p = parse_problem(minimal());
  CHECK(p.dimension == 2);
  CHECK(p.alphas == std::vector<double>{0.1, 0.5, 0.9});
  CHECK(p.convention == FrameSumConvention::once_per_alpha);
  CHECK(p.seed == 0);
  CHECK(p.tolerance == 1e-9);
  Json complex = minimal();
  complex["field"] = "complex";
  complex["family"] = Json::parse("[[[1, 0.5], 0], [0, [0, 2]]]");
  const auto c = parse_problem(complex);
  CHECK(c.family[0][0] == Scalar(1.0, 0.5));
  CHECK(c.family[1][1] == Scalar(0.0, 2.0));
}

TEST_CASE("problem files reject malformed content") {
  const auto rejects = [](const std::function<void(Json&)>& edit) {
    Json doc = minimal();
    edit(doc);
    CHECK_THROWS_AS(parse_problem(doc), InputError);
  };
  rejects([](Json& d) { d["schema"] = 2; });
  rejects([](Json& d) { d["dimension"] = 3; });
  rejects([](Json& d) { d["field"] = "quaternion"; });
  rejects([](Json& d) { d["family"] = Json::array(); });
  rejects([](Json& d) { d["family"][0] = Json::parse("[[1, 2], 0]"); });
  rejects([](Json& d) { d["alphas"] = Json::parse("[0.5, 1.0]"); });
  rejects([](Json& d) { d["tolerance"] = 0; });
  rejects([](Json& d) { d["operator_K"] = Json::parse("[[1, 0]]"); });
  rejects([](Json& d) { d["command"] = "nonsense"; });
  rejects([](Json& d) { d["unexpected"] = 1; });
  rejects([](Json& d) { d["claims"] = Json::parse(R"([{"kind": "frame_sum", "value": 0}])"); });
  const auto path = scratch("broken.json");
  write_file(path, "{ not json");
  CHECK_THROWS_AS(load_problem(path), InputError);
  CHECK_THROWS_AS(load_problem(scratch("absent.json")), InputError);
}

TEST_CASE("canonical serialization is idempotent") {
  for (const auto& name : {"example_3_1.json", "example_4_1.json", "example_4_2.json"}) {
    const auto p = load_problem(kProblems / name);
    const std::string once = dump_canonical(to_json(p));
    const std::string twice = dump_canonical(to_json(parse_problem(Json::parse(once))));
    CHECK(once == twice);
    CHECK(input_digest(p) == input_digest(parse_problem(Json::parse(once))));
  }
}

TEST_CASE("number formatting") {
  CHECK(dump_canonical(Json::array({0.1, 1.0 / 3.0, 1e-20, 2.0})) == "[0.1, 0.333333333333, 1e-20, 2]\n");
  CHECK(dump_canonical(Json::array({encode_number(std::numeric_limits<double>::infinity())})) == "[\"inf\"]\n");
  CHECK(dump_canonical(Json{{"b", 1}, {"a", 2}}) == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
  CHECK(dump_text(Json{{"a", {{"b", 0.5}}}}) == "a.b = 0.5\n");
}

TEST_CASE("commands report verdicts and exit codes") {
  const auto p41 = load_problem(kProblems / "example_4_1.json");
  const auto bounds = run_command("bounds", p41);
  CHECK(bounds.exit_code == 0);
  CHECK(bounds.report["verdict"] == "pass");
  CHECK(bounds.report["result"]["frame"]["lower"].get<double>() == doctest::Approx(2.0));
  CHECK(bounds.report["result"]["kframe"]["lower"].get<double>() == doctest::Approx(1.0));
  CHECK(bounds.report["tool"]["version"] == kToolVersion);
  CHECK(run_command("reconstruct", p41).exit_code == 0);
  CHECK(run_command("atomic", p41).exit_code == 0);
  CHECK(run_command("check-frame", p41).exit_code == 0);

  const auto p31 = load_problem(kProblems / "example_3_1.json");
  CHECK(run_command("check-kframe", p31).exit_code == 0);
  const auto frame = run_command("check-frame", p31);
  CHECK(frame.report["verdict"] == "fail");
  const auto rec = run_command("reconstruct", p31);
  CHECK(rec.report["verdict"] == "not_applicable");
  CHECK(rec.exit_code == 1);
  CHECK(decode(rec.report["result"]["witness"], Field::complex) == Vector{0.0, 0.0, 1.0});

  const auto unknown = run_command("frobnicate", p31);
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.report["error"]["kind"] == "usage");
  CHECK(run_command("douglas", p41).exit_code == 2);  // needs operator_T
}

TEST_CASE("claims become errata and can withhold the verdict") {
  const auto p42 = load_problem(kProblems / "example_4_2.json");
  const auto r = run_command("check-kframe", p42);
  CHECK(r.report["verdict"] == "not_applicable");
  REQUIRE(r.report["errata"].size() == 1);
  for (const auto& entry : r.report["errata"][0]["recomputed"]) {
    const double alpha = entry["alpha"].get<double>();
    CHECK(entry["value"].get<double>() == doctest::Approx(6 * alpha / (1 - alpha)));
  }

  ProblemFile p = load_problem(kProblems / "example_3_1.json");
  p.claims.push_back({"frame_lower_bound", std::nullopt, 1.0, false, "family is a frame with lower bound 1"});
  const auto soft = run_command("check-kframe", p);
  CHECK(soft.report["verdict"] == "pass");
  CHECK(soft.report["errata"].size() == 1);
}

TEST_CASE("fail verdicts carry witnesses that replay") {
  ProblemFile p = load_problem(kProblems / "example_3_1.json");
  p.bounds = {{0.6, 4.0}};
  const auto r = run_command("check-kframe", p);
  REQUIRE(r.report["verdict"] == "fail");
  const Vector w = decode(r.report["result"]["verification"]["violation"]["witness"], p.field);
  const FrameFamily family(p.model(), p.family);
  const AlphaLevel alpha(r.report["result"]["verification"]["violation"]["alpha"].get<double>());
  const double lhs = 0.6 * std::pow(alpha_norm(family.model(), adjoint(*p.operator_k) * w, alpha), 2);
  CHECK(frame_sum(family, w, alpha) < lhs);
}

TEST_CASE("overrides") {
  ProblemFile p = parse_problem(minimal());
  Overrides o;
  o.alphas = std::vector<double>{0.3};
  o.seed = 9;
  apply(o, p);
  CHECK(p.alphas == std::vector<double>{0.3});
  CHECK(p.seed == 9);
  o.alphas = std::vector<double>{1.5};
  CHECK_THROWS_AS(apply(o, p), InputError);
}

TEST_CASE("batch runs are ordered and independent of parallelism") {
  const auto serial = run_batch({kProblems}, 1, {});
  const auto parallel = run_batch({kProblems}, 8, {});
  CHECK(dump_canonical(serial.summary) == dump_canonical(parallel.summary));
  CHECK(serial.exit_code == 1);
  CHECK(serial.summary["counts"]["pass"] == 2);
  CHECK(serial.summary["counts"]["not_applicable"] == 1);
  CHECK(serial.summary["errata"] == 1);

  const auto empty_dir = scratch("empty_batch");
  std::filesystem::create_directories(empty_dir);
  for (const auto& e : std::filesystem::directory_iterator(empty_dir)) std::filesystem::remove(e.path());
  CHECK(run_batch({empty_dir}, 2, {}).exit_code == 2);

  const auto broken = scratch("broken_batch");
  std::filesystem::create_directories(broken);
  write_file(broken / "a.json", "[]");
  std::filesystem::copy_file(kProblems / "example_4_1.json", broken / "b.json",
                             std::filesystem::copy_options::overwrite_existing);
  const auto mixed = run_batch({broken}, 2, {});
  CHECK(mixed.exit_code == 2);
  CHECK(mixed.summary["files"][1]["verdict"] == "pass");
}
