#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fuzzyframes/frame_core.hpp"

namespace fuzzyframes::cli {

inline constexpr const char* kToolName = "fuzzyframes";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

/// A value printed in a source that the file wants re-derived.
struct Claim {
  std::string kind;             // "frame_sum" or "frame_lower_bound"
  std::optional<Vector> vector; // frame_sum: the f in question
  double value = 0.0;
  bool premise_of_verdict = false;  // a contradicted premise withholds the verdict
  std::string text;
};

struct ProblemFile {
  std::optional<std::string> command;  // used by batch mode
  std::string description;
  std::size_t dimension = 0;
  Field field = Field::real;
  Profile profile = Profile::scaled;
  std::vector<Vector> family;
  std::optional<std::vector<Vector>> family_g;
  std::optional<Matrix> operator_k;
  std::optional<Matrix> operator_k2;
  std::optional<Matrix> operator_t;
  std::vector<double> alphas{0.1, 0.5, 0.9};
  std::optional<std::pair<double, double>> bounds;
  std::optional<std::pair<double, double>> lambdas;
  std::optional<std::string> variant;
  std::vector<Vector> vectors;
  std::optional<std::size_t> samples;
  FrameSumConvention convention = FrameSumConvention::once_per_alpha;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::vector<Claim> claims;

  FuzzyModel model() const { return FuzzyModel(BaseSpace(dimension, field), profile); }
};

// Throws InputError on schema or consistency problems.
ProblemFile parse_problem(const Json& document);
ProblemFile load_problem(const std::filesystem::path& path);

// Canonical JSON form; parse_problem(to_json(p)) reproduces p.
Json to_json(const ProblemFile& problem);

// Sorted keys, 12 significant digits, locale independent, 2-space indent.
std::string dump_canonical(const Json& value);
// One "path = value" line per leaf, same number formatting.
std::string dump_text(const Json& value);

std::string input_digest(const ProblemFile& problem);

struct Overrides {
  std::optional<std::vector<double>> alphas;
  std::optional<FrameSumConvention> convention;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

void apply(const Overrides& overrides, ProblemFile& problem);

enum class Verdict { pass, fail, not_applicable, error };
std::string to_string(Verdict verdict);
int exit_code(Verdict verdict);

struct CommandOutcome {
  Json report;
  Verdict verdict = Verdict::error;
  int exit_code = 2;
};

const std::vector<std::string>& known_commands();

// Never throws: input problems become an error report with exit code 2.
CommandOutcome run_command(const std::string& command, const ProblemFile& problem);
CommandOutcome run_file(const std::string& command, const std::filesystem::path& path, const Overrides& overrides);
CommandOutcome error_outcome(const std::string& command, const std::string& kind, const std::string& message);

struct BatchResult {
  Json summary;
  int exit_code = 2;
};

// Directories expand to their *.json files. Each file names its own command.
// Results are ordered by path and do not depend on `jobs`.
BatchResult run_batch(const std::vector<std::filesystem::path>& inputs, std::size_t jobs, const Overrides& overrides);

// Vector/matrix encodings shared by reports and problem files.
Json encode(std::span<const Scalar> v, Field field);
Json encode(const Matrix& m, Field field);
Json encode_number(double value);

}  // namespace fuzzyframes::cli
