#include <algorithm>
#include <atomic>
#include <thread>

#include "fuzzyframes/cli_io.hpp"
#include "fuzzyframes/errors.hpp"

namespace fuzzyframes::cli {

namespace {

std::vector<std::filesystem::path> expand(const std::vector<std::filesystem::path>& inputs) {
  std::vector<std::filesystem::path> files;
  for (const auto& input : inputs) {
    if (std::filesystem::is_directory(input)) {
      std::vector<std::filesystem::path> found;
      for (const auto& entry : std::filesystem::directory_iterator(input))
        if (entry.is_regular_file() && entry.path().extension() == ".json") found.push_back(entry.path());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(input);
    }
  }
  return files;
}

CommandOutcome run_one(const std::filesystem::path& path, const Overrides& overrides) {
  ProblemFile problem;
  try {
    problem = load_problem(path);
    apply(overrides, problem);
  } catch (const InputError& error) {
    return error_outcome("batch", "input", error.what());
  }
  if (!problem.command) return error_outcome("batch", "input", "file does not name a command");
  return run_command(*problem.command, problem);
}

}  // namespace

BatchResult run_batch(const std::vector<std::filesystem::path>& inputs, std::size_t jobs, const Overrides& overrides) {
  BatchResult out;
  const auto files = expand(inputs);
  if (files.empty()) {
    out.summary = error_outcome("batch", "usage", "no problem files found").report;
    out.exit_code = 2;
    return out;
  }

  // Each worker writes only its own slot, so order never depends on scheduling.
  std::vector<CommandOutcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) outcomes[i] = run_one(files[i], overrides);
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, files.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  Json entries = Json::array();
  Json counts{{"pass", 0}, {"fail", 0}, {"not_applicable", 0}, {"error", 0}};
  int aggregate = 0;
  std::size_t errata = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& outcome = outcomes[i];
    const std::string verdict = to_string(outcome.verdict);
    counts[verdict] = counts[verdict].get<int>() + 1;
    aggregate = std::max(aggregate, outcome.exit_code);
    const std::size_t notes = outcome.report.contains("errata") ? outcome.report["errata"].size() : 0;
    errata += notes;
    entries.push_back({{"path", files[i].generic_string()},
                       {"verdict", verdict},
                       {"exit_code", outcome.exit_code},
                       {"errata", notes},
                       {"report", outcome.report}});
  }
  out.summary = {{"command", "batch"},
                 {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                 {"files", entries},
                 {"counts", counts},
                 {"errata", errata},
                 {"exit_code", aggregate}};
  out.exit_code = aggregate;
  return out;
}

}  // namespace fuzzyframes::cli
