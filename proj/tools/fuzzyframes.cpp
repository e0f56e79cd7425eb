// Command-line front end: one problem file per command, or a batch of files.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fuzzyframes/cli_io.hpp"

namespace {

using fuzzyframes::cli::Json;

struct OutputOptions {
  std::string out_path;
  std::string format = "json";
};

int emit(const Json& report, const OutputOptions& options, int code) {
  const std::string text = options.format == "text" ? fuzzyframes::cli::dump_text(report)
                                                    : fuzzyframes::cli::dump_canonical(report);
  if (options.out_path.empty()) {
    std::cout << text;
    return code;
  }
  std::ofstream out(options.out_path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "cannot write " << options.out_path << "\n";
    return 2;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for fuzzy frames and K-frames in finite dimensions"};
  app.require_subcommand(1);

  std::vector<double> alphas;
  std::string convention;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  OutputOptions output;

  const auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--alpha", alphas, "alpha levels, comma separated")->delimiter(',');
    sub->add_option("--convention", convention, "frame-sum convention")->check(CLI::IsMember({"once", "squared"}));
    sub->add_option("--seed", seed, "sampling seed");
    sub->add_option("--tol", tolerance, "comparison tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", output.out_path, "write the report to this path");
    sub->add_option("--format", output.format, "report format")->check(CLI::IsMember({"json", "text"}));
  };

  std::string problem_path;
  for (const auto& name : fuzzyframes::cli::known_commands()) {
    auto* sub = app.add_subcommand(name, "run " + name + " on a problem file");
    sub->add_option("file", problem_path, "problem file (JSON)")->required();
    add_shared(sub);
  }
  std::vector<std::string> batch_paths;
  std::size_t jobs = 1;
  auto* batch = app.add_subcommand("batch", "run every file's own command");
  batch->add_option("paths", batch_paths, "files or directories")->required();
  batch->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  add_shared(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const std::string command = argc > 1 ? argv[1] : "";
    emit(fuzzyframes::cli::error_outcome(command, "usage", e.what()).report, {}, 2);
    return 2;
  }

  fuzzyframes::cli::Overrides overrides;
  if (!alphas.empty()) overrides.alphas = alphas;
  if (!convention.empty())
    overrides.convention = convention == "once" ? fuzzyframes::FrameSumConvention::once_per_alpha
                                                : fuzzyframes::FrameSumConvention::squared_per_alpha;
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed") > 0) overrides.seed = seed;
    if (sub->count("--tol") > 0) overrides.tolerance = tolerance;
  }

  if (batch->parsed()) {
    std::vector<std::filesystem::path> paths(batch_paths.begin(), batch_paths.end());
    const auto result = fuzzyframes::cli::run_batch(paths, jobs, overrides);
    return emit(result.summary, output, result.exit_code);
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const auto outcome = fuzzyframes::cli::run_file(command, problem_path, overrides);
  return emit(outcome.report, output, outcome.exit_code);
}
