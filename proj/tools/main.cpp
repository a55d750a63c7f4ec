#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "io.hpp"
#include "monowave/error.hpp"

namespace {

using monowave::cli::Command;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> trials;
  std::optional<std::string> window;
  std::optional<double> spacing;
};

CLI::App* add_command(CLI::App& app, Command command, const char* help, Flags& flags) {
  CLI::App* sub = app.add_subcommand(std::string(monowave::cli::to_string(command)), help);
  sub->add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--seed", flags.seed, "ensemble seed");
  sub->add_option("--out", flags.out, "output directory");
  sub->add_option("--trials", flags.trials, "trials per window");
  sub->add_option("--window", flags.window, "window side lengths \"a,b[,c]\"");
  sub->add_option("--spacing", flags.spacing, "grid spacing");
  return sub;
}

int run_command(Command command, const Flags& flags, int threads) {
  monowave::cli::Overrides o;
  o.seed = flags.seed;
  o.out = flags.out;
  o.trials = flags.trials;
  o.spacing = flags.spacing;
  if (flags.window) o.window = monowave::cli::parse_window(*flags.window);
  nlohmann::json config = nlohmann::json::object();
  if (!flags.config.empty()) config = monowave::cli::read_json(flags.config);
  const auto outcome =
      monowave::cli::run(command, monowave::cli::effective_config(command, config, o), threads);
  std::cout << "wrote " << outcome.outputs.size() << " files to " << outcome.out_dir.string()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monochromatic random wave laboratory"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: MONOWAVE_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  Flags flags;
  struct Entry {
    Command command;
    CLI::App* app;
  };
  const Entry entries[] = {
      {Command::kSpecfunCheck,
       add_command(app, Command::kSpecfunCheck, "check special-function identities", flags)},
      {Command::kSample, add_command(app, Command::kSample, "draw one ensemble sample", flags)},
      {Command::kNodal, add_command(app, Command::kNodal, "extract and classify a zero set", flags)},
      {Command::kExperiment,
       add_command(app, Command::kExperiment, "scaling or concentration experiment", flags)},
      {Command::kWitness,
       add_command(app, Command::kWitness, "plane-wave witness for a sphere component", flags)},
  };
  std::string manifest;
  std::string replay_out;
  CLI::App* replay = app.add_subcommand("replay", "re-run a command from its manifest");
  replay->add_option("--manifest", manifest, "manifest.json of an earlier run")
      ->required()
      ->check(CLI::ExistingFile);
  replay->add_option("--out", replay_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (replay->parsed()) {
      const auto outcome = monowave::cli::replay(manifest, replay_out, threads);
      std::cout << "wrote " << outcome.outputs.size() << " files to "
                << outcome.out_dir.string() << "\n";
      return 0;
    }
    for (const Entry& e : entries) {
      if (e.app->parsed()) return run_command(e.command, flags, threads);
    }
  } catch (const monowave::Error& e) {
    std::cerr << "monowave: " << e.what() << "\n";
    return monowave::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "monowave: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
