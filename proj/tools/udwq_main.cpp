#include <CLI11.hpp>
#include <cstdlib>
#include <string>

#include "udwq/cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"udwq: delta-coupled detector quantum channel through a scalar field"};
  app.require_subcommand(1);

  std::string config_path;
  udwq::cli::RunOptions options;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  const char* subcommands[] = {"bilinears", "channel",      "sweep",    "spacelike",
                               "huygens",   "oracle-check", "bob-solve"};
  const char* descriptions[] = {
      "emit the 4x4 E/H bilinear tables",
      "emit rho_EB, coherent information, negativity and the closed-form audit",
      "sweep one parameter and emit one CSV row per value",
      "run the spacelike scenario and emit the input-independence report",
      "run the timelike-interior massless 3+1 scenario",
      "run the full truncated-Fock equivalence suite",
      "solve and emit Bob's decoding profiles"};

  for (int i = 0; i < 7; ++i) {
    auto* sub = app.add_subcommand(subcommands[i], descriptions[i]);
    sub->add_option("--config", config_path, "experiment configuration file")
        ->required();
    sub->add_option("--out", options.out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads (fallback: UDWQ_THREADS)");
    sub->add_option("--seed", seed, "seed for randomized scenarios")
        ->each([&](const std::string&) { seed_set = true; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (threads == 0) {
    if (const char* env = std::getenv("UDWQ_THREADS")) threads = std::atoi(env);
    if (threads == 0) threads = 1;
  }
  options.threads = threads;
  if (seed_set) options.seed_override = seed;

  try {
    return udwq::cli::run_subcommand(app.get_subcommands().front()->get_name(),
                                     config_path, options);
  } catch (...) {
    return udwq::cli::exit_code_for_current_exception();
  }
}
